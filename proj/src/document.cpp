#include "ainfty/document.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ainfty {

namespace {

std::vector<std::string> tokenize(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty())
                out.push_back(std::exchange(cur, {}));
        } else if (c == '(' || c == ')') {
            if (!cur.empty())
                out.push_back(std::exchange(cur, {}));
            out.push_back(std::string(1, c));
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

bool parse_integer(const std::string& s, long long& out)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            return false;
    out = std::stoll(s);
    return true;
}

/// INT, INT/INT, optionally followed by the separate tokens "mod p".
bool parse_coeff(const std::vector<std::string>& toks, std::size_t& pos, CoeffLiteral& out,
                 int line)
{
    if (pos >= toks.size())
        return false;
    const std::string& t = toks[pos];
    auto slash = t.find('/');
    CoeffLiteral c;
    if (slash == std::string::npos) {
        if (!parse_integer(t, c.num))
            return false;
        c.den = 1;
    } else {
        if (!parse_integer(t.substr(0, slash), c.num) ||
            !parse_integer(t.substr(slash + 1), c.den))
            return false;
        if (c.den == 0)
            throw ParseError(line, "zero denominator in coefficient '" + t + "'");
    }
    c.text = t;
    ++pos;
    if (pos + 1 < toks.size() + 1 && pos < toks.size() && toks[pos] == "mod") {
        if (pos + 1 >= toks.size())
            throw ParseError(line, "missing modulus after 'mod'");
        long long p = 0;
        if (!parse_integer(toks[pos + 1], p) || p <= 0)
            throw ParseError(line, "invalid modulus '" + toks[pos + 1] + "'");
        c.mod = static_cast<std::uint32_t>(p);
        c.text += " mod " + toks[pos + 1];
        pos += 2;
    }
    out = c;
    return true;
}

std::vector<std::string> parse_group(const std::vector<std::string>& toks, std::size_t& pos,
                                     int line)
{
    if (pos >= toks.size() || toks[pos] != "(")
        throw ParseError(line, "expected '(' before the argument list");
    ++pos;
    std::vector<std::string> args;
    while (pos < toks.size() && toks[pos] != ")")
        args.push_back(toks[pos++]);
    if (pos >= toks.size())
        throw ParseError(line, "missing ')' after the argument list");
    ++pos;
    return args;
}

void expect_arrow(const std::vector<std::string>& toks, std::size_t& pos, int line)
{
    if (pos >= toks.size() || toks[pos] != "->")
        throw ParseError(line, "expected '->'");
    ++pos;
}

StarRecord parse_star(const std::vector<std::string>& toks, int line)
{
    StarRecord rec;
    rec.line = line;
    std::size_t pos = 1;
    if (pos >= toks.size())
        throw ParseError(line, "star record needs a source basis name");
    rec.source = toks[pos++];
    expect_arrow(toks, pos, line);
    while (pos < toks.size()) {
        CoeffLiteral c;
        std::size_t save = pos;
        if (parse_coeff(toks, pos, c, line)) {
            if (pos >= toks.size())
                throw ParseError(line, "coefficient without a basis name in star record");
        } else {
            pos = save;
            c = CoeffLiteral{1, 1, std::nullopt, "1"};
        }
        rec.terms.emplace_back(c, toks[pos++]);
    }
    if (rec.terms.empty())
        throw ParseError(line, "empty star record");
    return rec;
}

} // namespace

AlgebraDocument parse_document(const std::string& text)
{
    AlgebraDocument doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    enum class Section { top, algebra, bimodule, morphism } section = Section::top;

    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> toks = tokenize(line);
        if (toks.empty())
            continue;
        const std::string& head = toks[0];

        if (section == Section::top) {
            if (head == "field") {
                if (doc.field_declared)
                    throw ParseError(lineno, "duplicate field declaration");
                if (toks.size() >= 2 && toks[1] == "q") {
                    doc.field = FieldSpec::q();
                } else if (toks.size() >= 3 && toks[1] == "f") {
                    long long p = 0;
                    if (!parse_integer(toks[2], p) || !is_prime(static_cast<std::uint32_t>(p)))
                        throw ParseError(lineno, "field characteristic must be prime");
                    doc.field = FieldSpec::fp(static_cast<std::uint32_t>(p));
                } else {
                    throw ParseError(lineno, "field must be 'q' or 'f <prime>'");
                }
                doc.field_declared = true;
            } else if (head == "algebra") {
                if (toks.size() != 2)
                    throw ParseError(lineno, "algebra block needs a name");
                doc.algebras.push_back({toks[1], {}, {}, {}, lineno});
                section = Section::algebra;
            } else if (head == "bimodule") {
                if (toks.size() != 2)
                    throw ParseError(lineno, "bimodule block needs a name");
                if (doc.algebras.empty())
                    throw ParseError(lineno, "bimodule block before any algebra");
                doc.bimodules.push_back({toks[1], {}, {}, {}, lineno});
                section = Section::bimodule;
            } else if (head == "morphism") {
                if (toks.size() != 4 || toks[2] != "to")
                    throw ParseError(lineno, "expected: morphism NAME to TARGET");
                if (doc.algebras.empty())
                    throw ParseError(lineno, "morphism block before any algebra");
                doc.morphisms.push_back({toks[1], toks[3], {}, lineno});
                section = Section::morphism;
            } else {
                throw ParseError(lineno, "unknown top-level record '" + head + "'");
            }
            continue;
        }

        if (head == "end") {
            section = Section::top;
            continue;
        }

        if (head == "basis") {
            if (section == Section::morphism)
                throw ParseError(lineno, "morphism blocks carry no basis records");
            long long deg = 0;
            if (toks.size() != 3 || !parse_integer(toks[2], deg))
                throw ParseError(lineno, "expected: basis NAME DEGREE");
            long long probe;
            if (parse_integer(toks[1], probe))
                throw ParseError(lineno, "basis names must not be numeric");
            BasisRecord rec{toks[1], static_cast<int>(deg), lineno};
            if (section == Section::algebra)
                doc.algebras.back().basis.push_back(rec);
            else
                doc.bimodules.back().basis.push_back(rec);
            continue;
        }
        if (head == "star") {
            if (section == Section::morphism)
                throw ParseError(lineno, "morphism blocks carry no star records");
            StarRecord rec = parse_star(toks, lineno);
            if (section == Section::algebra)
                doc.algebras.back().stars.push_back(rec);
            else
                doc.bimodules.back().stars.push_back(rec);
            continue;
        }
        if (head == "op") {
            if (section != Section::algebra)
                throw ParseError(lineno, "op records belong to algebra blocks");
            std::size_t pos = 1;
            long long arity = 0;
            if (pos >= toks.size() || !parse_integer(toks[pos], arity) || arity < 1)
                throw ParseError(lineno, "expected: op ARITY ( args ) -> OUT COEFF");
            ++pos;
            OpRecord rec;
            rec.line = lineno;
            rec.arity = static_cast<int>(arity);
            rec.args = parse_group(toks, pos, lineno);
            if (static_cast<int>(rec.args.size()) != rec.arity)
                throw ParseError(lineno, "op arity " + std::to_string(rec.arity) + " but " +
                                             std::to_string(rec.args.size()) + " arguments");
            expect_arrow(toks, pos, lineno);
            if (pos >= toks.size())
                throw ParseError(lineno, "missing output basis name");
            rec.output = toks[pos++];
            if (!parse_coeff(toks, pos, rec.coeff, lineno))
                throw ParseError(lineno, "missing or non-exact coefficient literal");
            if (pos != toks.size())
                throw ParseError(lineno, "trailing tokens after the coefficient");
            doc.algebras.back().ops.push_back(std::move(rec));
            continue;
        }
        if (head == "component") {
            if (section == Section::algebra)
                throw ParseError(lineno, "component records belong to bimodule or morphism blocks");
            std::size_t pos = 1;
            ComponentRecord rec;
            rec.line = lineno;
            long long p = 0, q = 0;
            if (section == Section::bimodule) {
                if (pos + 1 >= toks.size() || !parse_integer(toks[pos], p) ||
                    !parse_integer(toks[pos + 1], q) || p < 0 || q < 0)
                    throw ParseError(lineno, "expected: component P Q ( args ) -> OUT COEFF");
                pos += 2;
            } else {
                if (pos >= toks.size() || !parse_integer(toks[pos], p) || p < 1)
                    throw ParseError(lineno, "expected: component ARITY ( args ) -> OUT COEFF");
                ++pos;
            }
            rec.p = static_cast<int>(p);
            rec.q = static_cast<int>(q);
            rec.args = parse_group(toks, pos, lineno);
            std::size_t expected = section == Section::bimodule
                                       ? static_cast<std::size_t>(rec.p + 1 + rec.q)
                                       : static_cast<std::size_t>(rec.p);
            if (rec.args.size() != expected)
                throw ParseError(lineno, "component expects " + std::to_string(expected) +
                                             " arguments, got " + std::to_string(rec.args.size()));
            expect_arrow(toks, pos, lineno);
            if (pos >= toks.size())
                throw ParseError(lineno, "missing output basis name");
            rec.output = toks[pos++];
            if (!parse_coeff(toks, pos, rec.coeff, lineno))
                throw ParseError(lineno, "missing or non-exact coefficient literal");
            if (pos != toks.size())
                throw ParseError(lineno, "trailing tokens after the coefficient");
            if (section == Section::bimodule)
                doc.bimodules.back().components.push_back(std::move(rec));
            else
                doc.morphisms.back().components.push_back(std::move(rec));
            continue;
        }
        throw ParseError(lineno, "unknown record '" + head + "'");
    }
    if (section != Section::top)
        throw ParseError(lineno, "unterminated block (missing 'end')");
    if (doc.algebras.empty())
        throw ParseError(lineno, "document declares no algebra");
    return doc;
}

AlgebraDocument parse_document_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open document '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

namespace {

std::string coeff_text(const CoeffLiteral& c)
{
    // normalized spelling
    long long num = c.num, den = c.den;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    std::string s = std::to_string(num);
    if (den != 1)
        s += "/" + std::to_string(den);
    if (c.mod)
        s += " mod " + std::to_string(*c.mod);
    return s;
}

void emit_basis_and_stars(std::ostringstream& out, const std::vector<BasisRecord>& basis,
                          std::vector<StarRecord> stars)
{
    for (const auto& b : basis)
        out << "  basis " << b.name << " " << b.degree << "\n";
    std::sort(stars.begin(), stars.end(),
              [](const StarRecord& a, const StarRecord& b) { return a.source < b.source; });
    for (const auto& s : stars) {
        out << "  star " << s.source << " ->";
        for (const auto& [c, name] : s.terms) {
            std::string ct = coeff_text(c);
            if (ct == "1")
                out << " " << name;
            else
                out << " " << ct << " " << name;
        }
        out << "\n";
    }
}

} // namespace

std::string emit_document(const AlgebraDocument& doc)
{
    std::ostringstream out;
    if (doc.field_declared) {
        if (doc.field.kind == FieldSpec::Kind::rationals)
            out << "field q\n";
        else
            out << "field f " << doc.field.characteristic << "\n";
    }
    for (const auto& a : doc.algebras) {
        out << "algebra " << a.name << "\n";
        emit_basis_and_stars(out, a.basis, a.stars);
        std::vector<OpRecord> ops = a.ops;
        std::sort(ops.begin(), ops.end(), [](const OpRecord& x, const OpRecord& y) {
            return std::tie(x.arity, x.args, x.output) < std::tie(y.arity, y.args, y.output);
        });
        for (const auto& op : ops) {
            out << "  op " << op.arity << " (";
            for (std::size_t i = 0; i < op.args.size(); ++i)
                out << (i ? " " : "") << op.args[i];
            out << ") -> " << op.output << " " << coeff_text(op.coeff) << "\n";
        }
        out << "end\n";
    }
    for (const auto& m : doc.bimodules) {
        out << "bimodule " << m.name << "\n";
        emit_basis_and_stars(out, m.basis, m.stars);
        std::vector<ComponentRecord> comps = m.components;
        std::sort(comps.begin(), comps.end(),
                  [](const ComponentRecord& x, const ComponentRecord& y) {
                      return std::tie(x.p, x.q, x.args, x.output) <
                             std::tie(y.p, y.q, y.args, y.output);
                  });
        for (const auto& c : comps) {
            out << "  component " << c.p << " " << c.q << " (";
            for (std::size_t i = 0; i < c.args.size(); ++i)
                out << (i ? " " : "") << c.args[i];
            out << ") -> " << c.output << " " << coeff_text(c.coeff) << "\n";
        }
        out << "end\n";
    }
    for (const auto& f : doc.morphisms) {
        out << "morphism " << f.name << " to " << f.target << "\n";
        std::vector<ComponentRecord> comps = f.components;
        std::sort(comps.begin(), comps.end(),
                  [](const ComponentRecord& x, const ComponentRecord& y) {
                      return std::tie(x.p, x.args, x.output) < std::tie(y.p, y.args, y.output);
                  });
        for (const auto& c : comps) {
            out << "  component " << c.p << " (";
            for (std::size_t i = 0; i < c.args.size(); ++i)
                out << (i ? " " : "") << c.args[i];
            out << ") -> " << c.output << " " << coeff_text(c.coeff) << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

} // namespace ainfty
