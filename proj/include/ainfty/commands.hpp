// Validation pipeline and report emission shared by the CLI and the tests.
// Reports are nlohmann ordered JSON (machine format) rendered to plain text
// tables on demand; field order is fixed so repeated runs are byte-identical.
#pragma once

#include <json.hpp>

#include "ainfty/document.hpp"
#include "ainfty/hochschild.hpp"

namespace ainfty {

using Json = nlohmann::ordered_json;

struct RunConfig {
    int max_weight{6}; // L
    int max_arity{4};  // N
    FieldSpec field{FieldSpec::q()};
    ChainModel model{ChainModel::small};
    SignMode sign_mode{SignMode::koszul};
    StarMode star_mode{StarMode::literal};
    bool oracle{false};
    bool machine{false};

    void validate() const
    {
        if (max_arity < 1 || max_weight < max_arity)
            throw Error("require max-weight >= max-arity >= 1, got L=" +
                        std::to_string(max_weight) + ", N=" + std::to_string(max_arity));
    }
};

template <typename K>
struct BuiltDocument {
    StructurePtr<K> principal;
    std::vector<std::pair<std::string, StructurePtr<K>>> algebras;
    std::vector<std::pair<std::string, std::shared_ptr<const AInftyBimodule<K>>>> bimodules;
    std::vector<std::pair<std::string, AInftyMorphism<K>>> morphisms;
};

namespace detail {

template <typename K>
K coeff_value(const CoeffLiteral& c, const FieldSpec& field, int line)
{
    if (c.mod) {
        if (field.kind != FieldSpec::Kind::prime_field || *c.mod != field.characteristic)
            throw ParseError(line, "coefficient '" + c.text + "' does not match the field " +
                                       field.str());
    }
    K num = FieldTraits<K>::from_integer(c.num);
    K den = FieldTraits<K>::from_integer(c.den);
    if (is_zero(den))
        throw ParseError(line, "coefficient denominator vanishes in " + field.str());
    return num / den;
}

template <typename K>
SpacePtr<K> build_space(const std::string& label, const std::vector<BasisRecord>& basis,
                        const std::vector<StarRecord>& stars, int block_line)
{
    std::vector<std::string> names;
    std::vector<int> degrees;
    for (const auto& b : basis) {
        names.push_back(b.name);
        degrees.push_back(b.degree);
    }
    std::shared_ptr<GradedSpace<K>> sp;
    try {
        sp = std::make_shared<GradedSpace<K>>(label, names, degrees);
    } catch (const Error& e) {
        throw ParseError(block_line, e.what());
    }
    if (!stars.empty()) {
        std::vector<SparseRow<K>> star(sp->dim());
        for (int i = 0; i < sp->dim(); ++i)
            star[i] = {{i, K(1)}};
        for (const auto& rec : stars) {
            try {
                SparseRow<K> row;
                for (const auto& [c, name] : rec.terms)
                    row = sparse_axpy(row, coeff_value<K>(c, FieldTraits<K>::spec(), rec.line),
                                      SparseRow<K>{{sp->index_of(name), K(1)}});
                star[sp->index_of(rec.source)] = std::move(row);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(rec.line, e.what());
            }
        }
        try {
            sp->set_involution(std::move(star));
        } catch (const Error& e) {
            throw ParseError(block_line, e.what());
        }
    }
    return sp;
}

} // namespace detail

template <typename K>
BuiltDocument<K> build_document(const AlgebraDocument& doc, const RunConfig& cfg)
{
    cfg.validate();
    BuiltDocument<K> out;
    for (const auto& block : doc.algebras) {
        SpacePtr<K> space =
            detail::build_space<K>(block.name, block.basis, block.stars, block.line);
        std::map<int, Components<K>> ops;
        for (const auto& rec : block.ops) {
            try {
                Word w;
                for (const auto& a : rec.args)
                    w.push_back(space->index_of(a));
                auto& dst = ops[rec.arity][w];
                dst = sparse_axpy(dst, detail::coeff_value<K>(rec.coeff, cfg.field, rec.line),
                                  SparseRow<K>{{space->index_of(rec.output), K(1)}});
                if (dst.empty())
                    ops[rec.arity].erase(w);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(rec.line, e.what());
            }
        }
        StructurePtr<K> built;
        try {
            built = std::make_shared<AInftyStructure<K>>(space, cfg.max_arity, std::move(ops));
        } catch (const Error& e) {
            throw ParseError(block.line, e.what());
        }
        if (out.algebras.empty())
            out.principal = built;
        out.algebras.emplace_back(block.name, built);
    }
    for (const auto& block : doc.bimodules) {
        SpacePtr<K> space =
            detail::build_space<K>(block.name, block.basis, block.stars, block.line);
        std::map<std::pair<int, int>, BimodComponents<K>> comps;
        const auto& alg = out.principal->space;
        for (const auto& rec : block.components) {
            try {
                BarKey key;
                for (int i = 0; i < rec.p; ++i)
                    key.left.push_back(alg->index_of(rec.args[i]));
                key.slot = space->index_of(rec.args[rec.p]);
                for (int i = 0; i < rec.q; ++i)
                    key.right.push_back(alg->index_of(rec.args[rec.p + 1 + i]));
                auto& dst = comps[{rec.p, rec.q}][key];
                dst = sparse_axpy(dst, detail::coeff_value<K>(rec.coeff, cfg.field, rec.line),
                                  SparseRow<K>{{space->index_of(rec.output), K(1)}});
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(rec.line, e.what());
            }
        }
        std::shared_ptr<const AInftyBimodule<K>> built;
        try {
            built = std::make_shared<AInftyBimodule<K>>(out.principal, space,
                                                        std::max(0, cfg.max_arity - 1),
                                                        std::move(comps));
        } catch (const Error& e) {
            throw ParseError(block.line, e.what());
        }
        out.bimodules.emplace_back(block.name, built);
    }
    for (const auto& block : doc.morphisms) {
        StructurePtr<K> target;
        for (const auto& [name, alg] : out.algebras)
            if (name == block.target)
                target = alg;
        if (!target)
            throw ParseError(block.line, "morphism target '" + block.target +
                                             "' is not a declared algebra");
        std::map<int, Components<K>> comps;
        for (const auto& rec : block.components) {
            try {
                Word w;
                for (const auto& a : rec.args)
                    w.push_back(out.principal->space->index_of(a));
                auto& dst = comps[rec.p][w];
                dst = sparse_axpy(dst, detail::coeff_value<K>(rec.coeff, cfg.field, rec.line),
                                  SparseRow<K>{{target->space->index_of(rec.output), K(1)}});
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(rec.line, e.what());
            }
        }
        try {
            out.morphisms.emplace_back(block.name,
                                       AInftyMorphism<K>(out.principal, target, std::move(comps)));
        } catch (const Error& e) {
            throw ParseError(block.line, e.what());
        }
    }
    return out;
}

// --- commands ---------------------------------------------------------------

namespace detail {

template <typename K>
std::shared_ptr<const AInftyBimodule<K>> coefficient_bimodule(const BuiltDocument<K>& built,
                                                              std::size_t i = 0)
{
    if (i < built.bimodules.size())
        return built.bimodules[i].second;
    return std::make_shared<AInftyBimodule<K>>(diagonal_bimodule(built.principal));
}

inline Json dims_json(const std::map<int, int>& dims)
{
    Json out = Json::object();
    for (const auto& [n, v] : dims)
        out[std::to_string(n)] = v;
    return out;
}

} // namespace detail

template <typename K>
Json validate_command(const BuiltDocument<K>& built, const RunConfig& cfg)
{
    Json checks = Json::array();
    bool ok = true;
    auto push = [&](const std::string& name, bool passed, const std::string& witness) {
        Json c;
        c["check"] = name;
        c["passed"] = passed;
        if (!witness.empty())
            c["witness"] = witness;
        checks.push_back(c);
        ok &= passed;
    };
    for (const auto& [name, alg] : built.algebras) {
        CheckResult st = stasheff_check_coderivation(*alg, cfg.max_weight);
        push("stasheff-coderivation " + name, st.passed, st.witness);
        CheckResult inv = involution_compat_check(*alg, cfg.max_weight);
        push("involution-compatibility " + name, inv.passed, inv.witness);
    }
    for (const auto& [name, bm] : built.bimodules) {
        BimoduleReport rep = bimodule_check(*bm, std::min(cfg.max_weight, 4), 2);
        push("bimodule-square-zero " + name, rep.square_zero, rep.square_witness);
        push("bimodule-involution " + name, rep.involution_ok, rep.involution_witness);
        push("bimodule-bicomodule-diagrams " + name, rep.bicomodule.all(), "");
    }
    for (const auto& [name, f] : built.morphisms) {
        CheckResult mc = morphism_check(f, cfg.max_weight);
        push("morphism " + name, mc.passed, mc.witness);
    }
    Json out;
    out["command"] = "validate";
    out["field"] = cfg.field.str();
    out["max_weight"] = cfg.max_weight;
    out["max_arity"] = cfg.max_arity;
    out["checks"] = checks;
    out["passed"] = ok;
    return out;
}

namespace detail {

inline Json report_json(const HomologyReport& rep)
{
    Json out;
    out["model"] = rep.model;
    out["max_weight"] = rep.max_weight;
    out["certified"] = Json::array({rep.certified.lo, rep.certified.hi});
    out["ordinary"] = dims_json(rep.ordinary);
    out["involutive_defined"] = rep.involutive_defined;
    if (rep.involutive_defined)
        out["involutive"] = dims_json(rep.involutive);
    else
        out["involutive_note"] = rep.involutive_note;
    return out;
}

} // namespace detail

template <typename K>
Json hh_command(const BuiltDocument<K>& built, const RunConfig& cfg)
{
    auto m = detail::coefficient_bimodule(built);
    HomologyReport rep = hh(m, cfg.model, cfg.max_weight, cfg.star_mode);
    Json out;
    out["command"] = "hh";
    out["field"] = cfg.field.str();
    out["report"] = detail::report_json(rep);
    if (cfg.oracle) {
        try {
            auto oracle = classical_oracle(*built.principal, cfg.max_weight);
            out["oracle"] = detail::dims_json(oracle.chain_dims);
            bool agree = true;
            for (int n = rep.certified.lo; n <= rep.certified.hi; ++n) {
                int a = rep.ordinary.count(n) ? rep.ordinary.at(n) : 0;
                int b = oracle.chain_dims.count(n) ? oracle.chain_dims.at(n) : 0;
                if (n < cfg.max_weight && a != b)
                    agree = false;
            }
            out["oracle_agrees"] = agree;
        } catch (const Error& e) {
            out["oracle_note"] = e.what();
        }
    }
    return out;
}

template <typename K>
Json cohh_command(const BuiltDocument<K>& built, const RunConfig& cfg)
{
    auto m = detail::coefficient_bimodule(built);
    HomologyReport rep = cohh(m, cfg.max_weight, cfg.star_mode);
    Json out;
    out["command"] = "cohh";
    out["field"] = cfg.field.str();
    out["report"] = detail::report_json(rep);
    if (cfg.oracle) {
        try {
            auto oracle = classical_oracle(*built.principal, cfg.max_weight);
            out["oracle"] = detail::dims_json(oracle.cochain_dims);
            bool agree = true;
            for (int n = std::max(0, rep.certified.lo); n <= rep.certified.hi; ++n) {
                int a = rep.ordinary.count(n) ? rep.ordinary.at(n) : 0;
                int b = oracle.cochain_dims.count(n) ? oracle.cochain_dims.at(n) : 0;
                if (n < cfg.max_weight && a != b)
                    agree = false;
            }
            out["oracle_agrees"] = agree;
        } catch (const Error& e) {
            out["oracle_note"] = e.what();
        }
    }
    return out;
}

template <typename K>
Json diagnose_signs_command(const BuiltDocument<K>& built, const RunConfig& cfg)
{
    Json out;
    out["command"] = "diagnose-signs";
    out["field"] = cfg.field.str();
    CheckResult st = stasheff_check_coderivation(*built.principal, cfg.max_weight);
    out["coderivation_passed"] = st.passed;
    if (!st.passed)
        out["coderivation_witness"] = st.witness;
    Json rows = Json::array();
    for (const auto& row : stasheff_check_literal(*built.principal, cfg.max_arity)) {
        Json r;
        r["arity"] = row.arity;
        r["mode"] = row.mode == SignMode::koszul ? "koszul" : "plain";
        r["vanishes"] = row.vanishes;
        if (!row.vanishes)
            r["witness"] = row.witness;
        rows.push_back(r);
    }
    out["literal_residuals"] = rows;
    bool discrepancy = false;
    for (const auto& row : stasheff_check_literal(*built.principal, cfg.max_arity))
        if (st.passed && !row.vanishes)
            discrepancy = true;
    out["discrepancy"] = discrepancy;
    return out;
}

template <typename K>
Json adjunction_command(const BuiltDocument<K>& built, const RunConfig& cfg)
{
    auto m = detail::coefficient_bimodule(built, 0);
    auto n = detail::coefficient_bimodule(built, 1);
    auto l = detail::coefficient_bimodule(built, 2);
    // keep the triple tensor spaces finite but meaningful
    int weight = std::min(cfg.max_weight, 2);
    AdjunctionReport rep = adjunction_check(m, n, l, weight);
    Json out;
    out["command"] = "adjunction-check";
    out["field"] = cfg.field.str();
    out["max_weight"] = weight;
    out["lhs_dim"] = rep.lhs_dim;
    out["rhs_dim"] = rep.rhs_dim;
    out["tau_maps_into_rhs"] = rep.tau_maps_into_rhs;
    out["inverse_maps_into_lhs"] = rep.inverse_maps_into_lhs;
    out["round_trip_identity"] = rep.round_trip_identity;
    out["star_preserved"] = rep.star_preserved;
    out["passed"] = rep.all();
    return out;
}

template <typename K>
Json compare_models_command(const BuiltDocument<K>& built, const RunConfig& cfg)
{
    auto m = detail::coefficient_bimodule(built);
    ModelComparison cmp = small_model_compare(m, cfg.max_weight, cfg.star_mode);
    Json out;
    out["command"] = "compare-models";
    out["field"] = cfg.field.str();
    out["small"] = detail::report_json(cmp.small);
    out["bar"] = detail::report_json(cmp.bar);
    out["agree"] = cmp.agree;
    if (!cmp.agree) {
        Json d = Json::object();
        for (const auto& [n, pair] : cmp.disagreements)
            d[std::to_string(n)] = Json::array({pair.first, pair.second});
        out["disagreements"] = d;
    }
    return out;
}

/// Human-readable rendering; the machine format is the JSON itself.
std::string render_table(const Json& report);

/// true when every check the report carries passed.
bool report_passed(const Json& report);

} // namespace ainfty
