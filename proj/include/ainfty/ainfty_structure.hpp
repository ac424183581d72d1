// Involutive A-infinity structures: operations m_n of degree n-2, suspension
// transport to degree -1 coderivation components, validity and involution
// checks on the truncated bar coalgebra.
#pragma once

#include <optional>

#include "ainfty/tensor_coalgebra.hpp"

namespace ainfty {

/// SA with SA_i = A_{i-1}: suspension raises degree by 1; the involution is
/// carried over unchanged.
template <typename K>
SpacePtr<K> suspend_space(const SpacePtr<K>& a)
{
    std::vector<std::string> names;
    std::vector<int> degrees;
    for (int i = 0; i < a->dim(); ++i) {
        names.push_back("s" + a->name(i));
        degrees.push_back(a->degree(i) + 1);
    }
    auto sp = std::make_shared<GradedSpace<K>>("S" + a->label(), std::move(names),
                                               std::move(degrees));
    std::vector<SparseRow<K>> star(a->dim());
    for (int i = 0; i < a->dim(); ++i)
        star[i] = a->star(i);
    sp->set_involution(std::move(star));
    return sp;
}

/// sigma in b_k(sa_1 ... sa_k) = sigma m_k(a_1 ... a_k):
/// exponent (k-1)|a_1| + (k-2)|a_2| + ... + |a_{k-1}| + k(k-1)/2.
template <typename K>
K suspension_sign(const std::vector<int>& a_degrees)
{
    const int k = static_cast<int>(a_degrees.size());
    long long e = static_cast<long long>(k) * (k - 1) / 2;
    for (int i = 0; i < k - 1; ++i)
        e += static_cast<long long>(k - 1 - i) * a_degrees[i];
    return (e % 2 != 0) ? K(-1) : K(1);
}

template <typename K>
struct AInftyStructure {
    SpacePtr<K> space;                 // A with involution
    SpacePtr<K> suspended;             // SA
    int arity_cap{4};                  // N
    std::map<int, Components<K>> ops;  // m_n, keyed by words over the A basis

    AInftyStructure(SpacePtr<K> a, int cap, std::map<int, Components<K>> m)
        : space(std::move(a)), suspended(suspend_space<K>(space)), arity_cap(cap),
          ops(std::move(m))
    {
        for (const auto& [n, comps] : ops) {
            if (n < 1 || n > arity_cap)
                throw Error("operation arity " + std::to_string(n) + " outside 1.." +
                            std::to_string(arity_cap));
            for (const auto& [w, out] : comps) {
                if (static_cast<int>(w.size()) != n)
                    throw Error("m_" + std::to_string(n) + " keyed by a word of length " +
                                std::to_string(w.size()));
                int in_deg = 0;
                for (int x : w)
                    in_deg += space->degree(x);
                for (const auto& [j, v] : out)
                    if (space->degree(j) != in_deg + n - 2)
                        throw Error("m_" + std::to_string(n) + " entry at " + word_str(w) +
                                    " -> " + space->name(j) + " violates the degree rule: m_n has degree n-2");
            }
        }
    }

    std::string word_str(const Word& w) const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < w.size(); ++i)
            s += (i ? "," : "") + space->name(w[i]);
        return s + ")";
    }

    SparseRow<K> apply_op(int n, const Word& w) const
    {
        auto a = ops.find(n);
        if (a == ops.end())
            return {};
        auto it = a->second.find(w);
        return it == a->second.end() ? SparseRow<K>{} : it->second;
    }
};

/// m_k -> b_k via the sigma sign; round-trips exactly with desuspend_ops.
template <typename K>
Coderivation<K> suspend_ops(const AInftyStructure<K>& a)
{
    Coderivation<K> b;
    b.degree = -1;
    for (const auto& [n, comps] : a.ops) {
        Components<K>& target = b.by_arity[n];
        for (const auto& [w, out] : comps) {
            std::vector<int> degs;
            for (int x : w)
                degs.push_back(a.space->degree(x));
            K sigma = suspension_sign<K>(degs);
            SparseRow<K> img;
            for (const auto& [j, v] : out)
                img.emplace_back(j, sigma * v);
            target.emplace(w, std::move(img));
        }
        if (target.empty())
            b.by_arity.erase(n);
    }
    return b;
}

/// Inverse transport (sigma^2 = 1, so the same sign applies).
template <typename K>
std::map<int, Components<K>> desuspend_ops(const Coderivation<K>& b, const SpacePtr<K>& a_space)
{
    std::map<int, Components<K>> ops;
    for (const auto& [n, comps] : b.by_arity) {
        for (const auto& [w, out] : comps) {
            std::vector<int> degs;
            for (int x : w)
                degs.push_back(a_space->degree(x));
            K sigma = suspension_sign<K>(degs);
            SparseRow<K> img;
            for (const auto& [j, v] : out)
                img.emplace_back(j, sigma * v);
            if (!img.empty())
                ops[n].emplace(w, std::move(img));
        }
    }
    return ops;
}

struct CheckResult {
    bool passed{true};
    std::string witness; // lexicographically least failing word, empty when passed
};

/// THE validity gate: the extended coderivation squares to zero on the
/// weight <= L truncation of the bar coalgebra.
template <typename K>
CheckResult stasheff_check_coderivation(const AInftyStructure<K>& a, int max_weight)
{
    TensorCoalgebra<K> bar(a.suspended, max_weight);
    GradedMap<K> b = extend_coderivation(suspend_ops(a), bar);
    GradedMap<K> bb = compose(b, b);
    int col = bb.first_nonzero_column();
    if (col < 0)
        return {};
    return {false, bar.space()->name(col)};
}

/// true iff the extended coderivation commutes with the word involution on
/// every word of the truncation.
template <typename K>
CheckResult involution_compat_check(const AInftyStructure<K>& a, int max_weight)
{
    TensorCoalgebra<K> bar(a.suspended, max_weight);
    GradedMap<K> b = extend_coderivation(suspend_ops(a), bar);
    GradedMap<K> star = GradedMap<K>::star_map(bar.space());
    GradedMap<K> defect = compose(b, star) - compose(star, b);
    int col = defect.first_nonzero_column();
    if (col < 0)
        return {};
    return {false, bar.space()->name(col)};
}

/// Residuals of the literal Stasheff identity
///   sum_{i+j+l=n} (-1)^{i+jl} b_{i+1+l} . (Id^i (x) b_j (x) Id^l) = 0
/// per arity and tensor-evaluation sign mode. Diagnostic only; the
/// coderivation-squared criterion above is the validity notion.
struct LiteralStasheffRow {
    int arity{0};
    SignMode mode{SignMode::koszul};
    bool vanishes{true};
    std::string witness;
};

template <typename K>
std::vector<LiteralStasheffRow> stasheff_check_literal(const AInftyStructure<K>& a,
                                                       int max_arity)
{
    Coderivation<K> b = suspend_ops(a);
    std::vector<LiteralStasheffRow> rows;
    for (SignMode mode : {SignMode::koszul, SignMode::plain}) {
        for (int n = 1; n <= max_arity; ++n) {
            LiteralStasheffRow row;
            row.arity = n;
            row.mode = mode;
            // exhaust all n-letter words
            Word w(n, 0);
            const int nl = a.suspended->dim();
            bool done = n == 0;
            while (!done) {
                SparseRow<K> residual;
                for (int i = 0; i <= n - 1; ++i) {
                    for (int j = 1; i + j <= n; ++j) {
                        const int l = n - i - j;
                        Word block(w.begin() + i, w.begin() + i + j);
                        const SparseRow<K>* inner = b.entry(j, block);
                        if (!inner)
                            continue;
                        K sign = ((i + j * l) % 2 != 0) ? K(-1) : K(1);
                        if (mode == SignMode::koszul) {
                            int pre = 0;
                            for (int t = 0; t < i; ++t)
                                pre += a.suspended->degree(w[t]);
                            if (pre % 2 != 0)
                                sign = -sign;
                        }
                        for (const auto& [letter, v] : *inner) {
                            Word outer(w.begin(), w.begin() + i);
                            outer.push_back(letter);
                            outer.insert(outer.end(), w.begin() + i + j, w.end());
                            if (const SparseRow<K>* top = b.entry(i + 1 + l, outer))
                                residual = sparse_axpy(residual, sign * v, *top);
                        }
                    }
                }
                if (!residual.empty() && row.vanishes) {
                    row.vanishes = false;
                    std::string name = "(";
                    for (std::size_t t = 0; t < w.size(); ++t)
                        name += (t ? "|" : "") + a.suspended->name(w[t]);
                    row.witness = name + ")";
                }
                // next word, lexicographic
                int pos = n - 1;
                while (pos >= 0 && w[pos] == nl - 1)
                    w[pos--] = 0;
                if (pos < 0)
                    done = true;
                else
                    ++w[pos];
            }
            rows.push_back(row);
        }
    }
    return rows;
}

/// DGA -> A-infinity: m_1 = d, m_2 = mult, m_n = 0 for n >= 3, after checking
/// d^2 = 0, the Leibniz rule and associativity on all basis tuples.
template <typename K>
AInftyStructure<K> from_dga(const SpacePtr<K>& a, const Components<K>& d,
                            const Components<K>& mult, int arity_cap)
{
    auto apply1 = [&](const SparseRow<K>& v) {
        SparseRow<K> out;
        for (const auto& [i, c] : v)
            if (auto it = d.find(Word{i}); it != d.end())
                out = sparse_axpy(out, c, it->second);
        return out;
    };
    auto apply2 = [&](int x, const SparseRow<K>& v, bool v_on_right) {
        SparseRow<K> out;
        for (const auto& [i, c] : v) {
            Word w = v_on_right ? Word{x, i} : Word{i, x};
            if (auto it = mult.find(w); it != mult.end())
                out = sparse_axpy(out, c, it->second);
        }
        return out;
    };
    const int n = a->dim();
    for (int i = 0; i < n; ++i) {
        SparseRow<K> di;
        if (auto it = d.find(Word{i}); it != d.end())
            di = it->second;
        if (!apply1(di).empty())
            throw Error("from_dga: d^2 != 0 at basis element " + a->name(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // d(ab) = d(a) b + (-1)^{|a|} a d(b)
            SparseRow<K> ab;
            if (auto it = mult.find(Word{i, j}); it != mult.end())
                ab = it->second;
            SparseRow<K> lhs = apply1(ab);
            SparseRow<K> da, db;
            if (auto it = d.find(Word{i}); it != d.end())
                da = it->second;
            if (auto it = d.find(Word{j}); it != d.end())
                db = it->second;
            SparseRow<K> rhs = apply2(j, da, false); // d(a) b
            K sgn = (a->degree(i) % 2 != 0) ? K(-1) : K(1);
            rhs = sparse_axpy(rhs, sgn, apply2(i, db, true)); // (-1)^{|a|} a d(b)
            if (lhs != rhs)
                throw Error("from_dga: Leibniz fails at (" + a->name(i) + "," + a->name(j) + ")");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SparseRow<K> ij, jk;
                if (auto it = mult.find(Word{i, j}); it != mult.end())
                    ij = it->second;
                if (auto it = mult.find(Word{j, k}); it != mult.end())
                    jk = it->second;
                if (apply2(k, ij, false) != apply2(i, jk, true))
                    throw Error("from_dga: mult not associative at (" + a->name(i) + "," +
                                a->name(j) + "," + a->name(k) + ")");
            }
    std::map<int, Components<K>> ops;
    if (!d.empty())
        ops[1] = d;
    if (!mult.empty())
        ops[2] = mult;
    return AInftyStructure<K>(a, arity_cap, std::move(ops));
}

} // namespace ainfty
