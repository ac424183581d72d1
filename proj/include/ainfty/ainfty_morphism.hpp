// A-infinity morphisms by suspended components, composition, the homology
// algebra and quasi-isomorphism detection.
#pragma once

#include "ainfty/ainfty_structure.hpp"
#include "ainfty/chain_complex.hpp"

namespace ainfty {

template <typename K>
using StructurePtr = std::shared_ptr<const AInftyStructure<K>>;

template <typename K>
struct AInftyMorphism {
    StructurePtr<K> source;
    StructurePtr<K> target;
    std::map<int, Components<K>> comps; // f_n : (SC)^n -> SD, degree 0

    AInftyMorphism(StructurePtr<K> src, StructurePtr<K> tgt, std::map<int, Components<K>> f)
        : source(std::move(src)), target(std::move(tgt)), comps(std::move(f))
    {
        for (const auto& [n, cmap] : comps)
            for (const auto& [w, out] : cmap) {
                int in_deg = 0;
                for (int x : w)
                    in_deg += source->suspended->degree(x);
                for (const auto& [j, v] : out)
                    if (target->suspended->degree(j) != in_deg)
                        throw Error("morphism component f_" + std::to_string(n) +
                                    " is not of degree 0");
            }
    }

    static AInftyMorphism identity(const StructurePtr<K>& a)
    {
        std::map<int, Components<K>> f;
        for (int i = 0; i < a->suspended->dim(); ++i)
            f[1][Word{i}] = SparseRow<K>{{i, K(1)}};
        return AInftyMorphism(a, a, std::move(f));
    }
};

/// Verifies Eq.-4 compatibility, F . b_C = b_D . F on the weight <= L bar
/// truncations (Koszul evaluation), plus involutivity of the extension.
template <typename K>
CheckResult morphism_check(const AInftyMorphism<K>& f, int max_weight)
{
    TensorCoalgebra<K> bar_c(f.source->suspended, max_weight);
    TensorCoalgebra<K> bar_d(f.target->suspended, max_weight);
    GradedMap<K> big_f = extend_coalgebra_morphism(f.comps, bar_c, bar_d);
    GradedMap<K> bc = extend_coderivation(suspend_ops(*f.source), bar_c);
    GradedMap<K> bd = extend_coderivation(suspend_ops(*f.target), bar_d);
    GradedMap<K> defect = compose(big_f, bc) - compose(bd, big_f);
    if (int col = defect.first_nonzero_column(); col >= 0)
        return {false, bar_c.space()->name(col)};
    GradedMap<K> star_defect = compose(big_f, GradedMap<K>::star_map(bar_c.space())) -
                               compose(GradedMap<K>::star_map(bar_d.space()), big_f);
    if (int col = star_defect.first_nonzero_column(); col >= 0)
        return {false, bar_c.space()->name(col)};
    return {};
}

/// (f . g)_n = sum over ordered partitions i_1+...+i_s = n of
/// f_s . (g_{i_1} (x) ... (x) g_{i_s}).
template <typename K>
AInftyMorphism<K> morphism_compose(const AInftyMorphism<K>& f, const AInftyMorphism<K>& g)
{
    if (!g.target->space->same_basis(*f.source->space))
        throw Error("cannot compose morphisms: target '" + g.target->space->label() +
                    "' does not match source '" + f.source->space->label() + "'");
    const int cap = std::min(f.source->arity_cap, g.source->arity_cap);
    std::map<int, Components<K>> out;
    const int nl = g.source->suspended->dim();
    for (int n = 1; n <= cap; ++n) {
        Word w(n, 0);
        bool done = false;
        while (!done) {
            SparseRow<K> total;
            std::vector<std::pair<std::size_t, std::pair<Word, K>>> frontier{{0, {Word{}, K(1)}}};
            while (!frontier.empty()) {
                auto [pos, mk] = frontier.back();
                frontier.pop_back();
                if (pos == w.size()) {
                    auto s = static_cast<int>(mk.first.size());
                    auto fs = f.comps.find(s);
                    if (fs == f.comps.end())
                        continue;
                    auto it = fs->second.find(mk.first);
                    if (it != fs->second.end())
                        total = sparse_axpy(total, mk.second, it->second);
                    continue;
                }
                for (const auto& [k, cmap] : g.comps) {
                    if (pos + k > w.size())
                        continue;
                    Word block(w.begin() + pos, w.begin() + pos + k);
                    auto it = cmap.find(block);
                    if (it == cmap.end())
                        continue;
                    for (const auto& [letter, v] : it->second) {
                        Word img = mk.first;
                        img.push_back(letter);
                        frontier.push_back({pos + k, {std::move(img), mk.second * v}});
                    }
                }
            }
            if (!total.empty())
                out[n].emplace(w, std::move(total));
            int pos = n - 1;
            while (pos >= 0 && w[pos] == nl - 1)
                w[pos--] = 0;
            if (pos < 0)
                done = true;
            else
                ++w[pos];
        }
        if (out.count(n) && out[n].empty())
            out.erase(n);
    }
    return AInftyMorphism<K>(g.source, f.target, std::move(out));
}

/// Homology of (A, m_1) with deterministic cycle representatives and the
/// induced m_2 product on classes.
template <typename K>
struct HomologyAlgebra {
    SpacePtr<K> space;                          // H, one basis vector per class
    std::vector<SparseRow<K>> representatives;  // cycle representatives in A coordinates
    Components<K> product;                      // induced product on the H basis
    bool associative{true};
};

namespace detail {

template <typename K>
GradedMap<K> differential_map(const AInftyStructure<K>& a)
{
    GradedMap<K> m1(a.space, a.space, -1);
    if (auto it = a.ops.find(1); it != a.ops.end())
        for (int i = 0; i < a.space->dim(); ++i)
            if (auto e = it->second.find(Word{i}); e != it->second.end())
                for (const auto& [j, v] : e->second)
                    m1.add_entry(i, j, v);
    return m1;
}

/// Representative cycles per degree: kernel vectors independent of the
/// boundary span, chosen greedily in basis order.
template <typename K>
std::vector<SparseRow<K>> homology_representatives(const AInftyStructure<K>& a)
{
    GradedMap<K> m1 = differential_map(a);
    const int n = a.space->dim();
    // kernel of m1 as a whole (it is degree-homogeneous, so kernel splits by degree)
    SparseRows<K> system(n); // rows indexed by target basis
    for (int i = 0; i < n; ++i)
        for (const auto& [j, v] : m1.column(i))
            system[j].emplace_back(i, v);
    for (auto& row : system)
        std::sort(row.begin(), row.end());
    std::vector<SparseRow<K>> cycles = sparse_kernel_basis(std::move(system), n);

    SparseRows<K> span; // boundaries, then accepted representatives
    for (int i = 0; i < n; ++i)
        if (!m1.column(i).empty())
            span.push_back(m1.column(i));
    std::vector<SparseRow<K>> reps;
    for (const auto& z : cycles) {
        SparseRows<K> trial = span;
        trial.push_back(z);
        if (sparse_rank(std::move(trial), n) > sparse_rank(SparseRows<K>(span), n)) {
            span.push_back(z);
            reps.push_back(z);
        }
    }
    return reps;
}

/// Expresses a cycle as a combination of representatives modulo boundaries.
template <typename K>
SparseRow<K> class_coordinates(const SparseRow<K>& z, const std::vector<SparseRow<K>>& reps,
                               const GradedMap<K>& m1)
{
    const int n = static_cast<int>(m1.source()->dim());
    std::vector<SparseRow<K>> gens = reps;
    for (int i = 0; i < n; ++i)
        if (!m1.column(i).empty())
            gens.push_back(m1.column(i));
    DenseMatrix<K> mat = DenseMatrix<K>::Zero(n, gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c)
        for (const auto& [r, v] : gens[c])
            mat(r, static_cast<int>(c)) = v;
    DenseVector<K> rhs = DenseVector<K>::Zero(n);
    for (const auto& [r, v] : z)
        rhs(r) = v;
    auto x = solve(mat, rhs);
    if (!x)
        throw Error("internal: cycle not in the span of representatives and boundaries");
    SparseRow<K> coords;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (!is_zero((*x)(static_cast<int>(i))))
            coords.emplace_back(static_cast<int>(i), (*x)(static_cast<int>(i)));
    return coords;
}

} // namespace detail

template <typename K>
HomologyAlgebra<K> homology_algebra(const AInftyStructure<K>& a)
{
    HomologyAlgebra<K> h;
    h.representatives = detail::homology_representatives(a);
    GradedMap<K> m1 = detail::differential_map(a);
    std::vector<std::string> names;
    std::vector<int> degrees;
    for (std::size_t i = 0; i < h.representatives.size(); ++i) {
        names.push_back("[h" + std::to_string(i) + "]");
        degrees.push_back(a.space->degree(h.representatives[i].front().first));
    }
    h.space = std::make_shared<GradedSpace<K>>("H(" + a.space->label() + ")", std::move(names),
                                               std::move(degrees));

    auto mult = [&](const SparseRow<K>& x, const SparseRow<K>& y) {
        SparseRow<K> out;
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y)
                out = sparse_axpy(out, ci * cj, a.apply_op(2, Word{i, j}));
        return out;
    };
    const int hn = h.space->dim();
    for (int i = 0; i < hn; ++i)
        for (int j = 0; j < hn; ++j) {
            SparseRow<K> prod = mult(h.representatives[i], h.representatives[j]);
            if (prod.empty())
                continue;
            SparseRow<K> coords = detail::class_coordinates(prod, h.representatives, m1);
            if (!coords.empty())
                h.product.emplace(Word{i, j}, std::move(coords));
        }
    auto hprod = [&](const SparseRow<K>& x, const SparseRow<K>& y) {
        SparseRow<K> out;
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y) {
                auto it = h.product.find(Word{i, j});
                if (it != h.product.end())
                    out = sparse_axpy(out, ci * cj, it->second);
            }
        return out;
    };
    for (int i = 0; i < hn && h.associative; ++i)
        for (int j = 0; j < hn && h.associative; ++j)
            for (int k = 0; k < hn; ++k) {
                SparseRow<K> ei{{i, K(1)}}, ej{{j, K(1)}}, ek{{k, K(1)}};
                if (hprod(hprod(ei, ej), ek) != hprod(ei, hprod(ej, ek))) {
                    h.associative = false;
                    break;
                }
            }
    return h;
}

/// true iff f_1 induces an isomorphism on homology in every degree.
template <typename K>
bool is_quasi_iso(const AInftyMorphism<K>& f)
{
    HomologyAlgebra<K> hs = homology_algebra(*f.source);
    HomologyAlgebra<K> ht = homology_algebra(*f.target);
    std::map<int, int> dim_s, dim_t;
    for (int i = 0; i < hs.space->dim(); ++i)
        ++dim_s[hs.space->degree(i)];
    for (int i = 0; i < ht.space->dim(); ++i)
        ++dim_t[ht.space->degree(i)];
    if (dim_s != dim_t)
        return false;
    if (hs.space->dim() == 0)
        return true;
    // matrix of H(f_1) in the representative bases
    GradedMap<K> m1t = detail::differential_map(*f.target);
    auto f1 = f.comps.find(1);
    DenseMatrix<K> hf = DenseMatrix<K>::Zero(ht.space->dim(), hs.space->dim());
    for (int i = 0; i < hs.space->dim(); ++i) {
        SparseRow<K> img;
        if (f1 != f.comps.end())
            for (const auto& [x, c] : hs.representatives[i])
                if (auto e = f1->second.find(Word{x}); e != f1->second.end())
                    img = sparse_axpy(img, c, e->second);
        if (img.empty())
            continue;
        SparseRow<K> coords = detail::class_coordinates(img, ht.representatives, m1t);
        for (const auto& [j, v] : coords)
            hf(j, i) = v;
    }
    return rank(hf) == hs.space->dim();
}

} // namespace ainfty
