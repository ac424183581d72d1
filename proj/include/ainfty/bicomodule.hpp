// Involutive bicomodules over a truncated tensor coalgebra, with exhaustive
// diagram checks as exact matrix identities.
#pragma once

#include "ainfty/tensor_coalgebra.hpp"

namespace ainfty {

template <typename K>
struct Bicomodule {
    SpacePtr<K> carrier;                                   // P with involution
    std::shared_ptr<const TensorCoalgebra<K>> coalgebra;   // C
    GradedMap<K> left_coaction;                            // P -> C (x) P
    GradedMap<K> right_coaction;                           // P -> P (x) C
    SpacePtr<K> cp, pc;                                    // the product spaces used above
};

struct BicomoduleReport {
    bool left_coassociative{false};
    bool right_coassociative{false};
    bool counit_left{false};
    bool counit_right{false};
    bool coaction_compatibility{false};
    bool involution_diagram{false};
    bool all() const
    {
        return left_coassociative && right_coassociative && counit_left && counit_right &&
               coaction_compatibility && involution_diagram;
    }
};

/// Coproduct of the truncation as a map into the full (uncapped) tensor
/// square; used for the small diagram checks below.
template <typename K>
GradedMap<K> coproduct_full(const TensorCoalgebra<K>& c, const SpacePtr<K>& cc)
{
    GradedMap<K> d(c.space(), cc, 0);
    const int n = c.space()->dim();
    for (int wi = 0; wi < c.word_count(); ++wi) {
        const Word& w = c.word(wi);
        for (std::size_t cut = 0; cut <= w.size(); ++cut) {
            Word left(w.begin(), w.begin() + cut), right(w.begin() + cut, w.end());
            d.add_entry(wi, c.index_of(left) * n + c.index_of(right), K(1));
        }
    }
    return d;
}

/// Verifies coassociativity, counit laws, left/right compatibility and the
/// involution square Delta^R . star = (-,-)* . Delta^L.
template <typename K>
BicomoduleReport bicomodule_check(const Bicomodule<K>& b)
{
    BicomoduleReport rep;
    const auto& c = *b.coalgebra;
    const auto& p = b.carrier;
    const int nc = c.space()->dim();
    const int np = p->dim();

    auto cc = tensor_space(c.space(), c.space());
    auto ccp = tensor_space(cc, b.carrier);
    auto cpc = tensor_space(b.cp, c.space()); // == C (x) (P (x) C) by flat indexing
    auto pcc = tensor_space(b.pc, c.space());

    GradedMap<K> id_c = GradedMap<K>::identity(c.space());
    GradedMap<K> id_p = GradedMap<K>::identity(p);
    GradedMap<K> delta_c = coproduct_full(c, cc);

    // (Delta_C (x) Id) . Delta^L == (Id (x) Delta^L) . Delta^L
    rep.left_coassociative =
        compose(tensor_maps(delta_c, id_p, SignMode::koszul, b.cp, ccp), b.left_coaction) ==
        compose(tensor_maps(id_c, b.left_coaction, SignMode::koszul, b.cp, ccp),
                b.left_coaction);
    // (Delta^R (x) Id_C) . Delta^R == (Id_P (x) Delta_C) . Delta^R
    rep.right_coassociative =
        compose(tensor_maps(b.right_coaction, id_c, SignMode::koszul, b.pc, pcc),
                b.right_coaction) ==
        compose(tensor_maps(id_p, delta_c, SignMode::koszul, b.pc, pcc), b.right_coaction);

    // counit laws, checked directly on basis vectors
    const int empty = c.index_of(Word{});
    rep.counit_left = true;
    rep.counit_right = true;
    for (int i = 0; i < np; ++i) {
        SparseRow<K> from_left, from_right;
        for (const auto& [idx, v] : b.left_coaction.column(i))
            if (idx / np == empty)
                from_left = sparse_axpy(from_left, v, SparseRow<K>{{idx % np, K(1)}});
        for (const auto& [idx, v] : b.right_coaction.column(i))
            if (idx % nc == empty)
                from_right = sparse_axpy(from_right, v, SparseRow<K>{{idx / nc, K(1)}});
        SparseRow<K> unit{{i, K(1)}};
        rep.counit_left &= (from_left == unit);
        rep.counit_right &= (from_right == unit);
    }

    // (Id_C (x) Delta^R) . Delta^L == (Delta^L (x) Id_C) . Delta^R
    rep.coaction_compatibility =
        compose(tensor_maps(id_c, b.right_coaction, SignMode::koszul, b.cp, cpc),
                b.left_coaction) ==
        compose(tensor_maps(b.left_coaction, id_c, SignMode::koszul, b.pc, cpc),
                b.right_coaction);

    // involution square: Delta^R . star_P = (-,-)* . Delta^L, where
    // (-,-)*(c (x) p) = (-1)^{|c||p|} p^dagger (x) c^star (Koszul swap)
    GradedMap<K> swap_star(b.cp, b.pc, 0);
    for (int ci = 0; ci < nc; ++ci)
        for (int pi = 0; pi < np; ++pi) {
            long long cross = static_cast<long long>(c.space()->degree(ci)) * p->degree(pi);
            K sign = (cross % 2 != 0) ? K(-1) : K(1);
            for (const auto& [pj, pv] : p->star(pi))
                for (const auto& [cj, cv] : c.space()->star(ci))
                    swap_star.add_entry(ci * np + pi, pj * nc + cj, sign * pv * cv);
        }
    rep.involution_diagram =
        compose(b.right_coaction, GradedMap<K>::star_map(p)) ==
        compose(swap_star, b.left_coaction);

    return rep;
}

} // namespace ainfty
