// Programmatic versions of the bundled corpus, shared across test suites.
#pragma once

#include "ainfty/ainfty_structure.hpp"

namespace fixtures {

using namespace ainfty;

template <typename K>
SpacePtr<K> space(const std::string& label, std::vector<std::string> names,
                  std::vector<int> degrees)
{
    return std::make_shared<GradedSpace<K>>(label, std::move(names), std::move(degrees));
}

/// The ground field as an algebra: one generator e in degree 0, e*e = e.
template <typename K>
AInftyStructure<K> ground_field(int cap = 4)
{
    auto a = space<K>("k", {"e"}, {0});
    std::map<int, Components<K>> ops;
    ops[2][Word{0, 0}] = SparseRow<K>{{0, K(1)}};
    return AInftyStructure<K>(a, cap, std::move(ops));
}

/// k[eps]/eps^2 in degree 0, identity involution.
template <typename K>
AInftyStructure<K> dual_numbers(int cap = 4)
{
    auto a = space<K>("dual", {"one", "eps"}, {0, 0});
    std::map<int, Components<K>> ops;
    auto& m2 = ops[2];
    m2[Word{0, 0}] = SparseRow<K>{{0, K(1)}};
    m2[Word{0, 1}] = SparseRow<K>{{1, K(1)}};
    m2[Word{1, 0}] = SparseRow<K>{{1, K(1)}};
    return AInftyStructure<K>(a, cap, std::move(ops));
}

/// Group algebra k[Z/n] with the inversion involution g -> g^{-1}.
template <typename K>
AInftyStructure<K> group_algebra(int n, int cap = 4)
{
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back("g" + std::to_string(i));
    auto a = space<K>("k[C" + std::to_string(n) + "]", names, std::vector<int>(n, 0));
    std::vector<SparseRow<K>> star(n);
    for (int i = 0; i < n; ++i)
        star[i] = {{(n - i) % n, K(1)}};
    const_cast<GradedSpace<K>&>(*a).set_involution(std::move(star));
    std::map<int, Components<K>> ops;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            ops[2][Word{i, j}] = SparseRow<K>{{(i + j) % n, K(1)}};
    return AInftyStructure<K>(a, cap, std::move(ops));
}

/// 2x2 upper-triangular matrices; involution reflects along the
/// anti-diagonal (the standard anti-automorphism). Pass identity_star=true
/// for the negative-control variant.
template <typename K>
AInftyStructure<K> upper_triangular(bool identity_star = false, int cap = 4)
{
    auto a = space<K>("tri", {"e11", "e12", "e22"}, {0, 0, 0});
    if (!identity_star) {
        std::vector<SparseRow<K>> star(3);
        star[0] = {{2, K(1)}};
        star[1] = {{1, K(1)}};
        star[2] = {{0, K(1)}};
        const_cast<GradedSpace<K>&>(*a).set_involution(std::move(star));
    }
    std::map<int, Components<K>> ops;
    auto& m2 = ops[2];
    m2[Word{0, 0}] = SparseRow<K>{{0, K(1)}}; // e11 e11 = e11
    m2[Word{0, 1}] = SparseRow<K>{{1, K(1)}}; // e11 e12 = e12
    m2[Word{1, 2}] = SparseRow<K>{{1, K(1)}}; // e12 e22 = e12
    m2[Word{2, 2}] = SparseRow<K>{{2, K(1)}}; // e22 e22 = e22
    return AInftyStructure<K>(a, cap, std::move(ops));
}

/// DGA with d != 0: unit e, d(u) = v, {u, v} a square-zero ideal.
/// H is one-dimensional, concentrated in degree 0.
template <typename K>
AInftyStructure<K> dga(int cap = 4)
{
    auto a = space<K>("dga", {"e", "v", "u"}, {0, 0, 1});
    std::map<int, Components<K>> ops;
    ops[1][Word{2}] = SparseRow<K>{{1, K(1)}}; // d(u) = v
    auto& m2 = ops[2];
    for (int i = 0; i < 3; ++i) {
        m2[Word{0, i}] = SparseRow<K>{{i, K(1)}};
        if (i != 0)
            m2[Word{i, 0}] = SparseRow<K>{{i, K(1)}};
    }
    return AInftyStructure<K>(a, cap, std::move(ops));
}

/// Two-term acyclic DGA: d(x) = e with e the unit.
template <typename K>
AInftyStructure<K> acyclic_dga(int cap = 4)
{
    auto a = space<K>("acyclic", {"e", "x"}, {0, 1});
    std::map<int, Components<K>> ops;
    ops[1][Word{1}] = SparseRow<K>{{0, K(1)}};
    auto& m2 = ops[2];
    m2[Word{0, 0}] = SparseRow<K>{{0, K(1)}};
    m2[Word{0, 1}] = SparseRow<K>{{1, K(1)}};
    m2[Word{1, 0}] = SparseRow<K>{{1, K(1)}};
    return AInftyStructure<K>(a, cap, std::move(ops));
}

/// m_3-only structure: every composite m_3(...m_3...) lands in a degree with
/// no basis, so the structure is A-infinity. The reversed entry carries the
/// -1 demanded by the involutive condition at arity 3, making the identity
/// involution compatible.
template <typename K>
AInftyStructure<K> m3_only(int cap = 4)
{
    auto a = space<K>("m3fix", {"a", "b", "c", "t"}, {0, 0, 0, 1});
    std::map<int, Components<K>> ops;
    ops[3][Word{0, 1, 2}] = SparseRow<K>{{3, K(1)}};
    ops[3][Word{2, 1, 0}] = SparseRow<K>{{3, K(-1)}};
    return AInftyStructure<K>(a, cap, std::move(ops));
}

/// Non-associative mutation: e*e = f, e*f = e, so (e e)e = 0 != e = e(e e).
template <typename K>
AInftyStructure<K> non_associative(int cap = 4)
{
    auto a = space<K>("mut", {"e", "f"}, {0, 0});
    std::map<int, Components<K>> ops;
    ops[2][Word{0, 0}] = SparseRow<K>{{1, K(1)}};
    ops[2][Word{0, 1}] = SparseRow<K>{{0, K(1)}};
    return AInftyStructure<K>(a, cap, std::move(ops));
}

} // namespace fixtures

#include "ainfty/hom_complex.hpp"

namespace fixtures {

/// Homotopy-equivalent pair over the ground field: P = diagonal(k) plus an
/// acyclic two-term summand with zero action, Q = diagonal(k), with explicit
/// u: P -> Q, v: Q -> P and u.v = Id, v.u ~ Id.
template <typename K>
struct HomotopyPair {
    StructurePtr<K> algebra;
    std::shared_ptr<const AInftyBimodule<K>> p, q;
    BimoduleMap<K> u, v, homotopy; // d(homotopy) = Id_P - v.u
};

template <typename K>
HomotopyPair<K> homotopy_pair()
{
    HomotopyPair<K> out;
    out.algebra = std::make_shared<AInftyStructure<K>>(ground_field<K>());
    out.q = std::make_shared<AInftyBimodule<K>>(diagonal_bimodule(out.algebra));

    auto pspace = space<K>("P", {"q0", "p0", "p1"}, {0, 0, 1});
    std::map<std::pair<int, int>, BimodComponents<K>> comps;
    comps[{0, 0}][BarKey{{}, 2, {}}] = SparseRow<K>{{1, K(1)}};   // d(p1) = p0
    comps[{1, 0}][BarKey{{0}, 0, {}}] = SparseRow<K>{{0, K(-1)}}; // e acting on q0
    comps[{0, 1}][BarKey{{}, 0, {0}}] = SparseRow<K>{{0, K(-1)}};
    out.p = std::make_shared<AInftyBimodule<K>>(out.algebra, pspace, 3, std::move(comps));

    out.u.degree = 0;
    out.u.comps[{0, 0}][BarKey{{}, 0, {}}] = SparseRow<K>{{0, K(1)}}; // q0 -> e
    out.v.degree = 0;
    out.v.comps[{0, 0}][BarKey{{}, 0, {}}] = SparseRow<K>{{0, K(1)}}; // e -> q0
    out.homotopy.degree = 1;
    out.homotopy.comps[{0, 0}][BarKey{{}, 1, {}}] = SparseRow<K>{{2, K(1)}}; // p0 -> p1
    return out;
}

} // namespace fixtures
