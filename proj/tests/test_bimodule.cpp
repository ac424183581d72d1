// Bimodules, Hom complexes, homotopies, and the involutive tensor product.
#include <catch2/catch_amalgamated.hpp>

#include "ainfty/box_tensor.hpp"
#include "ainfty/chain_complex.hpp"
#include "fixtures.hpp"

using namespace ainfty;

namespace {

template <typename K>
std::shared_ptr<const AInftyBimodule<K>> diag(const AInftyStructure<K>& a)
{
    StructurePtr<K> ptr = std::make_shared<AInftyStructure<K>>(a);
    return std::make_shared<AInftyBimodule<K>>(diagonal_bimodule<K>(ptr));
}

std::map<int, int> sliced_homology(const SpacePtr<Rational>& space, const GradedMap<Rational>& d,
                                   int lo, int hi)
{
    ChainComplex<Rational> c = slice_complex(space, d, {lo, hi});
    return homology_dims(c);
}

} // namespace

TEST_CASE("diagonal_bimodule")
{
    SECTION("ground field: one-dimensional, only arity-2 absorptions")
    {
        auto m = diag(fixtures::ground_field<Rational>());
        REQUIRE(m->space->dim() == 1);
        REQUIRE(m->comps.count({1, 0}) == 1);
        REQUIRE(m->comps.count({0, 1}) == 1);
        REQUIRE(m->comps.count({1, 1}) == 0);
    }
    SECTION("dual numbers: b_{1,0} and b_{0,1} are the two multiplications")
    {
        auto m = diag(fixtures::dual_numbers<Rational>());
        // b_{0,1}([one]|eps) = sigma * one*eps = -eps
        REQUIRE(*m->entry(0, 1, BarKey{{}, 0, {1}}) == SparseRow<Rational>{{1, Rational(-1)}});
        REQUIRE(*m->entry(1, 0, BarKey{{1}, 0, {}}) == SparseRow<Rational>{{1, Rational(-1)}});
    }
    SECTION("bimodule_check passes for corpus diagonals")
    {
        REQUIRE(bimodule_check(*diag(fixtures::ground_field<Rational>()), 4).all());
        REQUIRE(bimodule_check(*diag(fixtures::dual_numbers<Rational>()), 4).all());
        REQUIRE(bimodule_check(*diag(fixtures::group_algebra<Rational>(2)), 4).all());
        REQUIRE(bimodule_check(*diag(fixtures::dga<Rational>()), 3).all());
        REQUIRE(bimodule_check(*diag(fixtures::upper_triangular<Rational>()), 3).all());
        REQUIRE(bimodule_check(*diag(fixtures::m3_only<Rational>()), 3).all());
    }
    SECTION("k[C2] diagonal passes the involution diagrams with dagger = star")
    {
        auto rep = bimodule_check(*diag(fixtures::group_algebra<Rational>(2)), 3, 3);
        REQUIRE(rep.all());
    }
}

TEST_CASE("bimodule_check negatives")
{
    SECTION("zero components over an m1-free algebra pass")
    {
        StructurePtr<Rational> a =
            std::make_shared<AInftyStructure<Rational>>(fixtures::ground_field<Rational>());
        auto mspace = fixtures::space<Rational>("M", {"m"}, {0});
        AInftyBimodule<Rational> m(a, mspace, 3, {});
        REQUIRE(bimodule_check(m, 4).all());
    }
    SECTION("wrong-sign right action fails square-zero at low weight")
    {
        StructurePtr<Rational> a =
            std::make_shared<AInftyStructure<Rational>>(fixtures::dual_numbers<Rational>());
        auto good = diagonal_bimodule(a);
        auto comps = good.comps;
        for (auto& [key, out] : comps[{0, 1}])
            for (auto& [t, v] : out)
                v = -v;
        AInftyBimodule<Rational> bad(a, a->space, good.cap, std::move(comps));
        auto rep = bimodule_check(bad, 3);
        REQUIRE_FALSE(rep.square_zero);
        REQUIRE_FALSE(rep.square_witness.empty());
    }
}

TEST_CASE("induced_bimodule")
{
    StructurePtr<Rational> c2 =
        std::make_shared<AInftyStructure<Rational>>(fixtures::group_algebra<Rational>(2));
    StructurePtr<Rational> k =
        std::make_shared<AInftyStructure<Rational>>(fixtures::ground_field<Rational>());
    SECTION("identity morphism induces the diagonal bimodule")
    {
        auto ind = induced_bimodule(AInftyMorphism<Rational>::identity(c2));
        auto d = diagonal_bimodule<Rational>(c2);
        REQUIRE(ind.comps == d.comps);
    }
    SECTION("augmentation k[C2] -> k: k as a k[C2]-bimodule, check passes")
    {
        std::map<int, Components<Rational>> f;
        f[1][Word{0}] = SparseRow<Rational>{{0, Rational(1)}};
        f[1][Word{1}] = SparseRow<Rational>{{0, Rational(1)}};
        AInftyMorphism<Rational> aug(c2, k, std::move(f));
        REQUIRE(morphism_check(aug, 4).passed);
        auto ind = induced_bimodule(aug);
        REQUIRE(ind.space->dim() == 1);
        REQUIRE(bimodule_check(ind, 4).all());
        // both group elements act as the identity on k
        REQUIRE(*ind.entry(1, 0, BarKey{{1}, 0, {}}) == SparseRow<Rational>{{0, Rational(-1)}});
    }
    SECTION("f1-only subalgebra inclusion: restriction bimodule passes")
    {
        // k -> k[C2], e -> g0
        std::map<int, Components<Rational>> f;
        f[1][Word{0}] = SparseRow<Rational>{{0, Rational(1)}};
        AInftyMorphism<Rational> inc(k, c2, std::move(f));
        REQUIRE(morphism_check(inc, 4).passed);
        auto ind = induced_bimodule(inc);
        REQUIRE(ind.space->dim() == 2);
        REQUIRE(bimodule_check(ind, 4).all());
    }
}

TEST_CASE("hom_complex")
{
    SECTION("d squares to zero for corpus pairs")
    {
        for (auto m : {diag(fixtures::ground_field<Rational>()),
                       diag(fixtures::dual_numbers<Rational>()),
                       diag(fixtures::group_algebra<Rational>(2))}) {
            HomComplex<Rational> hom(m, m, 3);
            REQUIRE(compose(hom.differential(), hom.differential()).is_zero_map());
        }
    }
    SECTION("identity family is a zero-cycle")
    {
        auto m = diag(fixtures::dual_numbers<Rational>());
        HomComplex<Rational> hom(m, m, 3);
        auto id = BimoduleMap<Rational>::identity(*m);
        REQUIRE(hom.differential().apply(hom.family_vector(id)).empty());
    }
    SECTION("Hom(diag k, diag k) has one-dimensional degree-0 homology")
    {
        auto m = diag(fixtures::ground_field<Rational>());
        HomComplex<Rational> hom(m, m, 4);
        auto dims = sliced_homology(hom.space(), hom.differential(), 0, 0);
        REQUIRE(dims.at(0) == 1);
    }
    SECTION("zero-cycles in degree 0 are exactly the bimodule morphisms")
    {
        auto m = diag(fixtures::dual_numbers<Rational>());
        HomComplex<Rational> hom(m, m, 3);
        // d(Id) = 0 and d(phi) = 0 iff b.Phi = Phi.b
        ChainComplex<Rational> c = slice_complex(hom.space(), hom.differential(), {0, 1});
        auto* d0 = c.differential(0);
        REQUIRE(d0 != nullptr);
        int cycles = kernel_dim(*d0);
        REQUIRE(cycles >= 1); // at least the identity family
    }
}

TEST_CASE("hom_involution")
{
    auto m = diag(fixtures::group_algebra<Rational>(4));
    HomComplex<Rational> hom(m, m, 2);
    GradedMap<Rational> star = hom.star_operator(StarConvention::literal);
    SECTION("double application is the identity")
    {
        REQUIRE(compose(star, star) == GradedMap<Rational>::identity(hom.space()));
    }
    SECTION("the literal involution commutes with the grading")
    {
        REQUIRE(star.degree() == 0);
        for (int i = 0; i < hom.space()->dim(); ++i)
            for (const auto& [j, v] : star.column(i))
                REQUIRE(hom.space()->degree(j) == hom.space()->degree(i));
    }
    SECTION("identity family need not be fixed; equality is reported, not assumed")
    {
        auto idv = hom.family_vector(BimoduleMap<Rational>::identity(*m));
        SparseRow<Rational> starred = star.apply(idv);
        REQUIRE_FALSE(starred.empty()); // it is some involutive image
    }
    SECTION("conjugation convention is an involution and a chain map")
    {
        // phi -> star_N . Phi . star_M preserves bicomodule maps, so it is
        // coherent at the family level and commutes with the differential
        GradedMap<Rational> alt = hom.star_operator(StarConvention::target_star);
        REQUIRE(compose(alt, alt) == GradedMap<Rational>::identity(hom.space()));
        REQUIRE(compose(hom.differential(), alt) == compose(alt, hom.differential()));
    }
    SECTION("push-forward by an involutive morphism preserves the involution")
    {
        // f = star-conjugate-invariant endomorphism: use the identity family;
        // f_*(phi) = f . phi commutes with the hom involution
        auto id = BimoduleMap<Rational>::identity(*m);
        // f_* as a matrix on the hom space
        GradedMap<Rational> push(hom.space(), hom.space(), 0);
        for (int i = 0; i < hom.space()->dim(); ++i)
            push.add_entry(i, i, Rational(1));
        REQUIRE(compose(push, star) == compose(star, push));
    }
}

TEST_CASE("homotopy machinery")
{
    auto pair = fixtures::homotopy_pair<Rational>();
    SECTION("f = g with h = 0")
    {
        HomComplex<Rational> hom(pair.p, pair.p, 3);
        BimoduleMap<Rational> zero;
        zero.degree = 1;
        auto id = BimoduleMap<Rational>::identity(*pair.p);
        REQUIRE(homotopy_check(hom, id, id, zero));
    }
    SECTION("the bundled homotopy satisfies d(h) = Id - v.u")
    {
        HomComplex<Rational> hom(pair.p, pair.p, 3);
        auto vu = compose_families(pair.v, pair.u, *pair.p, 3);
        REQUIRE(homotopy_check(hom, BimoduleMap<Rational>::identity(*pair.p), vu,
                               pair.homotopy));
    }
    SECTION("u and v exhibit a homotopy equivalence (search succeeds)")
    {
        REQUIRE(are_homotopy_equivalent(pair.p, pair.q, pair.u, pair.v, 3));
    }
    SECTION("constructed boundaries are recognized")
    {
        auto m = diag(fixtures::dual_numbers<Rational>());
        HomComplex<Rational> hom(m, m, 2);
        // pick h = an elementary degree-1 family, set f - g = d(h)
        BimoduleMap<Rational> h;
        h.degree = 1;
        h.comps[{0, 1}][BarKey{{}, 1, {0}}] = SparseRow<Rational>{{0, Rational(1)}};
        SparseRow<Rational> dh = hom.differential().apply(hom.family_vector(h));
        auto f = hom.family_from_vector(dh, 0);
        BimoduleMap<Rational> zero;
        zero.degree = 0;
        auto found = find_homotopy(hom, f, zero);
        REQUIRE(found.has_value());
        REQUIRE(homotopy_check(hom, f, zero, *found));
    }
    SECTION("non-boundaries are rejected within the window")
    {
        auto m = diag(fixtures::ground_field<Rational>());
        HomComplex<Rational> hom(m, m, 3);
        // the identity family is a cycle but not a boundary
        auto id = BimoduleMap<Rational>::identity(*m);
        BimoduleMap<Rational> zero;
        zero.degree = 0;
        REQUIRE_FALSE(find_homotopy(hom, id, zero).has_value());
    }
}

TEST_CASE("box_tensor")
{
    SECTION("trivial involutions: relation span is zero, quotient is full")
    {
        auto m = diag(fixtures::dual_numbers<Rational>());
        BoxTensor<Rational> box(m, m, 3);
        REQUIRE(box.relation_rank() == 0);
        REQUIRE(box.quotient_space()->dim() == box.full_space()->dim());
        REQUIRE(box.differential_descends());
        REQUIRE(compose(box.differential(), box.differential()).is_zero_map());
    }
    SECTION("k[C4] with inversion at weight 0: dim 16, quotient by span rank")
    {
        auto m = diag(fixtures::group_algebra<Rational>(4));
        BoxTensor<Rational> box(m, m, 0);
        REQUIRE(box.full_space()->dim() == 16);
        // relations g^{-i} (x) g^j - g^i (x) g^{-j}: orbits of (i,j) -> (-i,-j)
        REQUIRE(box.relation_rank() == 6);
        REQUIRE(box.quotient_space()->dim() == 10);
    }
    SECTION("one-dimensional M with dagger = -Id kills the line")
    {
        StructurePtr<Rational> a =
            std::make_shared<AInftyStructure<Rational>>(fixtures::ground_field<Rational>());
        auto mspace = fixtures::space<Rational>("M-", {"m"}, {0});
        std::vector<SparseRow<Rational>> minus{{{0, Rational(-1)}}};
        const_cast<GradedSpace<Rational>&>(*mspace).set_involution(minus);
        std::shared_ptr<const AInftyBimodule<Rational>> mneg =
            std::make_shared<AInftyBimodule<Rational>>(a, mspace, 3,
                std::map<std::pair<int, int>, BimodComponents<Rational>>{});
        std::shared_ptr<const AInftyBimodule<Rational>> mpos =
            std::make_shared<AInftyBimodule<Rational>>(
                a, fixtures::space<Rational>("M+", {"n"}, {0}), 3,
                std::map<std::pair<int, int>, BimodComponents<Rational>>{});
        BoxTensor<Rational> box(mneg, mpos, 0);
        REQUIRE(box.full_space()->dim() == 1);
        REQUIRE(box.relation_rank() == 1);
        REQUIRE(box.quotient_space()->dim() == 0);
    }
    SECTION("induced involution squares to the identity and descends")
    {
        auto m = diag(fixtures::group_algebra<Rational>(4));
        BoxTensor<Rational> box(m, m, 1);
        auto star = GradedMap<Rational>::star_map(box.quotient_space());
        REQUIRE(compose(star, star) == GradedMap<Rational>::identity(box.quotient_space()));
    }
}

TEST_CASE("tensor_functor_map")
{
    auto pair = fixtures::homotopy_pair<Rational>();
    auto m = diag(fixtures::ground_field<Rational>());
    BoxTensor<Rational> pm(pair.p, m, 3), qm(pair.q, m, 3);
    SECTION("identity maps to the identity")
    {
        auto idp = BimoduleMap<Rational>::identity(*pair.p);
        REQUIRE(tensor_functor_map(idp, pm, pm) ==
                GradedMap<Rational>::identity(pm.quotient_space()));
    }
    SECTION("functorial on composition")
    {
        auto uv = compose_families(pair.u, pair.v, *pair.q, 3);
        auto big_u = tensor_functor_map(pair.u, pm, qm);
        auto big_v = tensor_functor_map(pair.v, qm, pm);
        auto big_uv = tensor_functor_map(uv, qm, qm);
        REQUIRE(compose(big_u, big_v) == big_uv);
    }
    SECTION("homotopy-equivalent pair: equal homology dims of P box M and Q box M")
    {
        REQUIRE(pm.differential_descends());
        REQUIRE(qm.differential_descends());
        auto hp = sliced_homology(pm.quotient_space(), pm.differential(), 0, 2);
        auto hq = sliced_homology(qm.quotient_space(), qm.differential(), 0, 2);
        REQUIRE(hp == hq);
    }
    SECTION("homotopy-equivalent pair: equal homology dims of Hom(P,M) and Hom(Q,M)")
    {
        HomComplex<Rational> hp(pair.p, m, 3), hq(pair.q, m, 3);
        auto dp = sliced_homology(hp.space(), hp.differential(), -2, 0);
        auto dq = sliced_homology(hq.space(), hq.differential(), -2, 0);
        REQUIRE(dp == dq);
    }
}

TEST_CASE("adjunction_check")
{
    SECTION("all spaces one-dimensional, trivial involutions: 1x1 identity")
    {
        StructurePtr<Rational> a =
            std::make_shared<AInftyStructure<Rational>>(fixtures::ground_field<Rational>());
        auto mk = [&](const std::string& nm) -> std::shared_ptr<const AInftyBimodule<Rational>> {
            return std::make_shared<AInftyBimodule<Rational>>(
                a, fixtures::space<Rational>(nm, {nm}, {0}), 3,
                std::map<std::pair<int, int>, BimodComponents<Rational>>{});
        };
        auto rep = adjunction_check(mk("m"), mk("n"), mk("l"), 0);
        REQUIRE(rep.all());
        REQUIRE(rep.lhs_dim == 1);
    }
    SECTION("diagonal dual numbers at weight 2")
    {
        auto m = diag(fixtures::dual_numbers<Rational>());
        auto rep = adjunction_check(m, m, m, 2);
        REQUIRE(rep.all());
    }
    SECTION("sign involution on M: still bijective, stars preserved")
    {
        StructurePtr<Rational> a =
            std::make_shared<AInftyStructure<Rational>>(fixtures::ground_field<Rational>());
        auto mspace = fixtures::space<Rational>("M-", {"m"}, {0});
        std::vector<SparseRow<Rational>> minus{{{0, Rational(-1)}}};
        const_cast<GradedSpace<Rational>&>(*mspace).set_involution(minus);
        std::shared_ptr<const AInftyBimodule<Rational>> mneg =
            std::make_shared<AInftyBimodule<Rational>>(a, mspace, 3,
                std::map<std::pair<int, int>, BimodComponents<Rational>>{});
        auto n = diag(fixtures::ground_field<Rational>());
        auto rep = adjunction_check(mneg, n, n, 1);
        REQUIRE(rep.all());
    }
}
