// A-infinity structures: suspension transport, validity gates, involution
// compatibility, morphisms, homology algebras.
#include <catch2/catch_amalgamated.hpp>

#include "ainfty/ainfty_morphism.hpp"
#include "ainfty/ainfty_structure.hpp"
#include "fixtures.hpp"

using namespace ainfty;

TEST_CASE("suspension sign")
{
    // k = 1: empty sum, sigma = +1
    REQUIRE(suspension_sign<Rational>({0}) == Rational(1));
    REQUIRE(suspension_sign<Rational>({5}) == Rational(1));
    // k = 2, degrees 0: exponent = |a1| + 1 = 1
    REQUIRE(suspension_sign<Rational>({0, 0}) == Rational(-1));
    // k = 3, degrees 0: exponent = 2|a1| + |a2| + 3 = 3
    REQUIRE(suspension_sign<Rational>({0, 0, 0}) == Rational(-1));
    // k = 3, degrees (1,0,0): exponent = 2 + 0 + 3 = 5
    REQUIRE(suspension_sign<Rational>({1, 0, 0}) == Rational(-1));
}

TEST_CASE("suspend/desuspend round-trip")
{
    for (auto a : {fixtures::dga<Rational>(), fixtures::group_algebra<Rational>(4),
                   fixtures::m3_only<Rational>()}) {
        Coderivation<Rational> b = suspend_ops(a);
        REQUIRE(b.degree == -1);
        auto ops = desuspend_ops(b, a.space);
        REQUIRE(ops == a.ops);
    }
}

TEST_CASE("operation degree rule")
{
    // m_2 with output in the wrong degree is rejected citing the rule
    auto a = fixtures::space<Rational>("bad", {"e", "t"}, {0, 1});
    std::map<int, Components<Rational>> ops;
    ops[2][Word{0, 0}] = SparseRow<Rational>{{1, Rational(1)}};
    try {
        AInftyStructure<Rational>(a, 4, std::move(ops));
        FAIL("expected rejection");
    } catch (const Error& e) {
        REQUIRE(std::string(e.what()).find("degree n-2") != std::string::npos);
    }
}

TEST_CASE("stasheff_check_coderivation")
{
    SECTION("zero ops pass")
    {
        auto a = fixtures::space<Rational>("z", {"x"}, {0});
        AInftyStructure<Rational> zero(a, 4, {});
        REQUIRE(stasheff_check_coderivation(zero, 6).passed);
    }
    SECTION("associative algebras pass at weight 6")
    {
        REQUIRE(stasheff_check_coderivation(fixtures::dual_numbers<Rational>(), 6).passed);
        REQUIRE(stasheff_check_coderivation(fixtures::group_algebra<Rational>(2), 6).passed);
        REQUIRE(stasheff_check_coderivation(fixtures::upper_triangular<Rational>(), 6).passed);
        REQUIRE(stasheff_check_coderivation(fixtures::dga<Rational>(), 6).passed);
    }
    SECTION("m3-only structure with degree-blocked composites passes")
    {
        REQUIRE(stasheff_check_coderivation(fixtures::m3_only<Rational>(), 6).passed);
    }
    SECTION("non-associative structure fails with the least witness word")
    {
        auto res = stasheff_check_coderivation(fixtures::non_associative<Rational>(), 4);
        REQUIRE_FALSE(res.passed);
        REQUIRE(res.witness == "(se|se|se)");
    }
    SECTION("matches the square-components criterion")
    {
        for (auto a : {fixtures::dual_numbers<Rational>(), fixtures::non_associative<Rational>()}) {
            TensorCoalgebra<Rational> c(a.suspended, 4);
            bool flat = coderivation_square_components(suspend_ops(a), c).empty();
            REQUIRE(stasheff_check_coderivation(a, 4).passed == flat);
        }
    }
    SECTION("over F_5")
    {
        FpContext ctx(5);
        REQUIRE(stasheff_check_coderivation(fixtures::dual_numbers<Fp>(), 5).passed);
        REQUIRE_FALSE(stasheff_check_coderivation(fixtures::non_associative<Fp>(), 4).passed);
    }
}

TEST_CASE("involution_compat_check")
{
    SECTION("commutative algebra with identity involution")
    {
        REQUIRE(involution_compat_check(fixtures::dual_numbers<Rational>(), 4).passed);
        REQUIRE(involution_compat_check(fixtures::dga<Rational>(), 4).passed);
    }
    SECTION("k[C4] with inversion")
    {
        REQUIRE(involution_compat_check(fixtures::group_algebra<Rational>(4), 4).passed);
    }
    SECTION("upper-triangular with its anti-automorphism")
    {
        REQUIRE(involution_compat_check(fixtures::upper_triangular<Rational>(), 4).passed);
    }
    SECTION("identity involution on a noncommutative algebra fails with witness")
    {
        auto res = involution_compat_check(fixtures::upper_triangular<Rational>(true), 4);
        REQUIRE_FALSE(res.passed);
        REQUIRE(res.witness == "(se11|se12)");
    }
}

TEST_CASE("stasheff_check_literal")
{
    SECTION("zero ops: all residuals vanish in both modes")
    {
        auto a = fixtures::space<Rational>("z", {"x"}, {0});
        AInftyStructure<Rational> zero(a, 4, {});
        for (const auto& row : stasheff_check_literal(zero, 4))
            REQUIRE(row.vanishes);
    }
    SECTION("b1-only structure: all vanish, both modes")
    {
        auto sp = fixtures::space<Rational>("two", {"x", "y"}, {1, 0});
        std::map<int, Components<Rational>> ops;
        ops[1][Word{0}] = SparseRow<Rational>{{1, Rational(1)}};
        AInftyStructure<Rational> a(sp, 4, std::move(ops));
        REQUIRE(stasheff_check_coderivation(a, 4).passed);
        for (const auto& row : stasheff_check_literal(a, 4))
            REQUIRE(row.vanishes);
    }
    SECTION("dual numbers: coderivation passes, koszul-mode literal has a residual")
    {
        auto a = fixtures::dual_numbers<Rational>();
        REQUIRE(stasheff_check_coderivation(a, 6).passed);
        auto rows = stasheff_check_literal(a, 4);
        bool koszul_discrepancy = false;
        for (const auto& row : rows)
            if (row.mode == SignMode::koszul && !row.vanishes) {
                koszul_discrepancy = true;
                REQUIRE(row.arity == 3);
                REQUIRE(row.witness == "(sone|sone|sone)");
            }
        REQUIRE(koszul_discrepancy);
    }
}

TEST_CASE("from_dga")
{
    SECTION("d = 0, dual numbers product: valid and passes the checker")
    {
        auto d = fixtures::dual_numbers<Rational>();
        auto built = from_dga<Rational>(d.space, {}, d.ops.at(2), 4);
        REQUIRE(stasheff_check_coderivation(built, 5).passed);
    }
    SECTION("d = 0, group product: valid")
    {
        auto g = fixtures::group_algebra<Rational>(2);
        auto built = from_dga<Rational>(g.space, {}, g.ops.at(2), 4);
        REQUIRE(stasheff_check_coderivation(built, 5).passed);
    }
    SECTION("nonzero d with Leibniz: valid")
    {
        auto g = fixtures::dga<Rational>();
        auto built = from_dga<Rational>(g.space, g.ops.at(1), g.ops.at(2), 4);
        REQUIRE(stasheff_check_coderivation(built, 5).passed);
    }
    SECTION("non-associative mult rejected with witness triple")
    {
        auto m = fixtures::non_associative<Rational>();
        try {
            from_dga<Rational>(m.space, {}, m.ops.at(2), 4);
            FAIL("expected rejection");
        } catch (const Error& e) {
            REQUIRE(std::string(e.what()).find("(e,e,e)") != std::string::npos);
        }
    }
    SECTION("Leibniz failure rejected with witness pair")
    {
        auto sp = fixtures::space<Rational>("bad", {"e", "x"}, {0, 1});
        Components<Rational> d, mult;
        d[Word{1}] = SparseRow<Rational>{{0, Rational(1)}}; // d(x) = e
        mult[Word{0, 0}] = SparseRow<Rational>{{0, Rational(1)}};
        mult[Word{0, 1}] = SparseRow<Rational>{{1, Rational(1)}};
        // x*e = 0 breaks d(x*e) = d(x)e - x d(e)
        try {
            from_dga<Rational>(sp, d, mult, 4);
            FAIL("expected rejection");
        } catch (const Error& e) {
            REQUIRE(std::string(e.what()).find("Leibniz") != std::string::npos);
            REQUIRE(std::string(e.what()).find("(x,e)") != std::string::npos);
        }
    }
}

namespace {

AInftyMorphism<Rational> augmentation_c2()
{
    auto c2 = std::make_shared<AInftyStructure<Rational>>(fixtures::group_algebra<Rational>(2));
    auto k = std::make_shared<AInftyStructure<Rational>>(fixtures::ground_field<Rational>());
    std::map<int, Components<Rational>> f;
    f[1][Word{0}] = SparseRow<Rational>{{0, Rational(1)}};
    f[1][Word{1}] = SparseRow<Rational>{{0, Rational(1)}};
    return AInftyMorphism<Rational>(c2, k, std::move(f));
}

} // namespace

TEST_CASE("morphism_check")
{
    auto dual = std::make_shared<AInftyStructure<Rational>>(fixtures::dual_numbers<Rational>());
    SECTION("identity morphism passes")
    {
        REQUIRE(morphism_check(AInftyMorphism<Rational>::identity(dual), 4).passed);
    }
    SECTION("augmentation k[C2] -> k passes at weight 4")
    {
        REQUIRE(morphism_check(augmentation_c2(), 4).passed);
    }
    SECTION("f1 not commuting with m2 fails with witness")
    {
        auto c2 = std::make_shared<AInftyStructure<Rational>>(fixtures::group_algebra<Rational>(2));
        std::map<int, Components<Rational>> f;
        f[1][Word{0}] = SparseRow<Rational>{{0, Rational(1)}};
        f[1][Word{1}] = SparseRow<Rational>{{1, Rational(2)}}; // g -> 2g: not multiplicative
        auto res = morphism_check(AInftyMorphism<Rational>(c2, c2, std::move(f)), 4);
        REQUIRE_FALSE(res.passed);
        REQUIRE_FALSE(res.witness.empty());
    }
}

TEST_CASE("morphism_compose")
{
    SECTION("composition with the identity is unchanged")
    {
        auto f = augmentation_c2();
        auto id_src = AInftyMorphism<Rational>::identity(f.source);
        auto id_tgt = AInftyMorphism<Rational>::identity(f.target);
        REQUIRE(morphism_compose(f, id_src).comps == f.comps);
        REQUIRE(morphism_compose(id_tgt, f).comps == f.comps);
    }
    SECTION("two linear maps compose to f1 g1 only")
    {
        auto f = augmentation_c2();
        auto id_k = AInftyMorphism<Rational>::identity(f.target);
        auto comp = morphism_compose(id_k, f);
        REQUIRE(comp.comps.size() == 1);
        REQUIRE(comp.comps.count(1) == 1);
    }
    SECTION("partition enumeration: (f.g)_2 = f1 g2 + f2 (g1 (x) g1)")
    {
        auto sp = fixtures::space<Rational>("two", {"e", "t"}, {0, 1});
        auto zero = std::make_shared<AInftyStructure<Rational>>(sp, 4,
                                                                std::map<int, Components<Rational>>{});
        std::map<int, Components<Rational>> gc, fc;
        for (int i = 0; i < 2; ++i) {
            gc[1][Word{i}] = SparseRow<Rational>{{i, Rational(1)}};
            fc[1][Word{i}] = SparseRow<Rational>{{i, Rational(1)}};
        }
        gc[2][Word{0, 0}] = SparseRow<Rational>{{1, Rational(1)}};
        fc[2][Word{0, 0}] = SparseRow<Rational>{{1, Rational(1)}};
        AInftyMorphism<Rational> g(zero, zero, gc), f(zero, zero, fc);
        auto comp = morphism_compose(f, g);
        REQUIRE(comp.comps.at(2).at(Word{0, 0}) == SparseRow<Rational>{{1, Rational(2)}});
        REQUIRE(comp.comps.count(3) == 0);
    }
    SECTION("associative at the component level up to arity 4")
    {
        auto f = augmentation_c2();
        auto id_c2 = AInftyMorphism<Rational>::identity(f.source);
        auto left = morphism_compose(morphism_compose(f, id_c2), id_c2);
        auto right = morphism_compose(f, morphism_compose(id_c2, id_c2));
        REQUIRE(left.comps == right.comps);
    }
}

TEST_CASE("homology_algebra")
{
    SECTION("m1 = 0: H = A with the m2 product")
    {
        auto h = homology_algebra(fixtures::dual_numbers<Rational>());
        REQUIRE(h.space->dim() == 2);
        REQUIRE(h.associative);
        // product table matches m2 in the representative basis
        REQUIRE(h.product.at(Word{0, 0}) == SparseRow<Rational>{{0, Rational(1)}});
        REQUIRE(h.product.at(Word{0, 1}) == SparseRow<Rational>{{1, Rational(1)}});
        REQUIRE(h.product.count(Word{1, 1}) == 0);
    }
    SECTION("two-term acyclic complex: H = 0")
    {
        auto h = homology_algebra(fixtures::acyclic_dga<Rational>());
        REQUIRE(h.space->dim() == 0);
    }
    SECTION("DGA with one-dimensional homology: induced product is unital")
    {
        auto h = homology_algebra(fixtures::dga<Rational>());
        REQUIRE(h.space->dim() == 1);
        REQUIRE(h.space->degree(0) == 0);
        REQUIRE(h.product.at(Word{0, 0}) == SparseRow<Rational>{{0, Rational(1)}});
        REQUIRE(h.associative);
    }
}

TEST_CASE("is_quasi_iso")
{
    SECTION("identity: true")
    {
        auto dual = std::make_shared<AInftyStructure<Rational>>(fixtures::dual_numbers<Rational>());
        REQUIRE(is_quasi_iso(AInftyMorphism<Rational>::identity(dual)));
    }
    SECTION("zero map between algebras with nonzero homology: false")
    {
        auto dual = std::make_shared<AInftyStructure<Rational>>(fixtures::dual_numbers<Rational>());
        AInftyMorphism<Rational> zero(dual, dual, {});
        REQUIRE(morphism_check(zero, 3).passed);
        REQUIRE_FALSE(is_quasi_iso(zero));
    }
    SECTION("augmentation from the DGA fixture: true")
    {
        auto d = std::make_shared<AInftyStructure<Rational>>(fixtures::dga<Rational>());
        auto k = std::make_shared<AInftyStructure<Rational>>(fixtures::ground_field<Rational>());
        std::map<int, Components<Rational>> f;
        f[1][Word{0}] = SparseRow<Rational>{{0, Rational(1)}}; // e -> e, u,v -> 0
        AInftyMorphism<Rational> aug(d, k, std::move(f));
        REQUIRE(morphism_check(aug, 4).passed);
        REQUIRE(is_quasi_iso(aug));
    }
    SECTION("augmentation k[C2] -> k: not a quasi-iso (dims differ)")
    {
        REQUIRE_FALSE(is_quasi_iso(augmentation_c2()));
    }
}
