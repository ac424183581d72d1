// Scalars, graded spaces, sparse maps and exact rank computations, checked
// against independent dense oracles.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ainfty/chain_complex.hpp"
#include "ainfty/graded_space.hpp"

using namespace ainfty;

namespace {

// Independent oracle: textbook dense Gaussian elimination, no sharing with
// the sparse implementation path.
template <typename K>
int gauss_rank_oracle(DenseMatrix<K> m)
{
    int rank = 0;
    int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!is_zero(m(r, col))) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            continue;
        m.row(pivot).swap(m.row(rank));
        for (int r = 0; r < rows; ++r) {
            if (r == rank || is_zero(m(r, col)))
                continue;
            K c = m(r, col) / m(rank, col);
            m.row(r) -= c * m.row(rank);
        }
        ++rank;
    }
    return rank;
}

template <typename K>
SpacePtr<K> make_space(const std::string& label, std::vector<int> degrees)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        names.push_back(label + std::to_string(i));
    return std::make_shared<GradedSpace<K>>(label, names, degrees);
}

} // namespace

TEST_CASE("F_p arithmetic")
{
    FpContext ctx(5);
    REQUIRE(Fp(7) == Fp(2));
    REQUIRE(Fp(2) + Fp(4) == Fp(1));
    REQUIRE(Fp(3) * Fp(4) == Fp(2));
    REQUIRE(Fp(3).inverse() == Fp(2));
    REQUIRE(Fp(2) / Fp(3) == Fp(4));
    REQUIRE((-Fp(2)) == Fp(3));
    REQUIRE_THROWS_AS(Fp(0).inverse(), Error);
    REQUIRE_THROWS_AS(Fp::set_modulus(6), Error);
}

TEST_CASE("graded space invariants")
{
    auto v = make_space<Rational>("v", {0, 0});
    REQUIRE_THROWS_AS(GradedSpace<Rational>("bad", {"a", "a"}, {0, 0}), Error);

    // involution must be degree 0
    auto w = make_space<Rational>("w", {0, 1});
    std::vector<SparseRow<Rational>> swap_star{{{1, Rational(1)}}, {{0, Rational(1)}}};
    auto w2 = std::make_shared<GradedSpace<Rational>>("w2", std::vector<std::string>{"a", "b"},
                                                      std::vector<int>{0, 1});
    REQUIRE_THROWS_AS(const_cast<GradedSpace<Rational>&>(*w2).set_involution(swap_star), Error);

    // involution must square to the identity
    auto u = std::make_shared<GradedSpace<Rational>>("u", std::vector<std::string>{"a", "b"},
                                                     std::vector<int>{0, 0});
    std::vector<SparseRow<Rational>> not_invol{{{0, Rational(2)}}, {{1, Rational(1)}}};
    REQUIRE_THROWS_AS(const_cast<GradedSpace<Rational>&>(*u).set_involution(not_invol), Error);
    std::vector<SparseRow<Rational>> ok{{{1, Rational(1)}}, {{0, Rational(1)}}};
    const_cast<GradedSpace<Rational>&>(*u).set_involution(ok);
    REQUIRE(u->apply_star(u->star(0)) == SparseRow<Rational>{{0, Rational(1)}});
}

TEST_CASE("compose")
{
    auto a = make_space<Rational>("a", {0, 0, 0});
    GradedMap<Rational> g(a, a, 0);
    g.add_entry(0, 1, Rational(2));
    g.add_entry(2, 0, Rational(1, 3));
    SECTION("identity case")
    {
        REQUIRE(compose(GradedMap<Rational>::identity(a), g) == g);
    }
    SECTION("degree additivity")
    {
        auto b = make_space<Rational>("b", {0, 1, 2});
        GradedMap<Rational> d1(b, b, -1), d2(b, b, -1);
        d1.add_entry(1, 0, Rational(1));
        d2.add_entry(2, 1, Rational(1));
        REQUIRE(compose(d1, d2).degree() == -2);
    }
    SECTION("space mismatch is rejected with both space names")
    {
        auto c = make_space<Rational>("cspace", {0, 0});
        GradedMap<Rational> f(c, c, 0);
        try {
            compose(f, g);
            FAIL("expected rejection");
        } catch (const Error& e) {
            std::string msg = e.what();
            REQUIRE(msg.find("a") != std::string::npos);
            REQUIRE(msg.find("cspace") != std::string::npos);
        }
    }
    SECTION("matches dense product oracle over F_5")
    {
        FpContext ctx(5);
        auto s = make_space<Fp>("s", {0, 0, 0, 0});
        std::mt19937 rng(20240811);
        std::uniform_int_distribution<int> dist(0, 4), coin(0, 2);
        GradedMap<Fp> f(s, s, 0), h(s, s, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (coin(rng) == 0)
                    f.add_entry(i, j, Fp(dist(rng)));
                if (coin(rng) == 0)
                    h.add_entry(i, j, Fp(dist(rng)));
            }
        DenseMatrix<Fp> expect = f.dense() * h.dense();
        REQUIRE(compose(f, h).dense() == expect);
    }
}

TEST_CASE("tensor_maps")
{
    auto a = make_space<Rational>("a", {1, 0}); // a0 in degree 1
    auto aa = tensor_space(a, a);
    auto id = GradedMap<Rational>::identity(a);
    SECTION("id (x) id = id in both modes")
    {
        for (SignMode mode : {SignMode::koszul, SignMode::plain})
            REQUIRE(tensor_maps(id, id, mode, aa, aa) == GradedMap<Rational>::identity(aa));
    }
    SECTION("Koszul rule forced for odd maps")
    {
        // b1 of degree -1 with b1(a0) = a1, |a0| = 1
        GradedMap<Rational> b1(a, a, -1);
        b1.add_entry(0, 1, Rational(1));
        auto t_koszul = tensor_maps(id, b1, SignMode::koszul, aa, aa);
        auto t_plain = tensor_maps(id, b1, SignMode::plain, aa, aa);
        // (id (x) b1)(a0 (x) a0) = -(a0 (x) a1) in koszul mode, + in plain
        REQUIRE(t_koszul.column(0) == SparseRow<Rational>{{1, Rational(-1)}});
        REQUIRE(t_plain.column(0) == SparseRow<Rational>{{1, Rational(1)}});
        // even first factor: no sign in either mode
        REQUIRE(t_koszul.column(2 * 1 + 0) == SparseRow<Rational>{{2 * 1 + 1, Rational(1)}});
    }
}

TEST_CASE("rank and kernel_dim")
{
    auto s = make_space<Rational>("s", {0, 0, 0});
    SECTION("zero map")
    {
        GradedMap<Rational> z(s, s, 0);
        REQUIRE(rank(z) == 0);
        REQUIRE(kernel_dim(z) == 3);
    }
    SECTION("identity")
    {
        auto id = GradedMap<Rational>::identity(s);
        REQUIRE(rank(id) == 3);
        REQUIRE(kernel_dim(id) == 0);
    }
    SECTION("random 6x6 over Q equals dense elimination oracle")
    {
        auto t = make_space<Rational>("t", std::vector<int>(6, 0));
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3), coin(0, 2);
        for (int trial = 0; trial < 25; ++trial) {
            GradedMap<Rational> f(t, t, 0);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    if (coin(rng) != 0)
                        f.add_entry(i, j, Rational(num(rng), den(rng)));
            REQUIRE(rank(f) == gauss_rank_oracle(f.dense()));
            REQUIRE(rank(f) + kernel_dim(f) == 6);
        }
    }
    SECTION("random over F_5 equals oracle")
    {
        FpContext ctx(5);
        auto t = make_space<Fp>("t", std::vector<int>(6, 0));
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> val(0, 4);
        for (int trial = 0; trial < 25; ++trial) {
            GradedMap<Fp> f(t, t, 0);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    f.add_entry(i, j, Fp(val(rng)));
            REQUIRE(rank(f) == gauss_rank_oracle(f.dense()));
        }
    }
}

TEST_CASE("check_involutive_map")
{
    auto a = std::make_shared<GradedSpace<Rational>>("a", std::vector<std::string>{"x", "y"},
                                                     std::vector<int>{0, 0});
    auto b = std::make_shared<GradedSpace<Rational>>("b", std::vector<std::string>{"x", "y"},
                                                     std::vector<int>{0, 0});
    SECTION("identity involutions: always true")
    {
        GradedMap<Rational> f(a, b, 0);
        f.add_entry(0, 1, Rational(3));
        REQUIRE(check_involutive_map(f));
    }
    std::vector<SparseRow<Rational>> swap_star{{{1, Rational(1)}}, {{0, Rational(1)}}};
    SECTION("swap star, projection to the first: false")
    {
        const_cast<GradedSpace<Rational>&>(*a).set_involution(swap_star);
        const_cast<GradedSpace<Rational>&>(*b).set_involution(swap_star);
        GradedMap<Rational> proj(a, b, 0);
        proj.add_entry(0, 0, Rational(1));
        REQUIRE_FALSE(check_involutive_map(proj));
    }
    SECTION("swap star on both sides, f = swap: true")
    {
        const_cast<GradedSpace<Rational>&>(*a).set_involution(swap_star);
        const_cast<GradedSpace<Rational>&>(*b).set_involution(swap_star);
        GradedMap<Rational> f(a, b, 0);
        f.add_entry(0, 1, Rational(1));
        f.add_entry(1, 0, Rational(1));
        REQUIRE(check_involutive_map(f));
    }
}

TEST_CASE("homology_dims")
{
    SECTION("zero differentials: H_n = component dimension")
    {
        ChainComplex<Rational> c;
        c.components[0] = make_space<Rational>("c0", {0, 0});
        c.components[1] = make_space<Rational>("c1", {1, 1, 1});
        c.certified = {0, 1};
        auto dims = homology_dims(c);
        REQUIRE(dims.at(0) == 2);
        REQUIRE(dims.at(1) == 3);
    }
    SECTION("two-term complex with iso differential: all H = 0")
    {
        ChainComplex<Rational> c;
        c.components[0] = make_space<Rational>("c0", {0, 0});
        c.components[1] = make_space<Rational>("c1", {1, 1});
        GradedMap<Rational> d(c.components[1], c.components[0], -1);
        d.add_entry(0, 1, Rational(2));
        d.add_entry(1, 0, Rational(5));
        c.differentials.emplace(1, d);
        c.certified = {0, 1};
        auto dims = homology_dims(c);
        REQUIRE(dims.at(0) == 0);
        REQUIRE(dims.at(1) == 0);
    }
    SECTION("d^2 != 0 is a structural error naming the degree")
    {
        ChainComplex<Rational> c;
        for (int n = 0; n <= 2; ++n)
            c.components[n] = make_space<Rational>("c" + std::to_string(n), {n, n});
        GradedMap<Rational> d1(c.components[1], c.components[0], -1);
        d1.add_entry(0, 0, Rational(1));
        GradedMap<Rational> d2(c.components[2], c.components[1], -1);
        d2.add_entry(0, 0, Rational(1));
        c.differentials.emplace(1, d1);
        c.differentials.emplace(2, d2);
        c.certified = {0, 2};
        try {
            homology_dims(c);
            FAIL("expected structural error");
        } catch (const Error& e) {
            REQUIRE(std::string(e.what()).find("2") != std::string::npos);
        }
    }
    SECTION("homology dims are independent of basis order")
    {
        // complex over Q: C_1 -> C_0 with a rank-1 map, plus permuted copy
        std::vector<int> perm{2, 0, 1};
        ChainComplex<Rational> c, cp;
        c.components[0] = make_space<Rational>("c0", {0, 0, 0});
        c.components[1] = make_space<Rational>("c1", {1, 1, 1});
        cp.components[0] = make_space<Rational>("p0", {0, 0, 0});
        cp.components[1] = make_space<Rational>("p1", {1, 1, 1});
        GradedMap<Rational> d(c.components[1], c.components[0], -1);
        GradedMap<Rational> dp(cp.components[1], cp.components[0], -1);
        std::vector<std::tuple<int, int, Rational>> entries{
            {0, 0, Rational(1)}, {1, 0, Rational(2)}, {2, 1, Rational(1)}};
        for (auto& [i, j, v] : entries) {
            d.add_entry(i, j, v);
            dp.add_entry(perm[i], perm[j], v);
        }
        c.differentials.emplace(1, d);
        cp.differentials.emplace(1, dp);
        c.certified = cp.certified = {0, 1};
        REQUIRE(homology_dims(c) == homology_dims(cp));
    }
}

TEST_CASE("solve")
{
    DenseMatrix<Rational> a(2, 2);
    a << Rational(1), Rational(2), Rational(3), Rational(4);
    DenseVector<Rational> b(2);
    b << Rational(5), Rational(6);
    auto x = solve(a, b);
    REQUIRE(x);
    REQUIRE((a * *x - b).isZero());

    DenseMatrix<Rational> sing(2, 2);
    sing << Rational(1), Rational(1), Rational(1), Rational(1);
    DenseVector<Rational> c(2);
    c << Rational(0), Rational(1);
    REQUIRE_FALSE(solve(sing, c).has_value());
}
