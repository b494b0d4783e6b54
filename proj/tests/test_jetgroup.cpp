#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace test;

namespace {

RFormalMap map1(const RSeries& s)
{
    RFormalMap x(1, 1, s.truncation());
    x[0] = s;
    return x;
}

RFormalMap map_of(std::vector<RSeries> comps)
{
    const int n = static_cast<int>(comps.size());
    RFormalMap x(comps.front().nvars(), n, comps.front().truncation());
    x.comps = std::move(comps);
    return x;
}

PSeries symbolic1(char symbol, int n)
{
    Truncation tr(1, n);
    std::vector<PSeries::Term> t;
    for (int k = 1; k <= n; ++k) t.emplace_back(Exponent(std::vector<int>{k}), CoeffPoly::indeterminate(Indeterminate{symbol, 1, {k}}));
    return PSeries::from_terms(tr, std::move(t));
}

CoeffPoly sym(char s, int k) { return CoeffPoly::indeterminate(Indeterminate{s, 1, {k}}); }

// sum over compositions s_1 + ... + s_k = i of y_{s_1} ... y_{s_k}
CoeffPoly y_compositions(int i, int k)
{
    CoeffPoly r;
    std::vector<int> cur;
    enumerate_compositions(i, k, cur, [&](const std::vector<int>& s) {
        CoeffPoly m(1);
        for (int t : s) m *= sym('y', t);
        r += m;
    });
    return r;
}

SeriesMatrix<Rational> truncated(const SeriesMatrix<Rational>& m, int n)
{
    return m.map([n](const RSeries& s) { return s.with_max_degree(n); });
}

} // namespace

TEST_CASE("compose examples", "[jetgroup]")
{
    const RFormalMap x = map1(poly(1, 4, {{{1}, Q(1)}, {{2}, Q(1)}}));
    const RFormalMap y = map1(poly(1, 4, {{{1}, Q(1)}, {{3}, Q(1)}}));
    CHECK(compose(x, y)[0] == poly(1, 4, {{{1}, Q(1)}, {{2}, Q(1)}, {{3}, Q(1)}, {{4}, Q(2)}}));
    CHECK(compose(x, RFormalMap::identity(1, 4)) == x);
}

TEST_CASE("compose matches the partition formula symbolically", "[jetgroup]")
{
    const int n = 5;
    PFormalMap x(1, 1, Truncation(1, n)), y(1, 1, Truncation(1, n));
    x[0] = symbolic1('x', n);
    y[0] = symbolic1('y', n);
    const PFormalMap z = compose(x, y);
    for (int i = 1; i <= n; ++i) {
        CoeffPoly expected;
        for (int k = 1; k <= i; ++k) expected += sym('x', k) * y_compositions(i, k);
        CHECK(z[0].coefficient(Exponent(std::vector<int>{i})) == expected);
    }
}

TEST_CASE("compose errors", "[jetgroup]")
{
    const RFormalMap x = map1(poly(1, 3, {{{1}, Q(1)}}));
    CHECK_THROWS_AS(compose(x, map1(poly(1, 3, {{{0}, Q(1)}, {{1}, Q(1)}}))), UnsupportedError);
    CHECK_THROWS_AS(compose(x, RFormalMap::identity(2, 3)), ShapeError);
}

TEST_CASE("invert examples", "[jetgroup]")
{
    const RFormalMap x = map1(poly(1, 4, {{{1}, Q(1)}, {{2}, Q(1)}}));
    const RFormalMap xb = invert(x);
    CHECK(xb[0] == poly(1, 4, {{{1}, Q(1)}, {{2}, Q(-1)}, {{3}, Q(2)}, {{4}, Q(-5)}}));
    CHECK(compose(x, xb) == RFormalMap::identity(1, 4));
    CHECK(invert(RFormalMap::identity(3, 5)) == RFormalMap::identity(3, 5));
}

TEST_CASE("invert matches the recursive inverse formulas", "[jetgroup]")
{
    const Rational x1 = 2, x2 = 3, x3 = 5;
    const RFormalMap xb = invert(map1(poly(1, 3, {{{1}, x1}, {{2}, x2}, {{3}, x3}})));
    auto c = [&](int k) { return xb[0].coefficient(Exponent(std::vector<int>{k})); };
    CHECK(c(1) == Q(1, 2));
    CHECK(c(2) == Q(-3, 8));
    CHECK(c(3) == Q(1, 4));
    CHECK(c(1) == 1 / x1);
    CHECK(c(2) == -x2 / (x1 * x1 * x1));
    CHECK(c(3) == -x3 / (x1 * x1 * x1 * x1) + 2 * x2 * x2 / (x1 * x1 * x1 * x1 * x1));
}

TEST_CASE("invert errors", "[jetgroup]")
{
    CHECK_THROWS_AS(invert(map1(poly(1, 3, {{{2}, Q(1)}}))), SingularError);
    CHECK_THROWS_AS(invert(map1(poly(1, 3, {{{0}, Q(1)}, {{1}, Q(1)}}))), UnsupportedError);
}

TEST_CASE("derivative_matrix examples", "[jetgroup]")
{
    const auto j1 = derivative_matrix(map1(poly(1, 4, {{{1}, Q(1)}, {{2}, Q(1)}})));
    CHECK(j1.at(0, 0) == poly(1, 4, {{{0}, Q(1)}, {{1}, Q(2)}}));

    const Truncation tr(3, 4);
    CHECK(derivative_matrix(RFormalMap::identity(3, 4)) == SeriesMatrix<Rational>::identity(3, tr));

    const auto j2 = derivative_matrix(map_of({poly(2, 4, {{{1, 0}, Q(1)}, {{1, 1}, Q(1)}}), poly(2, 4, {{{0, 1}, Q(1)}})}));
    CHECK(j2.at(0, 0) == poly(2, 4, {{{0, 0}, Q(1)}, {{0, 1}, Q(1)}}));
    CHECK(j2.at(0, 1) == poly(2, 4, {{{1, 0}, Q(1)}}));
    CHECK(j2.at(1, 0).is_zero());
    CHECK(j2.at(1, 1) == poly(2, 4, {{{0, 0}, Q(1)}}));
}

TEST_CASE("check_invertible examples", "[jetgroup]")
{
    const auto id = check_invertible(RFormalMap::identity(2, 4));
    CHECK(id.det == 1);
    CHECK(id.invertible);

    const auto deg = check_invertible(map_of({poly(2, 4, {{{2, 0}, Q(1)}}), poly(2, 4, {{{1, 1}, Q(1)}})}));
    CHECK(deg.det == 0);
    CHECK_FALSE(deg.invertible);

    const auto m = check_invertible(map_of({poly(2, 4, {{{1, 0}, Q(2)}, {{0, 1}, Q(3)}, {{0, 2}, Q(7)}}),
                                            poly(2, 4, {{{1, 0}, Q(3)}, {{0, 1}, Q(5)}})}));
    CHECK(m.det == 1);
    CHECK(m.invertible);
    CHECK(m.matrix == std::vector<std::vector<Rational>>{{Q(2), Q(3)}, {Q(3), Q(5)}});
}

TEST_CASE("pushforward examples", "[jetgroup]")
{
    const RBiField phi = bifield1(poly(2, 6, {{{2, 1}, Q(1)}, {{1, 2}, Q(-1)}}));
    CHECK(pushforward_bifield(RFormalMap::identity(1, 6), phi) == phi);

    for (long c : {2L, -3L, 5L}) {
        const RFormalMap x = map1(poly(1, 6, {{{1}, Q(c)}}));
        CHECK(pushforward_bifield(x, phi) == scale(phi, Q(1, c)));
    }

    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        const RFormalMap x = random_group_element(1, 6, rng);
        const RBiField out = pushforward_bifield(x, phi);
        CHECK(cybe_residual(out).is_zero());
    }
}

TEST_CASE("pushforward errors", "[jetgroup]")
{
    const RBiField laurent = bifield1(poly(2, 4, {{{-1, 1}, Q(1)}}, {-1, 0}));
    CHECK_THROWS_AS(pushforward_bifield(RFormalMap::identity(1, 4), laurent), UnsupportedError);
    const RBiField phi = bifield1(poly(2, 4, {{{1, 0}, Q(1)}, {{0, 1}, Q(-1)}}));
    CHECK_THROWS_AS(pushforward_bifield(map1(poly(1, 4, {{{2}, Q(1)}})), phi), SingularError);
}

TEST_CASE("group laws on random jets", "[jetgroup][property]")
{
    Rng rng(2024);
    for (int n = 1; n <= 3; ++n)
        for (int N = 2; N <= 6; N += 2)
            for (int t = 0; t < 6; ++t) {
                const RFormalMap x = random_group_element(n, N, rng);
                const RFormalMap y = random_group_element(n, N, rng);
                const RFormalMap z = random_group_element(n, N, rng);
                const RFormalMap id = RFormalMap::identity(n, N);
                const RFormalMap xb = invert(x);
                CHECK(compose(x, xb) == id);
                CHECK(compose(xb, x) == id);
                CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));

                const auto lhs = derivative_matrix(compose(x, y));
                const auto jx = derivative_matrix(x).map([&](const RSeries& s) { return substitute(s, y.comps); });
                const auto rhs = matmul(jx, derivative_matrix(y));
                CHECK(truncated(lhs, N - 1) == truncated(rhs, N - 1));
            }
}

TEST_CASE("pushforward is a skew-preserving action", "[jetgroup][property]")
{
    Rng rng(99);
    const SampleShape shape{1, 4, 3, 0.5};
    for (int n = 1; n <= 2; ++n)
        for (int t = 0; t < 6; ++t) {
            const int N = 5;
            const RFormalMap x = random_group_element(n, N, rng);
            const RFormalMap y = random_group_element(n, N, rng);
            const RBiField phi = random_skew_bifield(n, N, rng, shape);
            const RBiField once = pushforward_bifield(x, phi);
            CHECK(is_skew(once));
            CHECK(pushforward_bifield(y, once) == pushforward_bifield(compose(y, x), phi));
        }
}
