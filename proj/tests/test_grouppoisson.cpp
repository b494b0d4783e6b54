#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "support.hpp"

using namespace test;

namespace {

Indeterminate x1(int i) { return Indeterminate{'x', 1, {i}}; }

RBiField phi_d(int d, int n = 8)
{
    return canonical_rmatrix(IntegerMatrix(std::vector<std::vector<long long>>{{d}}), Normalization::Appendix, n);
}

// Weight sum of (k - 1) over the factors x_k of a monomial.
int shifted_weight(const CoeffPoly::Term& t)
{
    int w = 0;
    for (const auto& [key, pow] : t.first) w += (Indeterminate::from_key(key).index.front() - 1) * pow;
    return w;
}

int index_degree(const CoeffPoly::Term& t)
{
    int w = 0;
    for (const auto& [key, pow] : t.first) w += Indeterminate::from_key(key).index.front() * pow;
    return w;
}

} // namespace

TEST_CASE("omega_bifield examples", "[grouppoisson]")
{
    const SymbolicJet jet = SymbolicJet::make(1, false, 8);
    CHECK(omega_bifield(RBiField::square(1, 8), jet).is_zero());

    const RBiField phi = bifield1(poly(2, 8, {{{2, 1}, Q(1)}, {{1, 2}, Q(-1)}}));
    const PBiField om = omega_bifield(phi, jet);
    const CoeffPoly x = CoeffPoly::indeterminate(x1(1));
    CHECK(om.at(0, 0).coefficient(Exponent(std::vector<int>{1, 2})) == x * x * x - x * x);
    CHECK_THROWS_AS(omega_bifield(bifield1(poly(2, 4, {{{-1, 1}, Q(1)}}, {-1, 0})), jet), UnsupportedError);
}

TEST_CASE("omega specializes to the numeric tensor", "[grouppoisson][property]")
{
    Rng rng(77);
    const int N = 5;
    for (int n = 1; n <= 2; ++n)
        for (int t = 0; t < 4; ++t) {
            const RBiField phi = random_skew_bifield(n, N, rng, SampleShape{1, 3, 2, 0.5});
            const RFormalMap x = random_group_element(n, N, rng);
            const PBiField om = omega_bifield(phi, SymbolicJet::make(n, false, N));
            auto value = [&](const Indeterminate& v) {
                return x[v.component - 1].coefficient(Exponent(v.index));
            };

            // (X_{*u})^i_k (X_{*v})^j_l phi^{kl}(u,v) - phi^{ij}(X(u), X(v))
            const auto eu = VariableMap::embed(n, 0, 2), ev = VariableMap::embed(n, 1, 2);
            const auto jac = derivative_matrix(x);
            std::vector<RSeries> args;
            for (int i = 0; i < n; ++i) args.push_back(relabel_blocks(x[i], eu));
            for (int i = 0; i < n; ++i) args.push_back(relabel_blocks(x[i], ev));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    RSeries direct(Truncation(2 * n, N));
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l)
                            direct = direct + mul(mul(relabel_blocks(jac.at(i, k), eu), relabel_blocks(jac.at(j, l), ev)), phi.at(k, l));
                    direct = direct - substitute(phi.at(i, j), args);
                    const RSeries got = evaluate_coefficients(om.at(i, j), value);
                    CHECK(got.with_max_degree(N) == direct.with_max_degree(N));
                }
        }
}

TEST_CASE("bracket_coefficient examples", "[grouppoisson]")
{
    const PBiField om1 = omega_bifield(phi_d(1), SymbolicJet::make(1, false, 10));
    const CoeffPoly x = CoeffPoly::indeterminate(x1(1));
    CHECK(bracket_coefficient(om1, x1(2), x1(2)).is_zero());
    CHECK(bracket_coefficient(om1, x1(1), x1(2)) == x * x * x - x * x);
    const PBiField om2 = omega_bifield(phi_d(2), SymbolicJet::make(1, false, 10));
    CHECK(bracket_coefficient(om2, x1(1), x1(1)).is_zero());
    CHECK_THROWS_AS(bracket_coefficient(om1, x1(40), x1(1)), RangeError);
    CHECK_THROWS_AS(bracket_coefficient(om1, Indeterminate{'x', 2, {1}}, x1(1)), RangeError);
}

TEST_CASE("bracket polynomials are skew", "[grouppoisson][property]")
{
    const PBiField om = omega_bifield(canonical_rmatrix(IntegerMatrix({{2, 1}, {1, 1}}), Normalization::Raw, 10),
                                      SymbolicJet::make(2, false, 4));
    const auto idx = multi_indices(2, 1, 2);
    for (int p = 1; p <= 2; ++p)
        for (int q = 1; q <= 2; ++q)
            for (const auto& m : idx)
                for (const auto& n : idx) {
                    const Indeterminate a{'x', p, m}, b{'x', q, n};
                    CHECK(bracket_coefficient(om, a, b) == -bracket_coefficient(om, b, a));
                }
    for (const auto& e : bracket_table(om, 2, false)) CHECK(e.poly == -bracket_coefficient(om, e.b, e.a));
}

TEST_CASE("bracket polynomials carry a shifted grading", "[grouppoisson][property]")
{
    // With weight |I| the bracket {x_1, x_2} = x_1^3 - x_1^2 is not homogeneous.
    const PBiField om1 = omega_bifield(phi_d(1), SymbolicJet::make(1, false, 10));
    const CoeffPoly b12 = bracket_coefficient(om1, x1(1), x1(2));
    std::set<int> degrees;
    for (const auto& t : b12.terms()) degrees.insert(index_degree(t));
    CHECK(degrees.size() == 2);

    // With weight |I| - 1 every bracket {x_i, x_j} is homogeneous of weight (i - 1) + (j - 1) - d.
    for (int d = 1; d <= 3; ++d) {
        const PBiField om = omega_bifield(phi_d(d), SymbolicJet::make(1, false, 12));
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j) {
                const CoeffPoly b = bracket_coefficient(om, x1(i), x1(j));
                for (const auto& t : b.terms()) CHECK(shifted_weight(t) == i + j - 2 - d);
            }
    }
}

TEST_CASE("n=1 appendix brackets", "[grouppoisson]")
{
    for (int d = 1; d <= 3; ++d) {
        const PBiField om = omega_bifield(phi_d(d), SymbolicJet::make(1, false, 12));
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j) CHECK(bracket_coefficient(om, x1(i), x1(j)) == appendix_n1(i, j, d));
    }
}

TEST_CASE("n=2 appendix brackets with corrected partition signs", "[grouppoisson]")
{
    const auto idx = multi_indices(2, 0, 3);
    for (const auto& rows : std::vector<std::vector<std::vector<long long>>>{{{1, 0}, {0, 1}}, {{2, 1}, {1, 3}}, {{1, 2}, {0, 1}}}) {
        const IntegerMatrix d(rows);
        const PBiField om = omega_bifield(canonical_rmatrix(d, Normalization::Appendix, 14), SymbolicJet::make(2, true, 6));
        const long a = static_cast<long>(d.at(0, 0)), b = static_cast<long>(d.at(0, 1));
        const long c = static_cast<long>(d.at(1, 0)), e = static_cast<long>(d.at(1, 1));
        for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}})
            for (const auto& m : idx)
                for (const auto& n : idx) {
                    const CoeffPoly got = bracket_coefficient(om, Indeterminate{'x', p, m}, Indeterminate{'x', q, n});
                    CHECK(got == appendix_n2_sign_fixed(p, q, a, b, c, e, m[0], m[1], n[0], n[1]));
                }
    }
}

TEST_CASE("n=2 appendix two-x terms match verbatim", "[grouppoisson]")
{
    // With a zero coordinate x^i_{00} the partition sums vanish for |m|, |n| < min degree of the products.
    const IntegerMatrix d({{2, 1}, {1, 3}});
    const PBiField om = omega_bifield(canonical_rmatrix(d, Normalization::Appendix, 14), SymbolicJet::make(2, true, 6));
    auto drop_constants = [](const CoeffPoly& p) {
        return p.substitute([](const Indeterminate& v, CoeffPoly& out) {
            if (v.degree() != 0) return false;
            out = CoeffPoly();
            return true;
        });
    };
    const auto idx = multi_indices(2, 0, 3);
    for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}})
        for (const auto& m : idx)
            for (const auto& n : idx) {
                const N2Parts parts = appendix_n2(p, q, 2, 1, 1, 3, m[0], m[1], n[0], n[1]);
                const CoeffPoly got = bracket_coefficient(om, Indeterminate{'x', p, m}, Indeterminate{'x', q, n});
                CHECK(drop_constants(got) == drop_constants(parts.two + parts.partition));
            }
}

TEST_CASE("coordinate_jacobi_residual examples", "[grouppoisson]")
{
    for (int d = 1; d <= 2; ++d) {
        const PBiField om = omega_bifield(phi_d(d), SymbolicJet::make(1, false, 10));
        CHECK(coordinate_jacobi_residual(om, x1(1), x1(2), x1(3)).is_zero());
        CHECK(coordinate_jacobi_residual(om, x1(2), x1(2), x1(3)).is_zero());
    }
}

TEST_CASE("Jacobi identity on coordinate triples", "[grouppoisson][property]")
{
    for (int d = 1; d <= 3; ++d) {
        const PBiField om = omega_bifield(phi_d(d), SymbolicJet::make(1, false, 10));
        for (int i = 1; i <= 4; ++i)
            for (int j = i; j <= 4; ++j)
                for (int k = j; k <= 4; ++k) CHECK(coordinate_jacobi_residual(om, x1(i), x1(j), x1(k)).is_zero());
    }
    const PBiField om2 = omega_bifield(canonical_rmatrix(IntegerMatrix({{1, 1}, {0, 1}}), Normalization::Raw, 10),
                                       SymbolicJet::make(2, false, 4));
    const auto idx = multi_indices(2, 1, 2);
    for (std::size_t s = 0; s + 2 < idx.size(); ++s) {
        const Indeterminate a{'x', 1, idx[s]}, b{'x', 2, idx[s + 1]}, c{'x', 1, idx[s + 2]};
        CHECK(coordinate_jacobi_residual(om2, a, b, c).is_zero());
    }
}

TEST_CASE("Jacobi identity fails off the CYBE", "[grouppoisson]")
{
    const RBiField square = bifield1(poly(2, 8, {{{2, 0}, Q(1)}, {{0, 2}, Q(-1)}}));
    REQUIRE_FALSE(cybe_residual(square).is_zero());
    const PBiField om = omega_bifield(square, SymbolicJet::make(1, false, 10));
    bool any = false;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) any = any || !coordinate_jacobi_residual(om, x1(i), x1(j), x1(k)).is_zero();
    CHECK(any);
}

TEST_CASE("multiplicativity_residual examples", "[grouppoisson]")
{
    const RBiField phi = canonical_rmatrix(IntegerMatrix::identity(2), Normalization::Raw, 5);
    const RFormalMap id = RFormalMap::identity(2, 5);
    CHECK(multiplicativity_residual(phi, id, id).is_zero());
    Rng rng(12);
    for (int t = 0; t < 5; ++t) {
        CHECK(multiplicativity_residual(phi, id, random_group_element(2, 5, rng)).is_zero());
        CHECK(multiplicativity_residual(phi, random_group_element(2, 5, rng), random_group_element(2, 5, rng)).is_zero());
    }
    CHECK_THROWS_AS(multiplicativity_residual(phi, random_shifted_element(2, 5, rng), id), UnsupportedError);
}

TEST_CASE("bracket_table lists ordered pairs", "[grouppoisson]")
{
    const PBiField om = omega_bifield(phi_d(1), SymbolicJet::make(1, false, 8));
    const auto table = bracket_table(om, 3, false);
    CHECK(table.size() == 3);
    for (const auto& e : table) CHECK(e.poly == bracket_coefficient(om, e.a, e.b));
    CHECK(multi_indices(2, 0, 1) == std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}});
}
