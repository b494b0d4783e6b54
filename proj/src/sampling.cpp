#include "fdiff/sampling.hpp"

namespace fdiff {

namespace {

void monomials_of_degree(int nvars, int deg, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == nvars - 1) {
        cur.push_back(deg);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur.push_back(e);
        monomials_of_degree(nvars, deg - e, cur, out);
        cur.pop_back();
    }
}

long long nonzero_coeff(Rng& rng, int bound)
{
    std::uniform_int_distribution<int> mag(1, bound);
    std::bernoulli_distribution sign(0.5);
    long long c = mag(rng);
    return sign(rng) ? -c : c;
}

// Unimodular integer matrix: product of a random permutation-free
// lower and upper unitriangular pair, with a random sign.
std::vector<std::vector<long long>> unimodular(int n, Rng& rng)
{
    std::uniform_int_distribution<int> off(-1, 1);
    std::vector<std::vector<long long>> l(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    auto u = l;
    for (int i = 0; i < n; ++i) {
        l[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        u[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        for (int k = 0; k < i; ++k) {
            l[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = off(rng);
            u[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = off(rng);
        }
    }
    std::vector<std::vector<long long>> a(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +=
                    l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    if (std::bernoulli_distribution(0.5)(rng))
        for (auto& x : a[0]) x = -x;
    return a;
}

} // namespace

RSeries random_series(const Truncation& tr, Rng& rng, const SampleShape& shape)
{
    std::bernoulli_distribution keep(shape.density);
    std::vector<RSeries::Term> terms;
    const int hi = std::min(shape.max_degree, tr.max_degree);
    for (int d = std::max(shape.min_degree, 0); d <= hi; ++d) {
        std::vector<std::vector<int>> monos;
        std::vector<int> cur;
        if (tr.nvars == 0) {
            if (d == 0) monos.emplace_back();
        } else {
            monomials_of_degree(tr.nvars, d, cur, monos);
        }
        for (const auto& e : monos)
            if (keep(rng)) terms.emplace_back(Exponent(e), Rational(static_cast<long>(nonzero_coeff(rng, shape.coeff_bound))));
    }
    return RSeries::from_terms(tr, std::move(terms));
}

RFormalMap random_group_element(int n, int max_degree, Rng& rng, int top_degree)
{
    RFormalMap x = RFormalMap::identity(n, max_degree);
    const Truncation tr(n, max_degree);
    const auto a = unimodular(n, rng);
    for (int i = 0; i < n; ++i) {
        std::vector<RSeries::Term> lin;
        for (int k = 0; k < n; ++k) {
            long long c = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (c == 0) continue;
            std::vector<int> e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(k)] = 1;
            lin.emplace_back(Exponent(e), Rational(static_cast<long>(c)));
        }
        x.comps[static_cast<std::size_t>(i)] =
            RSeries::from_terms(tr, std::move(lin)) + random_series(tr, rng, SampleShape{2, top_degree, 2, 0.5});
    }
    return x;
}

RFormalMap random_shifted_element(int n, int max_degree, Rng& rng, int top_degree)
{
    RFormalMap x = random_group_element(n, max_degree, rng, top_degree);
    const Truncation tr(n, max_degree);
    for (auto& c : x.comps) c = c + RSeries::constant(tr, Rational(static_cast<long>(nonzero_coeff(rng, 2))));
    return x;
}

RVectorField random_vector_field(int n, int max_degree, Rng& rng, const SampleShape& shape)
{
    const Truncation tr(n, max_degree);
    RVectorField x(n, tr);
    for (int i = 0; i < n; ++i) x[i] = random_series(tr, rng, shape);
    return x;
}

RBiField random_skew_bifield(int n, int max_degree, Rng& rng, const SampleShape& shape)
{
    RBiField psi = RBiField::square(n, max_degree);
    const Truncation tr(2 * n, max_degree);
    for (auto& c : psi.comps) c = random_series(tr, rng, shape);
    const auto swap = VariableMap::swap_blocks(n);
    RBiField phi = RBiField::square(n, max_degree);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) phi.at(i, j) = psi.at(i, j) - relabel_blocks(psi.at(j, i), swap);
    return phi;
}

ThetaPsiPair random_theta_psi(int n, int max_degree, Rng& rng)
{
    GeneratorTuple f;
    const Truncation tr(n, max_degree);
    const auto a = unimodular(n, rng);
    for (int i = 0; i < n; ++i) {
        std::vector<RSeries::Term> lin;
        for (int k = 0; k < n; ++k) {
            long long c = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (c == 0) continue;
            std::vector<int> e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(k)] = 1;
            lin.emplace_back(Exponent(e), Rational(static_cast<long>(c)));
        }
        f.gens.push_back(RSeries::from_terms(tr, std::move(lin)) + random_series(tr, rng, SampleShape{2, 3, 2, 0.4}));
    }
    return theta_psi_from_generators(f);
}

} // namespace fdiff
