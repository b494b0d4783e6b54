#include "fdiff/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace fdiff {

namespace {

Integer bareiss(std::vector<std::vector<Integer>> a)
{
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<std::vector<Integer>> to_integers(const IntegerMatrix& d)
{
    std::vector<std::vector<Integer>> a;
    for (const auto& r : d.rows) {
        std::vector<Integer> row;
        for (long long v : r) row.emplace_back(static_cast<long>(v));
        a.push_back(std::move(row));
    }
    return a;
}

void require_nonsingular(const IntegerMatrix& d)
{
    if (d.determinant() == 0) throw DegenerateError("matrix D is singular; use degeneracy_kernel");
}

Exponent row_exponent(const IntegerMatrix& d, int i, int sign)
{
    std::vector<int> e;
    for (int k = 0; k < d.n; ++k) e.push_back(sign * static_cast<int>(d.at(i, k)));
    return Exponent(e);
}

} // namespace

IntegerMatrix::IntegerMatrix(std::vector<std::vector<long long>> r) : n(static_cast<int>(r.size())), rows(std::move(r))
{
    if (n == 0) throw ShapeError("empty integer matrix");
    for (const auto& row : rows)
        if (static_cast<int>(row.size()) != n) throw ShapeError("integer matrix is not square");
}

IntegerMatrix IntegerMatrix::identity(int n)
{
    std::vector<std::vector<long long>> r(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return IntegerMatrix(r);
}

IntegerMatrix IntegerMatrix::diagonal(const std::vector<long long>& d)
{
    const std::size_t n = d.size();
    std::vector<std::vector<long long>> r(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = d[i];
    return IntegerMatrix(r);
}

Integer IntegerMatrix::determinant() const { return bareiss(to_integers(*this)); }

bool IntegerMatrix::nonnegative() const
{
    for (const auto& r : rows)
        for (long long v : r)
            if (v < 0) return false;
    return true;
}

bool IntegerMatrix::symmetric() const
{
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (at(i, k) != at(k, i)) return false;
    return true;
}

MatrixClass IntegerMatrix::classification() const
{
    if (!nonnegative()) return MatrixClass::General;
    return determinant() == 0 ? MatrixClass::NonnegativeSingular : MatrixClass::NonnegativeNonsingular;
}

Integer IntegerMatrix::minor(int i, int j) const
{
    if (i < 0 || i >= n || j < 0 || j >= n) throw RangeError("minor index out of range");
    auto a = to_integers(*this);
    std::vector<std::vector<Integer>> m;
    for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Integer> row;
        for (int c = 0; c < n; ++c)
            if (c != j) row.push_back(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        m.push_back(std::move(row));
    }
    return bareiss(m);
}

Normalization parse_normalization(const std::string& s)
{
    if (s == "raw") return Normalization::Raw;
    if (s == "appendix") return Normalization::Appendix;
    throw ParseError("normalization must be raw or appendix, got '" + s + "'");
}

std::string to_string(Normalization n) { return n == Normalization::Raw ? "raw" : "appendix"; }

GeneratorTuple canonical_generators(const IntegerMatrix& d, int max_degree)
{
    require_nonsingular(d);
    const Truncation tr(d.n, max_degree);
    GeneratorTuple g;
    for (int i = 0; i < d.n; ++i) g.gens.push_back(RSeries::monomial(tr, row_exponent(d, i, -1), Rational(1)));
    return g;
}

RBiField canonical_rmatrix(const IntegerMatrix& d, Normalization norm, int max_degree)
{
    if (!d.nonnegative()) throw DomainError("matrix D has negative entries; use laurent_family_sample");
    RBiField raw = rmatrix_from_generators(canonical_generators(d, max_degree));
    if (norm == Normalization::Raw) return raw;
    const Integer det = d.determinant();
    Rational c(det * det);
    if (d.n == 1) c = -c;
    return scale(raw, c);
}

RBiVector canonical_alpha(const IntegerMatrix& d, Normalization norm, int max_degree)
{
    const RBiField phi = canonical_rmatrix(d, norm, max_degree);
    const int n = d.n;
    const auto diag = VariableMap::diagonal(n, 2);
    RBiVector a(n, Truncation(n, max_degree));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = -relabel_blocks(phi.at(i, j), diag);
    return a;
}

MinorTable minor_coefficients(const IntegerMatrix& d, Normalization norm, int max_degree)
{
    require_nonsingular(d);
    const int n = d.n;
    MinorTable t;
    t.n = n;
    t.minors.assign(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.minors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d.minor(i, j);
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
            if (d.rows[static_cast<std::size_t>(k)] == d.rows[static_cast<std::size_t>(l)])
                t.ambiguities.push_back("rows " + std::to_string(k + 1) + " and " + std::to_string(l + 1) + " coincide");

    const RBiField phi = canonical_rmatrix(d, norm, max_degree);
    t.a.assign(static_cast<std::size_t>(n * n * n), Rational(0));
    auto exponent = [](const std::vector<int>& u, const std::vector<int>& v) {
        std::vector<int> e = u;
        e.insert(e.end(), v.begin(), v.end());
        return Exponent(e);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RSeries& p = phi.at(i, j);
            std::vector<Exponent> basis;
            for (int k = 0; k < n; ++k) {
                std::vector<int> u(static_cast<std::size_t>(n), 0), v(static_cast<std::size_t>(n), 0);
                for (int c = 0; c < n; ++c) u[static_cast<std::size_t>(c)] = static_cast<int>(d.at(k, c));
                u[static_cast<std::size_t>(i)] += 1;
                v[static_cast<std::size_t>(j)] += 1;
                Exponent eu = exponent(u, v);
                t.a[static_cast<std::size_t>((i * n + j) * n + k)] = p.coefficient(eu);
                basis.push_back(eu);
                std::vector<int> u0(static_cast<std::size_t>(n), 0), v0(static_cast<std::size_t>(n), 0);
                for (int c = 0; c < n; ++c) v0[static_cast<std::size_t>(c)] = static_cast<int>(d.at(k, c));
                u0[static_cast<std::size_t>(i)] += 1;
                v0[static_cast<std::size_t>(j)] += 1;
                basis.push_back(exponent(u0, v0));
            }
            for (const auto& term : p.terms())
                if (std::find(basis.begin(), basis.end(), term.first) == basis.end()) t.support_ok = false;
        }
    // The v-side of phi^{ij} carries -A^{ji}_k.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<int> u(static_cast<std::size_t>(n), 0), v(static_cast<std::size_t>(n), 0);
                for (int c = 0; c < n; ++c) v[static_cast<std::size_t>(c)] = static_cast<int>(d.at(k, c));
                u[static_cast<std::size_t>(i)] += 1;
                v[static_cast<std::size_t>(j)] += 1;
                if (phi.at(i, j).coefficient(exponent(u, v)) != -t.coefficient(j, i, k)) t.consistent = false;
            }
    return t;
}

RBiField special_orbit_rmatrix(int n, int max_degree)
{
    if (n < 1) throw ShapeError("dimension must be positive");
    const Truncation tr(2 * n, max_degree);
    RBiField phi(n, n, tr);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) phi.at(i, j) = RSeries::variable(tr, i) - RSeries::variable(tr, n + j);
    return phi;
}

std::optional<std::vector<long long>> degeneracy_kernel(const IntegerMatrix& d)
{
    if (d.determinant() != 0) return std::nullopt;
    const int n = d.n;
    // Solve k^T D = 0, i.e. D^T k = 0, by reduced row echelon form over Q.
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = Rational(static_cast<long>(d.at(c, r)));
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < n && row < n; ++c) {
        int p = row;
        while (p < n && a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] == 0) ++p;
        if (p == n) continue;
        std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(row)]);
        Rational inv = 1 / a[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
        for (auto& x : a[static_cast<std::size_t>(row)]) x *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == row) continue;
            Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int cc = 0; cc < n; ++cc)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -= f * a[static_cast<std::size_t>(row)][static_cast<std::size_t>(cc)];
        }
        pivot_col.push_back(c);
        ++row;
    }
    int free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
    std::vector<Rational> k(static_cast<std::size_t>(n), Rational(0));
    k[static_cast<std::size_t>(free_col)] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) k[static_cast<std::size_t>(pivot_col[r])] = -a[r][static_cast<std::size_t>(free_col)];
    Integer l = 1;
    for (const auto& x : k) l = lcm(l, Integer(x.get_den()));
    std::vector<Integer> z;
    Integer g = 0;
    for (const auto& x : k) {
        Integer v = Integer(x.get_num()) * (l / Integer(x.get_den()));
        z.push_back(v);
        g = gcd(g, v);
    }
    int sign = 1;
    for (const auto& v : z)
        if (v != 0) {
            sign = v < 0 ? -1 : 1;
            break;
        }
    std::vector<long long> out;
    for (const auto& v : z) {
        Integer w = sign * v / g;
        out.push_back(w.get_si());
    }
    return out;
}

LaurentSample laurent_family_sample(const IntegerMatrix& d, std::uint64_t seed, int size_budget)
{
    require_nonsingular(d);
    const int n = d.n;
    constexpr int kExtraDegree = 2;
    for (int i = 0; i < n; ++i) {
        long long lead = 0;
        for (int k = 0; k < n; ++k) lead -= d.at(i, k);
        if (lead > size_budget) throw BudgetError("size budget " + std::to_string(size_budget) +
                                                  " is below the leading degree " + std::to_string(lead));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> value(1, 3);
    const Truncation tr(n, size_budget);
    LaurentSample out;
    for (int i = 0; i < n; ++i) {
        const Exponent lead = row_exponent(d, i, -1);
        std::vector<RSeries::Term> terms;
        terms.emplace_back(lead, Rational(1));
        const int lo = lead.degree() + 1;
        const int hi = std::min(size_budget, lead.degree() + kExtraDegree);
        // Offsets over the lower bound: admissible exponents are lead + offset.
        std::vector<std::vector<int>> offsets;
        std::vector<int> cur(static_cast<std::size_t>(n), 0);
        std::function<void(int, int)> rec = [&](int k, int remaining) {
            if (k == n - 1) {
                cur[static_cast<std::size_t>(k)] = remaining;
                offsets.push_back(cur);
                return;
            }
            for (int e = remaining; e >= 0; --e) {
                cur[static_cast<std::size_t>(k)] = e;
                rec(k + 1, remaining - e);
            }
        };
        for (int deg = lo; deg <= hi; ++deg) rec(0, deg - lead.degree());
        for (const auto& off : offsets) {
            if (coin(rng) == 0) continue;
            int c = value(rng) * (coin(rng) ? 1 : -1);
            std::vector<int> e = lead.to_vector(n);
            for (int k = 0; k < n; ++k) e[static_cast<std::size_t>(k)] += off[static_cast<std::size_t>(k)];
            terms.emplace_back(Exponent(e), Rational(c));
        }
        out.generators.gens.push_back(RSeries::from_terms(tr, std::move(terms)));
    }
    out.phi = rmatrix_from_generators(out.generators);
    return out;
}

std::vector<IntegerMatrix> nonnegative_corpus(int n, int max_entry)
{
    std::vector<IntegerMatrix> out;
    const int cells = n * n;
    std::vector<long long> v(static_cast<std::size_t>(cells), 0);
    while (true) {
        std::vector<std::vector<long long>> r(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            r[static_cast<std::size_t>(i)].assign(v.begin() + i * n, v.begin() + (i + 1) * n);
        IntegerMatrix m(r);
        if (m.determinant() != 0) out.push_back(m);
        int p = cells - 1;
        while (p >= 0 && v[static_cast<std::size_t>(p)] == max_entry) v[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
        ++v[static_cast<std::size_t>(p)];
    }
    return out;
}

} // namespace fdiff
