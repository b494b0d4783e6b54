#include "fdiff/grouppoisson.hpp"

#include <algorithm>

namespace fdiff {

namespace {

void indices_rec(int n, int k, int remaining, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (k == n - 1) {
        cur[static_cast<std::size_t>(k)] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<std::size_t>(k)] = e;
        indices_rec(n, k + 1, remaining - e, cur, out);
    }
}

Exponent pair_exponent(const std::vector<int>& i, const std::vector<int>& j)
{
    std::vector<int> e = i;
    e.insert(e.end(), j.begin(), j.end());
    return Exponent(e);
}

int index_degree(const std::vector<int>& i)
{
    int d = 0;
    for (int v : i) d += v;
    return d;
}

void require_label(const PBiField& omega, const Indeterminate& a)
{
    if (a.component < 1 || a.component > omega.dim) throw RangeError("coordinate component out of range");
    if (static_cast<int>(a.index.size()) != omega.block_vars) throw ShapeError("coordinate multi-index has wrong length");
    for (int v : a.index)
        if (v < 0) throw RangeError("negative coordinate index");
}

} // namespace

std::vector<std::vector<int>> multi_indices(int n, int lo, int hi)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    for (int d = std::max(lo, 0); d <= hi; ++d) indices_rec(n, 0, d, cur, out);
    return out;
}

SymbolicJet SymbolicJet::make(int n, bool include_constant, int max_degree, char symbol)
{
    if (n < 1) throw ShapeError("jet dimension must be positive");
    if (max_degree < 1) throw RangeError("jet truncation order must be positive");
    SymbolicJet jet;
    jet.dim = n;
    jet.include_constant = include_constant;
    jet.max_degree = max_degree;
    jet.symbol = symbol;
    const Truncation tr(n, max_degree);
    jet.map = PFormalMap(n, n, tr);
    const auto idx = multi_indices(n, include_constant ? 0 : 1, max_degree);
    for (int i = 0; i < n; ++i) {
        std::vector<PSeries::Term> t;
        for (const auto& I : idx) {
            Indeterminate x{symbol, i + 1, I};
            t.emplace_back(Exponent(I), CoeffPoly::indeterminate(x));
        }
        jet.map[i] = PSeries::from_terms(tr, std::move(t), max_degree);
    }
    return jet;
}

PBiField omega_bifield(const RBiField& phi, const SymbolicJet& jet)
{
    for (const auto& s : phi.comps)
        if (s.has_negative_exponents()) throw UnsupportedError("symbolic tensor of a Laurent r-matrix");
    return transported_difference(jet.map, phi, phi);
}

CoeffPoly bracket_coefficient(const PBiField& omega, const Indeterminate& a, const Indeterminate& b)
{
    require_label(omega, a);
    require_label(omega, b);
    const PSeries& s = omega.at(a.component - 1, b.component - 1);
    if (index_degree(a.index) + index_degree(b.index) > s.certified_degree())
        throw RangeError("bracket coefficient lies beyond the certified degree");
    return s.coefficient(pair_exponent(a.index, b.index));
}

CoeffPoly coordinate_jacobi_residual(const PBiField& omega, const Indeterminate& a, const Indeterminate& b,
                                     const Indeterminate& c)
{
    auto term = [&omega](const Indeterminate& p, const Indeterminate& q, const Indeterminate& r) {
        CoeffPoly w = bracket_coefficient(omega, p, q);
        CoeffPoly acc;
        for (IndeterminateKey k : w.indeterminates()) {
            Indeterminate e = Indeterminate::from_key(k);
            acc += w.derivative(k) * bracket_coefficient(omega, e, r);
        }
        return acc;
    };
    return term(a, b, c) + term(b, c, a) + term(c, a, b);
}

RBiField multiplicativity_residual(const RBiField& phi, const RFormalMap& x, const RFormalMap& y)
{
    const int n = phi.dim;
    if (x.source_dim != n || x.target_dim != n || y.source_dim != n || y.target_dim != n)
        throw ShapeError("group elements and r-matrix differ in dimension");
    if (detail::has_constant_term(x) || detail::has_constant_term(y))
        throw UnsupportedError("multiplicativity check for jets with constant terms");
    RFormalMap z = compose(x, y);
    RBiField lhs = transported_difference(z, phi, phi);

    const auto eu = VariableMap::embed(n, 0, 2);
    const auto ev = VariableMap::embed(n, 1, 2);
    std::vector<RSeries> yuv;
    for (int i = 0; i < n; ++i) yuv.push_back(relabel_blocks(y[i], eu));
    for (int i = 0; i < n; ++i) yuv.push_back(relabel_blocks(y[i], ev));

    RBiField omega_x = transported_difference(x, phi, phi);
    RBiField omega_y = transported_difference(y, phi, phi);
    SeriesMatrix<Rational> jx = derivative_matrix(x);
    std::vector<RSeries> ju, jv;
    for (const auto& e : jx.entries()) {
        RSeries at_y = substitute(e, y.comps);
        ju.push_back(relabel_blocks(at_y, eu));
        jv.push_back(relabel_blocks(at_y, ev));
    }
    RBiField out = lhs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RSeries acc = substitute(omega_x.at(i, j), yuv);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const RSeries& o = omega_y.at(k, l);
                    if (o.is_zero() && o.is_exact()) continue;
                    acc = acc + mul(mul(ju[static_cast<std::size_t>(i * n + k)], jv[static_cast<std::size_t>(j * n + l)]), o);
                }
            out.at(i, j) = lhs.at(i, j) - acc;
        }
    return out;
}

std::vector<BracketEntry> bracket_table(const PBiField& omega, int bound, bool include_constant)
{
    const int n = omega.dim;
    std::vector<Indeterminate> labels;
    for (const auto& I : multi_indices(omega.block_vars, include_constant ? 0 : 1, bound))
        for (int i = 1; i <= n; ++i) labels.push_back(Indeterminate{'x', i, I});
    std::vector<BracketEntry> out;
    for (std::size_t p = 0; p < labels.size(); ++p)
        for (std::size_t q = p + 1; q < labels.size(); ++q) {
            const auto& a = labels[p];
            const auto& b = labels[q];
            out.push_back(BracketEntry{a, b, bracket_coefficient(omega, a, b)});
        }
    return out;
}

RSeries evaluate_coefficients(const PSeries& s, const std::function<Rational(const Indeterminate&)>& value)
{
    std::vector<RSeries::Term> t;
    for (const auto& [e, c] : s.terms()) t.emplace_back(e, c.evaluate(value));
    return RSeries::from_terms(s.truncation(), std::move(t), s.precision());
}

} // namespace fdiff
