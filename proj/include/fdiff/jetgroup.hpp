#ifndef FDIFF_JETGROUP_HPP
#define FDIFF_JETGROUP_HPP

#include <vector>

#include "fdiff/fields.hpp"
#include "fdiff/series_matrix.hpp"

namespace fdiff {

// Jet of a map R^m -> R^n: n component series in m variables.
template <class C>
struct FormalMap {
    int source_dim = 0;
    int target_dim = 0;
    std::vector<Series<C>> comps;

    FormalMap() = default;
    FormalMap(int m, int n, const Truncation& tr)
        : source_dim(m), target_dim(n), comps(static_cast<std::size_t>(n), Series<C>(tr))
    {
    }

    static FormalMap identity(int n, int max_degree)
    {
        Truncation tr(n, max_degree);
        FormalMap x(n, n, tr);
        for (int i = 0; i < n; ++i) x[i] = Series<C>::variable(tr, i);
        return x;
    }

    Series<C>& operator[](int i) { return comps[static_cast<std::size_t>(i)]; }
    const Series<C>& operator[](int i) const { return comps[static_cast<std::size_t>(i)]; }
    int max_degree() const { return comps.empty() ? 0 : comps.front().max_degree(); }
    int certified_degree() const { return detail::min_certified(comps); }
    friend bool operator==(const FormalMap& a, const FormalMap& b)
    {
        return a.source_dim == b.source_dim && a.target_dim == b.target_dim && a.comps == b.comps;
    }
};

using RFormalMap = FormalMap<Rational>;

template <class C>
struct LinearPart {
    std::vector<std::vector<C>> matrix;
    C det;
    bool invertible = false;
};

namespace detail {

template <class C>
void require_map_shape(const FormalMap<C>& x)
{
    if (static_cast<int>(x.comps.size()) != x.target_dim) throw ShapeError("map component count differs from target dimension");
    for (const auto& s : x.comps) {
        if (s.nvars() != x.source_dim) throw ShapeError("map component has wrong variable count");
        require_same_shape(x.comps.front(), s);
    }
}

template <class C>
bool has_constant_term(const FormalMap<C>& x)
{
    for (const auto& s : x.comps)
        if (!fdiff::is_zero(s.coefficient(Exponent{}))) return true;
    return false;
}

template <class C>
C dense_det(const std::vector<std::vector<C>>& a, std::vector<int> rows, std::vector<int> cols)
{
    if (rows.empty()) return C(1);
    if (rows.size() == 1) return a[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[0])];
    int r = rows.front();
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    C total(0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const C& e = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols[c])];
        if (fdiff::is_zero(e)) continue;
        std::vector<int> sub_cols;
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (k != c) sub_cols.push_back(cols[k]);
        C t = e * dense_det(a, sub_rows, sub_cols);
        if (c % 2 == 0)
            total += t;
        else
            total -= t;
    }
    return total;
}

template <class C>
std::vector<std::vector<C>> dense_inverse(const std::vector<std::vector<C>>& a, const C& det)
{
    const int n = static_cast<int>(a.size());
    C dinv = inverse(det);
    std::vector<std::vector<C>> r(static_cast<std::size_t>(n), std::vector<C>(static_cast<std::size_t>(n), C(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < n; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            C m = dense_det(a, rows, cols) * dinv;
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ((i + j) % 2 == 0) ? m : C(-m);
        }
    return r;
}

} // namespace detail

template <class C>
LinearPart<C> check_invertible(const FormalMap<C>& x)
{
    detail::require_map_shape(x);
    if (x.source_dim != x.target_dim) throw ShapeError("linear part of a non-square jet");
    const int n = x.target_dim;
    LinearPart<C> lp;
    lp.matrix.assign(static_cast<std::size_t>(n), std::vector<C>(static_cast<std::size_t>(n), C(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Exponent e;
            e.set(j, 1);
            lp.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x[i].coefficient(e);
        }
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) idx.push_back(i);
    lp.det = detail::dense_det(lp.matrix, idx, idx);
    try {
        (void)inverse(lp.det);
        lp.invertible = true;
    } catch (const UnitError&) {
        lp.invertible = false;
    }
    return lp;
}

template <class C>
SeriesMatrix<C> derivative_matrix(const FormalMap<C>& x)
{
    detail::require_map_shape(x);
    SeriesMatrix<C> j(x.target_dim, x.source_dim, x.comps.front().truncation());
    for (int i = 0; i < x.target_dim; ++i)
        for (int k = 0; k < x.source_dim; ++k) j.at(i, k) = partial_derivative(x[i], k);
    return j;
}

// Z = X o Y, Y with zero constant term.
template <class C>
FormalMap<C> compose(const FormalMap<C>& x, const FormalMap<C>& y)
{
    detail::require_map_shape(x);
    detail::require_map_shape(y);
    if (y.target_dim != x.source_dim) throw ShapeError("composition dimensions do not chain");
    if (detail::has_constant_term(y)) throw UnsupportedError("composition with an inner map that has a constant term");
    FormalMap<C> z(y.source_dim, x.target_dim, y.comps.front().truncation());
    for (int i = 0; i < x.target_dim; ++i) z[i] = substitute(x[i], y.comps);
    return z;
}

// Degree-by-degree solution of X(Xbar(u)) = u.
template <class C>
FormalMap<C> invert(const FormalMap<C>& x)
{
    detail::require_map_shape(x);
    if (x.source_dim != x.target_dim) throw ShapeError("inverse of a non-square jet");
    if (detail::has_constant_term(x)) throw UnsupportedError("inverse of a jet with a constant term");
    LinearPart<C> lp = check_invertible(x);
    if (!lp.invertible) throw SingularError("jet has a singular linear part");
    const int n = x.target_dim;
    const Truncation tr = x.comps.front().truncation();
    auto ainv = detail::dense_inverse(lp.matrix, lp.det);

    FormalMap<C> xb(n, n, tr);
    for (int i = 0; i < n; ++i) {
        std::vector<typename Series<C>::Term> t;
        for (int j = 0; j < n; ++j) {
            Exponent e;
            e.set(j, 1);
            t.emplace_back(e, ainv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        xb[i] = Series<C>::from_terms(tr, std::move(t));
    }
    bool linear = true;
    for (const auto& s : x.comps)
        for (const auto& t : s.terms())
            if (t.first.degree() != 1) linear = false;
    const int cert = x.certified_degree();
    if (linear && x.comps.front().is_exact()) return xb;

    for (int d = 2; d <= tr.max_degree; ++d) {
        FormalMap<C> r = compose(x, xb);
        std::vector<Series<C>> rd;
        for (int i = 0; i < n; ++i) rd.push_back(homogeneous_part(r[i], d));
        for (int i = 0; i < n; ++i) {
            Series<C> corr(tr);
            for (int j = 0; j < n; ++j)
                corr = corr + scale(rd[static_cast<std::size_t>(j)], ainv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            xb[i] = xb[i] - corr;
        }
    }
    for (auto& s : xb.comps) s.limit_precision(std::min(cert, tr.max_degree));
    return xb;
}

template <class C>
FormalMap<C> embed_map(const FormalMap<C>& x, const VariableMap& vm)
{
    FormalMap<C> r = x;
    r.source_dim = vm.target_nvars;
    for (auto& s : r.comps) s = relabel_blocks(s, vm);
    return r;
}

// Pi^{ij}(u,v) = (F_{*u})^i_a (F_{*v})^j_b phi_m^{ab}(u,v) - phi_n^{ij}(F(u), F(v)).
template <class C>
BiField<C> transported_difference(const FormalMap<C>& f, const BiField<Rational>& phi_m, const BiField<Rational>& phi_n)
{
    detail::require_map_shape(f);
    const int m = f.source_dim;
    const int n = f.target_dim;
    if (phi_m.dim != m || phi_m.block_vars != m) throw ShapeError("source bifield dimension differs from map source");
    if (phi_n.dim != n || phi_n.block_vars != n) throw ShapeError("target bifield dimension differs from map target");
    const int nmax = f.max_degree();
    const Truncation tr(2 * m, nmax);

    SeriesMatrix<C> j = derivative_matrix(f);
    const auto eu = VariableMap::embed(m, 0, 2);
    const auto ev = VariableMap::embed(m, 1, 2);
    std::vector<Series<C>> ju, jv;
    for (const auto& e : j.entries()) {
        ju.push_back(relabel_blocks(e, eu));
        jv.push_back(relabel_blocks(e, ev));
    }
    auto jat = [m](const std::vector<Series<C>>& v, int i, int a) -> const Series<C>& {
        return v[static_cast<std::size_t>(i * m + a)];
    };

    std::vector<Series<C>> pm;
    for (const auto& s : phi_m.comps) pm.push_back(promote_series<C>(s).with_max_degree(nmax));

    // T^{j a} = sum_b (F_{*v})^j_b phi^{ab}
    std::vector<Series<C>> t(static_cast<std::size_t>(n * m), Series<C>(tr));
    for (int jj = 0; jj < n; ++jj)
        for (int a = 0; a < m; ++a) {
            Series<C> acc(tr);
            for (int b = 0; b < m; ++b) {
                const auto& p = pm[static_cast<std::size_t>(a * m + b)];
                if (p.is_zero() && p.is_exact()) continue;
                acc = acc + mul(jat(jv, jj, b), p);
            }
            t[static_cast<std::size_t>(jj * m + a)] = acc;
        }

    std::vector<Series<C>> args;
    for (int i = 0; i < n; ++i) args.push_back(relabel_blocks(f[i], eu));
    for (int i = 0; i < n; ++i) args.push_back(relabel_blocks(f[i], ev));

    BiField<C> out(n, m, tr);
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            Series<C> acc(tr);
            for (int a = 0; a < m; ++a) acc = acc + mul(jat(ju, i, a), t[static_cast<std::size_t>(jj * m + a)]);
            const auto& q = phi_n.at(i, jj);
            if (!(q.is_zero() && q.is_exact())) acc = acc - substitute(q, args);
            out.at(i, jj) = acc;
        }
    return out;
}

// Bivector push-forward (X.phi)^{ij}(u,v).
template <class C>
BiField<C> pushforward_bifield(const FormalMap<C>& x, const BiField<C>& phi)
{
    detail::require_map_shape(x);
    const int n = x.target_dim;
    if (x.source_dim != n || phi.dim != n || phi.block_vars != n) throw ShapeError("push-forward dimensions differ");
    for (const auto& s : phi.comps)
        if (s.has_negative_exponents()) throw UnsupportedError("push-forward of a Laurent bifield");
    FormalMap<C> xb = invert(x);
    SeriesMatrix<C> j = derivative_matrix(x);
    const auto eu = VariableMap::embed(n, 0, 2);
    const auto ev = VariableMap::embed(n, 1, 2);
    const int nmax = x.max_degree();
    const Truncation tr(2 * n, nmax);

    std::vector<Series<C>> ju, jv;
    for (const auto& e : j.entries()) {
        Series<C> jb = substitute(e, xb.comps);
        ju.push_back(relabel_blocks(jb, eu));
        jv.push_back(relabel_blocks(jb, ev));
    }
    std::vector<Series<C>> args;
    for (int i = 0; i < n; ++i) args.push_back(relabel_blocks(xb[i], eu));
    for (int i = 0; i < n; ++i) args.push_back(relabel_blocks(xb[i], ev));
    std::vector<Series<C>> moved;
    for (const auto& s : phi.comps) moved.push_back(substitute(s, args));

    BiField<C> out(n, n, tr);
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            Series<C> acc(tr);
            for (int k = 0; k < n; ++k) {
                Series<C> inner(tr);
                for (int l = 0; l < n; ++l)
                    inner = inner + mul(jv[static_cast<std::size_t>(jj * n + l)], moved[static_cast<std::size_t>(k * n + l)]);
                acc = acc + mul(ju[static_cast<std::size_t>(i * n + k)], inner);
            }
            out.at(i, jj) = acc;
        }
    return out;
}

} // namespace fdiff

#endif
