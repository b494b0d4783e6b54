#ifndef FDIFF_FIELDS_HPP
#define FDIFF_FIELDS_HPP

#include <algorithm>
#include <vector>

#include "fdiff/series.hpp"

namespace fdiff {

namespace detail {

template <class C>
int min_certified(const std::vector<Series<C>>& v)
{
    if (v.empty()) return 0;
    int d = v.front().certified_degree();
    for (const auto& s : v) d = std::min(d, s.certified_degree());
    return d;
}

template <class C>
bool all_zero(const std::vector<Series<C>>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Series<C>& s) { return s.is_zero(); });
}

} // namespace detail

// Formal vector field X^i(u) d/du^i on n variables.
template <class C>
struct VectorField {
    int dim = 0;
    std::vector<Series<C>> comps;

    VectorField() = default;
    VectorField(int n, const Truncation& tr) : dim(n), comps(static_cast<std::size_t>(n), Series<C>(tr)) {}

    Series<C>& operator[](int i) { return comps[static_cast<std::size_t>(i)]; }
    const Series<C>& operator[](int i) const { return comps[static_cast<std::size_t>(i)]; }
    int certified_degree() const { return detail::min_certified(comps); }
    bool is_zero() const { return detail::all_zero(comps); }
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.dim == b.dim && a.comps == b.comps; }
};

// n x n kernel phi^{ij}(u, v) on 2m variables, u-block first.  For group
// bivectors m = n; for jet-space bivectors m is the source dimension.
template <class C>
struct BiField {
    int dim = 0;
    int block_vars = 0;
    std::vector<Series<C>> comps;

    BiField() = default;
    BiField(int n, int m, const Truncation& tr)
        : dim(n), block_vars(m), comps(static_cast<std::size_t>(n * n), Series<C>(tr))
    {
    }
    static BiField square(int n, int max_degree) { return BiField(n, n, Truncation(2 * n, max_degree)); }

    Series<C>& at(int i, int j) { return comps[static_cast<std::size_t>(i * dim + j)]; }
    const Series<C>& at(int i, int j) const { return comps[static_cast<std::size_t>(i * dim + j)]; }
    int certified_degree() const { return detail::min_certified(comps); }
    bool is_zero() const { return detail::all_zero(comps); }
    int max_degree() const { return comps.empty() ? 0 : comps.front().max_degree(); }
    friend bool operator==(const BiField& a, const BiField& b)
    {
        return a.dim == b.dim && a.block_vars == b.block_vars && a.comps == b.comps;
    }
};

// n x n x n residual Phi^{ijk}(u, v, w) on 3m variables.
template <class C>
struct TriField {
    int dim = 0;
    int block_vars = 0;
    std::vector<Series<C>> comps;

    TriField() = default;
    TriField(int n, int m, const Truncation& tr)
        : dim(n), block_vars(m), comps(static_cast<std::size_t>(n * n * n), Series<C>(tr))
    {
    }

    Series<C>& at(int i, int j, int k) { return comps[static_cast<std::size_t>((i * dim + j) * dim + k)]; }
    const Series<C>& at(int i, int j, int k) const { return comps[static_cast<std::size_t>((i * dim + j) * dim + k)]; }
    int certified_degree() const { return detail::min_certified(comps); }
    bool is_zero() const { return detail::all_zero(comps); }
    friend bool operator==(const TriField& a, const TriField& b)
    {
        return a.dim == b.dim && a.block_vars == b.block_vars && a.comps == b.comps;
    }
};

// Bivector alpha^{ij}(u) on the space itself.
template <class C>
struct BiVector {
    int dim = 0;
    std::vector<Series<C>> comps;

    BiVector() = default;
    BiVector(int n, const Truncation& tr) : dim(n), comps(static_cast<std::size_t>(n * n), Series<C>(tr)) {}

    Series<C>& at(int i, int j) { return comps[static_cast<std::size_t>(i * dim + j)]; }
    const Series<C>& at(int i, int j) const { return comps[static_cast<std::size_t>(i * dim + j)]; }
    int certified_degree() const { return detail::min_certified(comps); }
    bool is_zero() const { return detail::all_zero(comps); }
    friend bool operator==(const BiVector& a, const BiVector& b) { return a.dim == b.dim && a.comps == b.comps; }
};

using RVectorField = VectorField<Rational>;
using RBiField = BiField<Rational>;
using RTriField = TriField<Rational>;
using RBiVector = BiVector<Rational>;

template <class C>
BiField<C> scale(const BiField<C>& phi, const Rational& c)
{
    BiField<C> r = phi;
    for (auto& s : r.comps) s = scale(s, c);
    return r;
}

template <class C>
BiField<C> operator+(const BiField<C>& a, const BiField<C>& b)
{
    if (a.dim != b.dim || a.block_vars != b.block_vars) throw ShapeError("bifield dimensions differ");
    BiField<C> r = a;
    for (std::size_t i = 0; i < r.comps.size(); ++i) r.comps[i] = a.comps[i] + b.comps[i];
    return r;
}

template <class C>
BiField<C> operator-(const BiField<C>& a, const BiField<C>& b)
{
    return a + scale(b, Rational(-1));
}

template <class C>
TriField<C> scale(const TriField<C>& phi, const Rational& c)
{
    TriField<C> r = phi;
    for (auto& s : r.comps) s = scale(s, c);
    return r;
}

template <class C>
VectorField<C> operator+(const VectorField<C>& a, const VectorField<C>& b)
{
    if (a.dim != b.dim) throw ShapeError("vector field dimensions differ");
    VectorField<C> r = a;
    for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
    return r;
}

// phi^{ij}(u,v) + phi^{ji}(v,u); zero iff phi is skew.
template <class C>
BiField<C> skew_defect(const BiField<C>& phi)
{
    BiField<C> r = phi;
    const int m = phi.block_vars;
    const auto swap = VariableMap::swap_blocks(m);
    for (int i = 0; i < phi.dim; ++i)
        for (int j = 0; j < phi.dim; ++j) r.at(i, j) = phi.at(i, j) + relabel_blocks(phi.at(j, i), swap);
    return r;
}

template <class C>
bool is_skew(const BiField<C>& phi)
{
    return skew_defect(phi).is_zero();
}

template <class C>
BiField<C> with_max_degree(const BiField<C>& phi, int n)
{
    BiField<C> r = phi;
    for (auto& s : r.comps) s = s.with_max_degree(n);
    return r;
}

} // namespace fdiff

#endif
