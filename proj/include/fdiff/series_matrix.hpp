#ifndef FDIFF_SERIES_MATRIX_HPP
#define FDIFF_SERIES_MATRIX_HPP

#include <utility>
#include <vector>

#include "fdiff/series.hpp"

namespace fdiff {

template <class C>
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(int rows, int cols, const Truncation& tr)
        : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols), Series<C>(tr))
    {
    }

    static SeriesMatrix identity(int n, const Truncation& tr)
    {
        SeriesMatrix m(n, n, tr);
        for (int i = 0; i < n; ++i) m.at(i, i) = Series<C>::constant(tr, C(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Series<C>& at(int i, int j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Series<C>& at(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const std::vector<Series<C>>& entries() const { return entries_; }

    int certified_degree() const
    {
        int d = entries_.empty() ? 0 : entries_.front().certified_degree();
        for (const auto& e : entries_) d = std::min(d, e.certified_degree());
        return d;
    }

    SeriesMatrix map(const std::function<Series<C>(const Series<C>&)>& f) const
    {
        SeriesMatrix r = *this;
        for (auto& e : r.entries_) e = f(e);
        return r;
    }

    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Series<C>> entries_;
};

template <class C>
SeriesMatrix<C> matmul(const SeriesMatrix<C>& a, const SeriesMatrix<C>& b)
{
    if (a.cols() != b.rows()) throw ShapeError("matrix dimensions do not chain");
    if (a.rows() == 0 || b.cols() == 0) return SeriesMatrix<C>(a.rows(), b.cols(), Truncation());
    SeriesMatrix<C> r(a.rows(), b.cols(), a.at(0, 0).truncation());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Series<C> s(a.at(0, 0).truncation());
            for (int k = 0; k < a.cols(); ++k) s = s + mul(a.at(i, k), b.at(k, j));
            r.at(i, j) = s;
        }
    return r;
}

namespace detail {

template <class C>
Series<C> laplace_det(const SeriesMatrix<C>& m, std::vector<int>& rows, std::vector<int>& cols)
{
    if (rows.empty()) return Series<C>::constant(m.at(0, 0).truncation(), C(1));
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    const int r = rows.front();
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    Series<C> total(m.at(0, 0).truncation());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Series<C>& e = m.at(r, cols[c]);
        if (e.is_zero() && e.is_exact()) continue;
        std::vector<int> sub_cols;
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (k != c) sub_cols.push_back(cols[k]);
        Series<C> minor = laplace_det(m, sub_rows, sub_cols);
        Series<C> term = mul(e, minor);
        total = (c % 2 == 0) ? total + term : total - term;
    }
    return total;
}

template <class C>
int min_entry_valuation(const SeriesMatrix<C>& m)
{
    int v = 0;
    for (const auto& e : m.entries())
        if (!e.is_zero()) v = std::min(v, e.valuation());
    return v;
}

} // namespace detail

template <class C>
Series<C> determinant(const SeriesMatrix<C>& m)
{
    if (m.rows() != m.cols()) throw ShapeError("determinant of a non-square matrix");
    if (m.rows() == 0) throw ShapeError("determinant of an empty matrix");
    std::vector<int> rows, cols;
    for (int i = 0; i < m.rows(); ++i) {
        rows.push_back(i);
        cols.push_back(i);
    }
    return detail::laplace_det(m, rows, cols);
}

template <class C>
SeriesMatrix<C> adjugate(const SeriesMatrix<C>& m)
{
    const int n = m.rows();
    SeriesMatrix<C> adj(n, n, m.at(0, 0).truncation());
    if (n == 1) {
        adj.at(0, 0) = Series<C>::constant(m.at(0, 0).truncation(), C(1));
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < n; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            Series<C> d = detail::laplace_det(m, rows, cols);
            adj.at(i, j) = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

// (M^{-1}, det M).  The adjugate is multiplied by the inverse leading
// monomial of det M before the power-series part of 1/det is applied, so
// that no intermediate leaves the truncation window.
template <class C>
std::pair<SeriesMatrix<C>, Series<C>> matrix_inverse(const SeriesMatrix<C>& m)
{
    if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
    if (m.rows() == 0) throw ShapeError("inverse of an empty matrix");
    const int k = m.rows();
    const int n = m.at(0, 0).max_degree();
    for (const auto& e : m.entries()) detail::require_same_shape(m.at(0, 0), e);

    int work = n + k * std::max(0, -detail::min_entry_valuation(m));
    auto widen = [&](int w) { return m.map([w](const Series<C>& e) { return e.with_max_degree(w); }); };

    SeriesMatrix<C> wide = widen(work);
    Series<C> det = determinant(wide);
    UnitDecomposition<C> lead;
    try {
        lead = unit_decomposition(det);
    } catch (const UnitError& e) {
        throw SingularError(std::string("determinant is not a unit: ") + e.what());
    }
    const int dm = lead.monomial.degree();
    if (dm > 0) {
        work += dm;
        wide = widen(work);
        det = determinant(wide);
    }
    const C cinv = inverse(lead.coefficient);
    Series<C> unit_part = shift(det, -lead.monomial, cinv, work);
    Series<C> s = invert_unit(unit_part);
    SeriesMatrix<C> adj = adjugate(wide);
    SeriesMatrix<C> inv(k, k, m.at(0, 0).truncation());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Series<C> a = shift(adj.at(i, j), -lead.monomial, cinv, work);
            inv.at(i, j) = mul(a, s).with_max_degree(n);
        }
    return {inv, det.with_max_degree(n)};
}

} // namespace fdiff

#endif
