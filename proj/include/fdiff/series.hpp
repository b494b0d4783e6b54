#ifndef FDIFF_SERIES_HPP
#define FDIFF_SERIES_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fdiff/coeff_poly.hpp"
#include "fdiff/error.hpp"
#include "fdiff/exponent.hpp"
#include "fdiff/rational.hpp"

namespace fdiff {

struct Truncation {
    int nvars = 0;
    int max_degree = 0;
    Exponent min_exponent;

    Truncation() = default;
    Truncation(int nv, int n) : nvars(nv), max_degree(n)
    {
        if (nv < 0 || nv > kMaxVars) throw ShapeError("variable count out of range");
    }
    Truncation(int nv, int n, const Exponent& lower) : Truncation(nv, n) { min_exponent = lower; }

    friend bool operator==(const Truncation& a, const Truncation& b)
    {
        return a.nvars == b.nvars && a.max_degree == b.max_degree && a.min_exponent == b.min_exponent;
    }
};

// Truncated multivariate Laurent series.  Besides the total-degree cutoff N
// every value carries its certified degree p: all coefficients of total
// degree <= p are exact.  An exact series (no p) has lost nothing.
template <class C>
class Series {
public:
    using Coeff = C;
    using Term = std::pair<Exponent, C>;

    Series() = default;
    explicit Series(const Truncation& tr) : tr_(tr) {}

    static Series constant(const Truncation& tr, const C& c)
    {
        return monomial(tr, Exponent{}, c);
    }

    static Series variable(const Truncation& tr, int k)
    {
        if (k < 0 || k >= tr.nvars) throw ShapeError("variable index out of range");
        Exponent e;
        e.set(k, 1);
        return monomial(tr, e, C(1));
    }

    static Series monomial(const Truncation& tr, const Exponent& e, const C& c)
    {
        std::vector<Term> t;
        t.emplace_back(e, c);
        return from_terms(tr, std::move(t));
    }

    // Normalizes: merges equal exponents, drops zeros, widens lower bounds
    // to fit, and drops (and records) terms beyond the truncation.
    static Series from_terms(const Truncation& tr, std::vector<Term> terms, std::optional<int> precision = {})
    {
        Series s(tr);
        s.prec_ = precision;
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        std::size_t out = 0;
        bool dropped = false;
        int cap = s.storage_cap();
        for (std::size_t i = 0; i < terms.size();) {
            std::size_t j = i + 1;
            C c = std::move(terms[i].second);
            while (j < terms.size() && terms[j].first == terms[i].first) {
                c += terms[j].second;
                ++j;
            }
            if (!fdiff::is_zero(c)) {
                const Exponent& e = terms[i].first;
                check_layout(tr, e);
                if (e.degree() > cap) {
                    dropped = true;
                } else {
                    if (out != i) terms[out].first = e;
                    terms[out].second = std::move(c);
                    s.tr_.min_exponent = Exponent::min(s.tr_.min_exponent, e);
                    ++out;
                }
            }
            i = j;
        }
        terms.resize(out);
        s.terms_ = std::move(terms);
        if (dropped) s.limit_precision(tr.max_degree);
        return s;
    }

    const Truncation& truncation() const { return tr_; }
    int nvars() const { return tr_.nvars; }
    int max_degree() const { return tr_.max_degree; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_exact() const { return !prec_.has_value(); }
    std::optional<int> precision() const { return prec_; }

    // Degree up to which the stored representative is exact.
    int certified_degree() const { return prec_ ? std::min(*prec_, tr_.max_degree) : tr_.max_degree; }

    C coefficient(const Exponent& e) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exponent& x) { return t.first < x; });
        if (it != terms_.end() && it->first == e) return it->second;
        return C(0);
    }

    // Minimal total degree of a stored term; for zero series the first
    // degree that is not certified (or max int when exact).
    int valuation() const
    {
        if (terms_.empty()) return prec_ ? *prec_ + 1 : std::numeric_limits<int>::max();
        int v = std::numeric_limits<int>::max();
        for (const auto& t : terms_) v = std::min(v, t.first.degree());
        return v;
    }

    int degree() const
    {
        if (terms_.empty()) return std::numeric_limits<int>::min();
        int d = std::numeric_limits<int>::min();
        for (const auto& t : terms_) d = std::max(d, t.first.degree());
        return d;
    }

    bool has_negative_exponents() const
    {
        for (const auto& t : terms_)
            if (t.first.has_negative()) return true;
        return false;
    }

    Series operator-() const
    {
        Series r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    // Caps the certified degree; terms above it are discarded.
    Series with_precision(int p) const
    {
        Series r = *this;
        r.limit_precision(p);
        return r;
    }

    Series as_exact() const
    {
        Series r = *this;
        r.prec_.reset();
        return r;
    }

    // Changes the cutoff N.  Raising it keeps all information; lowering it
    // caps the certified degree when terms are dropped.
    Series with_max_degree(int n) const
    {
        Series r = *this;
        r.tr_.max_degree = n;
        if (r.prec_) r.prec_ = std::min(*r.prec_, n);
        bool dropped = false;
        std::size_t out = 0;
        for (std::size_t i = 0; i < r.terms_.size(); ++i) {
            if (r.terms_[i].first.degree() > n) {
                dropped = true;
                continue;
            }
            if (out != i) r.terms_[out] = std::move(r.terms_[i]);
            ++out;
        }
        r.terms_.resize(out);
        if (dropped) r.limit_precision(n);
        return r;
    }

    Series with_lower_bound(const Exponent& lower) const
    {
        Series r = *this;
        r.tr_.min_exponent = Exponent::min(r.tr_.min_exponent, lower);
        return r;
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        return a.tr_.nvars == b.tr_.nvars && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // Internal constructor for already normalized data.
    static Series from_sorted(const Truncation& tr, std::vector<Term> terms, std::optional<int> precision)
    {
        Series s(tr);
        s.terms_ = std::move(terms);
        s.prec_ = precision;
        return s;
    }

    void limit_precision(int p)
    {
        prec_ = prec_ ? std::min(*prec_, p) : p;
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].first.degree() > p) continue;
            if (out != i) terms_[out] = std::move(terms_[i]);
            ++out;
        }
        terms_.resize(out);
    }

private:
    int storage_cap() const { return prec_ ? std::min(*prec_, tr_.max_degree) : tr_.max_degree; }

    static void check_layout(const Truncation& tr, const Exponent& e)
    {
        for (int k = tr.nvars; k < kMaxVars; ++k)
            if (e[k] != 0) throw ShapeError("exponent uses a variable beyond the series variable count");
    }

    Truncation tr_;
    std::vector<Term> terms_;
    std::optional<int> prec_;
};

using RSeries = Series<Rational>;
using PSeries = Series<CoeffPoly>;

namespace detail {

inline std::optional<int> min_precision(std::optional<int> a, std::optional<int> b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

template <class C>
void require_same_shape(const Series<C>& a, const Series<C>& b)
{
    if (a.nvars() != b.nvars()) throw ShapeError("series have different variable counts");
    if (a.max_degree() != b.max_degree()) throw ShapeError("series have different truncation orders");
}

template <class C>
std::vector<typename Series<C>::Term> merge_sorted(std::vector<typename Series<C>::Term> pending)
{
    using Term = typename Series<C>::Term;
    std::sort(pending.begin(), pending.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < pending.size();) {
        std::size_t j = i + 1;
        C c = std::move(pending[i].second);
        while (j < pending.size() && pending[j].first == pending[i].first) {
            c += pending[j].second;
            ++j;
        }
        if (!fdiff::is_zero(c)) {
            if (out != i) pending[out].first = pending[i].first;
            pending[out].second = std::move(c);
            ++out;
        }
        i = j;
    }
    pending.resize(out);
    return pending;
}

} // namespace detail

template <class C>
Series<C> operator+(const Series<C>& a, const Series<C>& b)
{
    using Term = typename Series<C>::Term;
    detail::require_same_shape(a, b);
    Truncation tr = a.truncation();
    tr.min_exponent = Exponent::min(a.truncation().min_exponent, b.truncation().min_exponent);
    auto p = detail::min_precision(a.precision(), b.precision());
    std::vector<Term> r;
    r.reserve(a.terms().size() + b.terms().size());
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].first < y[j].first) {
            r.push_back(x[i++]);
        } else if (y[j].first < x[i].first) {
            r.push_back(y[j++]);
        } else {
            C c = x[i].second;
            c += y[j].second;
            if (!fdiff::is_zero(c)) r.emplace_back(x[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    for (; i < x.size(); ++i) r.push_back(x[i]);
    for (; j < y.size(); ++j) r.push_back(y[j]);
    auto s = Series<C>::from_sorted(tr, std::move(r), std::nullopt);
    if (p) s.limit_precision(*p);
    return s;
}

template <class C>
Series<C> operator-(const Series<C>& a, const Series<C>& b)
{
    return a + (-b);
}

template <class C>
Series<C>& operator+=(Series<C>& a, const Series<C>& b)
{
    a = a + b;
    return a;
}

template <class C>
Series<C>& operator-=(Series<C>& a, const Series<C>& b)
{
    a = a - b;
    return a;
}

// Scalar multiple; the scalar may be a Rational or a coefficient.
template <class C, class S>
Series<C> scale(const Series<C>& f, const S& c)
{
    using Term = typename Series<C>::Term;
    if (fdiff::is_zero(c)) return Series<C>::from_sorted(f.truncation(), {}, std::nullopt);
    std::vector<Term> r;
    r.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        C v = t.second * c;
        if (!fdiff::is_zero(v)) r.emplace_back(t.first, std::move(v));
    }
    return Series<C>::from_sorted(f.truncation(), std::move(r), f.precision());
}

template <class C>
Series<C> operator*(const Rational& c, const Series<C>& f)
{
    return scale(f, c);
}

template <class C>
Series<C> linear_combine(const std::vector<std::pair<Rational, Series<C>>>& pairs)
{
    if (pairs.empty()) throw ShapeError("linear combination of no series");
    using Term = typename Series<C>::Term;
    Truncation tr = pairs.front().second.truncation();
    std::optional<int> p;
    std::vector<Term> pending;
    for (const auto& [c, s] : pairs) {
        detail::require_same_shape(pairs.front().second, s);
        tr.min_exponent = Exponent::min(tr.min_exponent, s.truncation().min_exponent);
        if (fdiff::is_zero(c)) continue;
        p = detail::min_precision(p, s.precision());
        for (const auto& t : s.terms()) pending.emplace_back(t.first, t.second * c);
    }
    auto s = Series<C>::from_sorted(tr, detail::merge_sorted<C>(std::move(pending)), std::nullopt);
    if (p) s.limit_precision(*p);
    return s;
}

namespace detail {

// Sums products of series term by term, dropping degrees above a cap.
template <class C>
class ProductAccumulator {
public:
    using Term = typename Series<C>::Term;

    // Returns true when some product term exceeded `limit`.
    bool add(const Series<C>& a, const Series<C>& b, int cap, int limit)
    {
        const auto& x = a.terms();
        const auto& y = b.terms();
        ydeg_.resize(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) ydeg_[j] = {y[j].first.degree(), j};
        std::sort(ydeg_.begin(), ydeg_.end());
        if (acc_.empty()) acc_.reserve(std::min<std::size_t>(x.size() * y.size(), 1u << 20));
        bool dropped = false;
        for (const auto& tx : x) {
            const int dx = tx.first.degree();
            for (const auto& [dy, j] : ydeg_) {
                if (dx + dy > cap) {
                    if (dx + dy > limit) dropped = true;
                    break;
                }
                auto [it, fresh] = acc_.try_emplace(tx.first + y[j].first);
                if (fresh)
                    it->second = tx.second * y[j].second;
                else
                    it->second += tx.second * y[j].second;
            }
        }
        return dropped;
    }

    std::vector<Term> take()
    {
        std::vector<Term> r;
        r.reserve(acc_.size());
        for (auto& [e, c] : acc_)
            if (!fdiff::is_zero(c)) r.emplace_back(e, std::move(c));
        acc_.clear();
        std::sort(r.begin(), r.end(), [](const Term& u, const Term& v) { return u.first < v.first; });
        return r;
    }

private:
    std::unordered_map<Exponent, C, ExponentHash> acc_;
    std::vector<std::pair<int, std::size_t>> ydeg_;
};

// Rational coefficients: denominators are cleared once per factor scale so the
// inner loop runs on integers.
template <>
class ProductAccumulator<Rational> {
public:
    using Term = Series<Rational>::Term;

    bool add(const Series<Rational>& a, const Series<Rational>& b, int cap, int limit)
    {
        if (!scaled_) {
            la_ = common_denominator(a);
            lb_ = common_denominator(b);
            scaled_ = true;
        }
        numerators(a, la_, xa_);
        numerators(b, lb_, yb_);
        ydeg_.resize(yb_.size());
        for (std::size_t j = 0; j < yb_.size(); ++j) ydeg_[j] = {yb_[j].first.degree(), j};
        std::sort(ydeg_.begin(), ydeg_.end());
        if (acc_.empty()) acc_.reserve(std::min<std::size_t>(xa_.size() * yb_.size(), 1u << 20));
        bool dropped = false;
        for (const auto& tx : xa_) {
            const int dx = tx.first.degree();
            for (const auto& [dy, j] : ydeg_) {
                if (dx + dy > cap) {
                    if (dx + dy > limit) dropped = true;
                    break;
                }
                Integer& slot = acc_[tx.first + yb_[j].first];
                mpz_addmul(slot.get_mpz_t(), tx.second.get_mpz_t(), yb_[j].second.get_mpz_t());
            }
        }
        return dropped;
    }

    // Scales must be multiples of every later factor's denominators.
    void set_scales(const Integer& la, const Integer& lb)
    {
        la_ = la;
        lb_ = lb;
        scaled_ = true;
    }

    static Integer common_denominator(const Series<Rational>& f)
    {
        Integer l = 1;
        for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
        return l;
    }

    std::vector<Term> take()
    {
        const Integer den = la_ * lb_;
        std::vector<Term> r;
        r.reserve(acc_.size());
        for (auto& [e, c] : acc_) {
            if (sgn(c) == 0) continue;
            Rational q(c, den);
            q.canonicalize();
            r.emplace_back(e, std::move(q));
        }
        acc_.clear();
        std::sort(r.begin(), r.end(), [](const Term& u, const Term& v) { return u.first < v.first; });
        return r;
    }

private:
    static void numerators(const Series<Rational>& f, const Integer& l, std::vector<std::pair<Exponent, Integer>>& out)
    {
        out.clear();
        out.reserve(f.terms().size());
        for (const auto& t : f.terms()) {
            Integer q;
            mpz_divexact(q.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
            q *= t.second.get_num();
            out.emplace_back(t.first, std::move(q));
        }
    }

    bool scaled_ = false;
    Integer la_, lb_;
    std::unordered_map<Exponent, Integer, ExponentHash> acc_;
    std::vector<std::pair<Exponent, Integer>> xa_, yb_;
    std::vector<std::pair<int, std::size_t>> ydeg_;
};

// Certified degree of a*b before truncation losses, and the working cap.
template <class C>
std::pair<std::optional<int>, int> product_precision(const Series<C>& a, const Series<C>& b)
{
    std::optional<int> p;
    if (a.precision()) p = min_precision(p, *a.precision() + b.valuation());
    if (b.precision()) p = min_precision(p, *b.precision() + a.valuation());
    const int n = a.max_degree();
    return {p, p ? std::min(*p, n) : n};
}

} // namespace detail

// Truncated product with certified-degree propagation.
template <class C>
Series<C> mul(const Series<C>& a, const Series<C>& b)
{
    detail::require_same_shape(a, b);
    Truncation tr = a.truncation();
    tr.min_exponent = Exponent::bound_sum(a.truncation().min_exponent, b.truncation().min_exponent);
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact()))
        return Series<C>::from_sorted(tr, {}, std::nullopt);
    auto [p, cap] = detail::product_precision(a, b);
    detail::ProductAccumulator<C> acc;
    if (acc.add(a, b, cap, tr.max_degree)) p = detail::min_precision(p, tr.max_degree);
    return Series<C>::from_sorted(tr, acc.take(), p);
}

// Sum of products a_k * b_k, equal to adding the individual mul results.
template <class C>
Series<C> sum_of_products(const std::vector<std::pair<const Series<C>*, const Series<C>*>>& factors)
{
    if (factors.empty()) throw ShapeError("sum of no products");
    Truncation tr = factors.front().first->truncation();
    bool first = true;
    std::optional<int> p;
    detail::ProductAccumulator<C> acc;
    if constexpr (std::is_same_v<C, Rational>) {
        Integer la = 1, lb = 1;
        for (const auto& [a, b] : factors) {
            const Integer da = detail::ProductAccumulator<C>::common_denominator(*a);
            const Integer db = detail::ProductAccumulator<C>::common_denominator(*b);
            mpz_lcm(la.get_mpz_t(), la.get_mpz_t(), da.get_mpz_t());
            mpz_lcm(lb.get_mpz_t(), lb.get_mpz_t(), db.get_mpz_t());
        }
        acc.set_scales(la, lb);
    }
    for (const auto& [a, b] : factors) {
        detail::require_same_shape(*a, *b);
        detail::require_same_shape(*factors.front().first, *a);
        const Exponent lb = Exponent::bound_sum(a->truncation().min_exponent, b->truncation().min_exponent);
        tr.min_exponent = first ? lb : Exponent::min(tr.min_exponent, lb);
        first = false;
        if ((a->is_zero() && a->is_exact()) || (b->is_zero() && b->is_exact())) continue;
        auto [q, cap] = detail::product_precision(*a, *b);
        if (acc.add(*a, *b, cap, tr.max_degree)) q = detail::min_precision(q, tr.max_degree);
        p = detail::min_precision(p, q);
    }
    auto s = Series<C>::from_sorted(tr, acc.take(), std::nullopt);
    if (p) s.limit_precision(*p);
    return s;
}

template <class C>
Series<C> operator*(const Series<C>& a, const Series<C>& b)
{
    return mul(a, b);
}

template <class C>
Series<C> partial_derivative(const Series<C>& f, int k)
{
    using Term = typename Series<C>::Term;
    if (k < 0 || k >= f.nvars()) throw ShapeError("derivative variable out of range");
    std::vector<Term> r;
    for (const auto& t : f.terms()) {
        int e = t.first[k];
        if (e == 0) continue;
        Exponent ne = t.first;
        ne.set(k, e - 1);
        r.emplace_back(ne, t.second * Rational(e));
    }
    Truncation tr = f.truncation();
    if (tr.min_exponent[k] < 0) {
        Exponent lb = tr.min_exponent;
        lb.set(k, lb[k] - 1);
        tr.min_exponent = lb;
    }
    std::optional<int> p;
    if (f.precision()) p = *f.precision() - 1;
    auto s = Series<C>::from_sorted(tr, std::move(r), std::nullopt);
    if (p) s.limit_precision(*p);
    return s;
}

template <class C>
Series<C> truncate_to(const Series<C>& f, int n)
{
    return f.with_max_degree(n);
}

// Multiplication by an exact monomial, computed at a working cutoff.
template <class C>
Series<C> shift(const Series<C>& f, const Exponent& e, const C& c, int cap)
{
    using Term = typename Series<C>::Term;
    Truncation tr = f.truncation();
    tr.max_degree = cap;
    std::vector<Term> r;
    r.reserve(f.terms().size());
    bool over = false;
    const int de = e.degree();
    for (const auto& t : f.terms()) {
        if (t.first.degree() + de > cap) {
            over = true;
            continue;
        }
        r.emplace_back(t.first + e, t.second * c);
        tr.min_exponent = Exponent::min(tr.min_exponent, r.back().first);
    }
    std::optional<int> p;
    if (f.precision()) p = *f.precision() + de;
    if (over) p = detail::min_precision(p, cap);
    auto out = Series<C>::from_terms(tr, std::move(r));
    if (p) out.limit_precision(*p);
    return out;
}

template <class C>
struct UnitDecomposition {
    Exponent monomial;
    C coefficient;
};

// Leading monomial of a unit: the unique term of minimal total degree.
template <class C>
UnitDecomposition<C> unit_decomposition(const Series<C>& f)
{
    if (f.is_zero()) throw UnitError("zero series is not a unit");
    int v = f.valuation();
    if (!f.is_exact() && v > f.certified_degree()) throw UnitError("leading term of series is not certified");
    const typename Series<C>::Term* lead = nullptr;
    for (const auto& t : f.terms()) {
        if (t.first.degree() != v) continue;
        if (lead) throw UnitError("series has no single leading monomial");
        lead = &t;
    }
    C inv;
    try {
        inv = inverse(lead->second);
    } catch (const UnitError&) {
        throw UnitError("leading coefficient is not invertible");
    }
    return {lead->first, lead->second};
}

template <class C>
Series<C> invert_unit(const Series<C>& f)
{
    auto [m, c] = unit_decomposition(f);
    const int n = f.max_degree();
    const int dm = m.degree();
    const C cinv = inverse(c);
    // t = f / (c m) = 1 + h with h of positive degree, needed up to w.
    const int w = n + dm;
    Truncation tr = f.truncation();
    if (w < 0) {
        auto z = Series<C>::from_sorted(tr, {}, std::nullopt);
        z.limit_precision(n);
        return z;
    }
    Series<C> t = shift(f.with_max_degree(std::max(w, f.max_degree())), -m, cinv, w);
    Series<C> h = t - Series<C>::constant(t.truncation(), C(1));
    Series<C> s = Series<C>::constant(t.truncation(), C(1));
    if (!h.is_zero()) {
        // Horner: s = 1 - h (1 - h (1 - ...))
        const int steps = std::max(w, 0);
        for (int k = 0; k < steps; ++k) s = Series<C>::constant(t.truncation(), C(1)) - mul(h, s);
        s.limit_precision(w);
    }
    Series<C> g = shift(s, -m, cinv, n);
    if (f.precision()) g.limit_precision(*f.precision() - 2 * dm);
    Exponent lb = Exponent::min(f.truncation().min_exponent, -m);
    g = g.with_lower_bound(lb);
    return g;
}

template <class C>
Series<C> power(const Series<C>& f, int e)
{
    if (e < 0) return power(invert_unit(f), -e);
    Series<C> r = Series<C>::constant(f.truncation(), C(1));
    Series<C> base = f;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

// Linear relabeling of variables: source variable k becomes target
// variable target[k]; exponents of merged variables add.
struct VariableMap {
    int target_nvars = 0;
    std::vector<int> target;

    // n-variable series placed on block b of a space with nblocks blocks.
    static VariableMap embed(int n, int block, int nblocks)
    {
        VariableMap m{n * nblocks, std::vector<int>(static_cast<std::size_t>(n))};
        for (int k = 0; k < n; ++k) m.target[static_cast<std::size_t>(k)] = block * n + k;
        return m;
    }

    // Source blocks (each of size n) sent to the listed target blocks.
    static VariableMap blocks(int n, const std::vector<int>& target_blocks, int nblocks)
    {
        VariableMap m{n * nblocks, {}};
        for (int b : target_blocks)
            for (int k = 0; k < n; ++k) m.target.push_back(b * n + k);
        return m;
    }

    static VariableMap swap_blocks(int n) { return blocks(n, {1, 0}, 2); }

    // Diagonal restriction: every block collapses onto one n-variable space.
    static VariableMap diagonal(int n, int nblocks)
    {
        VariableMap m{n, {}};
        for (int b = 0; b < nblocks; ++b)
            for (int k = 0; k < n; ++k) m.target.push_back(k);
        return m;
    }
};

template <class C>
Series<C> relabel_blocks(const Series<C>& f, const VariableMap& map)
{
    using Term = typename Series<C>::Term;
    if (static_cast<int>(map.target.size()) != f.nvars())
        throw ShapeError("variable map does not match the series variable count");
    if (map.target_nvars < 0 || map.target_nvars > kMaxVars) throw ShapeError("target variable count out of range");
    for (int t : map.target)
        if (t < 0 || t >= map.target_nvars) throw ShapeError("variable map target out of range");
    std::vector<int> lower(static_cast<std::size_t>(map.target_nvars), 0);
    for (int k = 0; k < f.nvars(); ++k) lower[static_cast<std::size_t>(map.target[static_cast<std::size_t>(k)])] += f.truncation().min_exponent[k];
    Exponent lb;
    for (int t = 0; t < map.target_nvars; ++t) lb.set(t, std::max(lower[static_cast<std::size_t>(t)], -127));
    Truncation tr(map.target_nvars, f.max_degree(), lb);
    std::vector<Term> r;
    r.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        std::vector<int> e(static_cast<std::size_t>(map.target_nvars), 0);
        for (int k = 0; k < f.nvars(); ++k) e[static_cast<std::size_t>(map.target[static_cast<std::size_t>(k)])] += t.first[k];
        r.emplace_back(Exponent(e), t.second);
    }
    auto s = Series<C>::from_sorted(tr, detail::merge_sorted<C>(std::move(r)), std::nullopt);
    if (f.precision()) s.limit_precision(*f.precision());
    return s;
}

namespace detail {

template <class C, class Cf>
C promote(const Cf& c)
{
    if constexpr (std::is_same_v<C, Cf>)
        return c;
    else
        return C(c);
}

template <class C>
struct SubstitutionPlan {
    std::vector<std::vector<std::pair<int, Series<C>>>> powers;
    std::vector<int> suffix_min;
    int cap = 0;

    const Series<C>& power_of(int k, int e) const
    {
        for (const auto& [ex, s] : powers[static_cast<std::size_t>(k)])
            if (ex == e) return s;
        throw Error("internal: missing power");
    }
};

template <class C, class Cf>
void substitute_walk(const Series<Cf>& f, const SubstitutionPlan<C>& plan, std::size_t lo, std::size_t hi, int k,
                     const Series<C>& prefix, std::vector<typename Series<C>::Term>& acc, std::optional<int>& prec)
{
    const int nv = f.nvars();
    if (prefix.is_zero() && prefix.is_exact()) return;
    if (!prefix.is_zero() && prefix.valuation() + plan.suffix_min[static_cast<std::size_t>(k)] > plan.cap) {
        prec = min_precision(prec, plan.cap);
        return;
    }
    if (k == nv) {
        for (std::size_t i = lo; i < hi; ++i) {
            const C cf = promote<C>(f.terms()[i].second);
            for (const auto& t : prefix.terms()) {
                C c = t.second * cf;
                acc.emplace_back(t.first, std::move(c));
            }
        }
        prec = min_precision(prec, prefix.precision());
        return;
    }
    std::size_t i = lo;
    while (i < hi) {
        int e = f.terms()[i].first[k];
        std::size_t j = i + 1;
        while (j < hi && f.terms()[j].first[k] == e) ++j;
        if (e == 0)
            substitute_walk(f, plan, i, j, k + 1, prefix, acc, prec);
        else
            substitute_walk(f, plan, i, j, k + 1, mul(prefix, plan.power_of(k, e)), acc, prec);
        i = j;
    }
}

} // namespace detail

// f(args): one argument per variable of f.  Powers of the arguments are
// shared along a prefix trie of the sorted terms of f.
template <class C, class Cf>
Series<C> substitute(const Series<Cf>& f, const std::vector<Series<C>>& args)
{
    if (static_cast<int>(args.size()) != f.nvars()) throw ShapeError("substitution needs one argument per variable");
    if (args.empty()) {
        throw ShapeError("substitution into a series without variables needs a target space");
    }
    for (const auto& a : args) detail::require_same_shape(args.front(), a);
    const Truncation& target = args.front().truncation();
    const int n = target.max_degree;
    const int nv = f.nvars();

    std::vector<int> emin(static_cast<std::size_t>(nv), 0), emax(static_cast<std::size_t>(nv), 0);
    for (const auto& t : f.terms())
        for (int k = 0; k < nv; ++k) {
            emin[static_cast<std::size_t>(k)] = std::min(emin[static_cast<std::size_t>(k)], t.first[k]);
            emax[static_cast<std::size_t>(k)] = std::max(emax[static_cast<std::size_t>(k)], t.first[k]);
        }

    std::vector<int> val(static_cast<std::size_t>(nv), 0);
    int vmin = std::numeric_limits<int>::max();
    for (int k = 0; k < nv; ++k) {
        const auto& a = args[static_cast<std::size_t>(k)];
        bool used = emin[static_cast<std::size_t>(k)] != 0 || emax[static_cast<std::size_t>(k)] != 0;
        if (!used) continue;
        if (a.is_zero() && a.is_exact()) {
            if (emin[static_cast<std::size_t>(k)] < 0) throw UnitError("negative power of a zero argument");
            val[static_cast<std::size_t>(k)] = std::numeric_limits<int>::max() / 4;
        } else {
            val[static_cast<std::size_t>(k)] = a.valuation();
        }
        vmin = std::min(vmin, val[static_cast<std::size_t>(k)]);
    }

    // Lowest valuation any remaining factor can contribute.
    detail::SubstitutionPlan<C> plan;
    plan.suffix_min.assign(static_cast<std::size_t>(nv) + 1, 0);
    for (int k = nv - 1; k >= 0; --k) {
        long lo = std::min<long>({0L, static_cast<long>(emin[static_cast<std::size_t>(k)]) * val[static_cast<std::size_t>(k)],
                                  static_cast<long>(emax[static_cast<std::size_t>(k)]) * val[static_cast<std::size_t>(k)]});
        plan.suffix_min[static_cast<std::size_t>(k)] = plan.suffix_min[static_cast<std::size_t>(k) + 1] + static_cast<int>(std::max(lo, -100000L));
    }
    plan.cap = n - plan.suffix_min[0];

    plan.powers.resize(static_cast<std::size_t>(nv));
    std::vector<std::vector<int>> needed(static_cast<std::size_t>(nv));
    for (const auto& t : f.terms())
        for (int k = 0; k < nv; ++k)
            if (t.first[k] != 0) needed[static_cast<std::size_t>(k)].push_back(t.first[k]);
    for (int k = 0; k < nv; ++k) {
        auto& nd = needed[static_cast<std::size_t>(k)];
        std::sort(nd.begin(), nd.end());
        nd.erase(std::unique(nd.begin(), nd.end()), nd.end());
        if (nd.empty()) continue;
        Series<C> a = args[static_cast<std::size_t>(k)].with_max_degree(plan.cap);
        auto& pw = plan.powers[static_cast<std::size_t>(k)];
        if (nd.front() < 0) {
            Series<C> inv = invert_unit(a);
            Series<C> cur = inv;
            int e = -1;
            int lowest = nd.front();
            for (; e >= lowest; --e) {
                if (std::binary_search(nd.begin(), nd.end(), e)) pw.emplace_back(e, cur);
                if (e > lowest) cur = mul(cur, inv);
            }
        }
        if (nd.back() > 0) {
            Series<C> cur = a;
            for (int e = 1; e <= nd.back(); ++e) {
                if (std::binary_search(nd.begin(), nd.end(), e)) pw.emplace_back(e, cur);
                if (e < nd.back()) cur = mul(cur, a);
            }
        }
    }

    Truncation wide = target;
    wide.max_degree = plan.cap;
    std::vector<typename Series<C>::Term> acc;
    std::optional<int> prec;
    Series<C> one = Series<C>::constant(wide, C(1));
    detail::substitute_walk(f, plan, 0, f.terms().size(), 0, one, acc, prec);
    Truncation tr = target;
    for (const auto& t : acc) tr.min_exponent = Exponent::min(tr.min_exponent, t.first);
    tr.max_degree = plan.cap;
    auto result = Series<C>::from_sorted(tr, detail::merge_sorted<C>(std::move(acc)), std::nullopt);
    if (prec) result.limit_precision(*prec);
    if (!f.is_exact()) {
        // Unknown terms of f beyond its certified degree.
        if (vmin < 1 || f.has_negative_exponents())
            throw UnsupportedError("truncated series substituted into arguments with a constant or Laurent part");
        long bound = static_cast<long>(f.certified_degree() + 1) * vmin - 1;
        result.limit_precision(static_cast<int>(std::min<long>(bound, n)));
    }
    return result.with_max_degree(n);
}

template <class C>
C evaluate(const Series<C>& f, const std::vector<Rational>& point)
{
    if (static_cast<int>(point.size()) != f.nvars()) throw ShapeError("evaluation point has wrong dimension");
    C total(0);
    for (const auto& t : f.terms()) {
        Rational m = 1;
        for (int k = 0; k < f.nvars(); ++k) {
            int e = t.first[k];
            if (e == 0) continue;
            const Rational& x = point[static_cast<std::size_t>(k)];
            if (e < 0 && fdiff::is_zero(x)) throw DomainError("zero coordinate against a negative exponent");
            Rational p = 1;
            for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= x;
            m *= e < 0 ? inverse(p) : p;
        }
        total += t.second * m;
    }
    return total;
}

// Homogeneous component of total degree d.
template <class C>
Series<C> homogeneous_part(const Series<C>& f, int d)
{
    using Term = typename Series<C>::Term;
    std::vector<Term> r;
    for (const auto& t : f.terms())
        if (t.first.degree() == d) r.push_back(t);
    return Series<C>::from_sorted(f.truncation(), std::move(r), std::nullopt);
}

// Rational series viewed over another coefficient ring.
template <class C>
Series<C> promote_series(const Series<Rational>& f)
{
    if constexpr (std::is_same_v<C, Rational>) {
        return f;
    } else {
        std::vector<typename Series<C>::Term> r;
        r.reserve(f.terms().size());
        for (const auto& t : f.terms()) r.emplace_back(t.first, C(t.second));
        return Series<C>::from_sorted(f.truncation(), std::move(r), f.precision());
    }
}

} // namespace fdiff

#endif
