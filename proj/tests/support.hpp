#ifndef FDIFF_TESTS_SUPPORT_HPP
#define FDIFF_TESTS_SUPPORT_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fdiff/classify.hpp"
#include "fdiff/grouppoisson.hpp"
#include "fdiff/homspace.hpp"
#include "fdiff/sampling.hpp"

namespace test {

using namespace fdiff;

inline Rational Q(long p, long q = 1)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

using TermList = std::vector<std::pair<std::vector<int>, Rational>>;

inline RSeries poly(int nvars, int n, const TermList& terms, std::vector<int> lower = {})
{
    if (lower.empty()) lower.assign(static_cast<std::size_t>(nvars), 0);
    Truncation tr(nvars, n, Exponent(lower));
    std::vector<RSeries::Term> t;
    for (const auto& [e, c] : terms) t.emplace_back(Exponent(e), c);
    return RSeries::from_terms(tr, std::move(t));
}

inline RBiField bifield1(const RSeries& s)
{
    RBiField phi = RBiField::square(1, s.max_degree());
    phi.at(0, 0) = s;
    return phi;
}

// Dense expansion of a product of linear forms sum_k c_k x_k, keyed by exponent.
using Dense = std::map<std::vector<int>, Rational>;

inline Dense dense_product(int nvars, const std::vector<std::vector<long>>& forms, const Rational& scale)
{
    Dense acc;
    acc[std::vector<int>(static_cast<std::size_t>(nvars), 0)] = scale;
    for (const auto& f : forms) {
        Dense next;
        for (const auto& [e, c] : acc)
            for (int k = 0; k < nvars; ++k) {
                if (f[static_cast<std::size_t>(k)] == 0) continue;
                auto e2 = e;
                ++e2[static_cast<std::size_t>(k)];
                next[e2] += c * Rational(f[static_cast<std::size_t>(k)]);
            }
        acc.clear();
        for (auto& [e, c] : next)
            if (c != 0) acc[e] = c;
    }
    return acc;
}

inline RSeries from_dense(int n, const Dense& d)
{
    TermList t;
    for (const auto& [e, c] : d) t.emplace_back(e, c);
    const int nv = d.empty() ? 1 : static_cast<int>(d.begin()->first.size());
    return poly(nv, n, t);
}

// ---- n = 1 appendix bracket, enumerating compositions recursively ----

inline CoeffPoly xc(int i)
{
    if (i <= 0) return CoeffPoly();
    return CoeffPoly::indeterminate(Indeterminate{'x', 1, {i}});
}

inline void enumerate_compositions(int total, int parts, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& visit)
{
    if (parts == 0) {
        if (total == 0) visit(cur);
        return;
    }
    for (int s = 1; s <= total - (parts - 1); ++s) {
        cur.push_back(s);
        enumerate_compositions(total - s, parts - 1, cur, visit);
        cur.pop_back();
    }
}

inline CoeffPoly composition_sum(int total, int parts)
{
    CoeffPoly r;
    std::vector<int> cur;
    enumerate_compositions(total, parts, cur, [&](const std::vector<int>& s) {
        CoeffPoly m(1);
        for (int k : s) m *= xc(k);
        r += m;
    });
    return r;
}

inline CoeffPoly appendix_n1(int i, int j, int d)
{
    return Rational((i - d) * j) * xc(j) * xc(i - d) - Rational(i * (j - d)) * xc(i) * xc(j - d) +
           xc(i) * composition_sum(j, d + 1) - xc(j) * composition_sum(i, d + 1);
}

// ---- n = 2 appendix brackets, enumerating pair compositions ----

inline CoeffPoly xp(int comp, long i1, long i2)
{
    if (i1 < 0 || i2 < 0) return CoeffPoly();
    return CoeffPoly::indeterminate(Indeterminate{'x', comp, {static_cast<int>(i1), static_cast<int>(i2)}});
}

// Sum over ordered tuples of p index pairs for x^1 and q for x^2 adding up to (m1, m2).
inline CoeffPoly pair_partitions(long p, long q, int m1, int m2)
{
    CoeffPoly r;
    const int parts = static_cast<int>(p + q);
    std::vector<std::pair<int, int>> cur;
    std::function<void(int, int)> rec = [&](int r1, int r2) {
        if (static_cast<int>(cur.size()) == parts) {
            if (r1 != 0 || r2 != 0) return;
            CoeffPoly m(1);
            for (int k = 0; k < parts; ++k) m *= xp(k < p ? 1 : 2, cur[static_cast<std::size_t>(k)].first, cur[static_cast<std::size_t>(k)].second);
            r += m;
            return;
        }
        for (int s = 0; s <= r1; ++s)
            for (int t = 0; t <= r2; ++t) {
                cur.emplace_back(s, t);
                rec(r1 - s, r2 - t);
                cur.pop_back();
            }
    };
    rec(m1, m2);
    return r;
}

struct N2Parts {
    CoeffPoly two;
    CoeffPoly partition;
};

// The three displayed families, transcribed term by term.
inline N2Parts appendix_n2(int p, int q, long a, long b, long c, long d, int m1, int m2, int n1, int n2)
{
    const long det = a * d - b * c;
    auto R = [](long v) { return Rational(v); };
    auto P = [](long s, long t, int e1, int e2) { return pair_partitions(s, t, e1, e2); };
    N2Parts r;
    r.two = R((b - d) * n1 + (c - a) * n2) *
                (R(d * m1 - c * m2 - det) * xp(p, m1 - a, m2 - b) * xp(q, n1, n2) +
                 R(-b * m1 + a * m2 - det) * xp(p, m1 - c, m2 - d) * xp(q, n1, n2)) +
            R((b - d) * m1 + (c - a) * m2) *
                (R(-d * n1 + c * n2 + det) * xp(p, m1, m2) * xp(q, n1 - a, n2 - b) +
                 R(b * n1 - a * n2 + det) * xp(p, m1, m2) * xp(q, n1 - c, n2 - d));
    if (p == 1 && q == 1) {
        r.partition = R(d * (b - d)) * xp(1, n1, n2) * P(a + 1, b, m1, m2) - R(d * (b - d)) * xp(1, m1, m2) * P(a + 1, b, n1, n2) -
                      R(b * (b - d)) * xp(1, n1, n2) * P(c + 1, d, m1, m2) + R(b * (b - d)) * xp(1, m1, m2) * P(c + 1, d, n1, n2);
    } else if (p == 1 && q == 2) {
        r.partition = R(c * (b - d)) * xp(1, m1, m2) * P(a, b + 1, n1, n2) - R(a * (b - d)) * xp(1, m1, m2) * P(c, d + 1, n1, n2) +
                      R(d * (c - a)) * xp(2, n1, n2) * P(a + 1, b, m1, m2) - R(b * (c - a)) * xp(2, n1, n2) * P(c + 1, d, m1, m2);
    } else {
        r.partition = R(c * (a - c)) * xp(2, n1, n2) * P(a, b + 1, m1, m2) - R(c * (a - c)) * xp(2, m1, m2) * P(a, b + 1, n1, n2) -
                      R(a * (c - a)) * xp(2, n1, n2) * P(c, d + 1, m1, m2) + R(a * (c - a)) * xp(2, m1, m2) * P(c, d + 1, n1, n2);
    }
    return r;
}

// Printed families with the partition signs that the 1<->2 swap symmetry forces.
inline CoeffPoly appendix_n2_sign_fixed(int p, int q, long a, long b, long c, long d, int m1, int m2, int n1, int n2)
{
    N2Parts r = appendix_n2(p, q, a, b, c, d, m1, m2, n1, n2);
    if (p == 1) return r.two - r.partition;
    auto P = [](long s, long t, int e1, int e2) { return pair_partitions(s, t, e1, e2); };
    const CoeffPoly cterms = Rational(c * (a - c)) * xp(2, n1, n2) * P(a, b + 1, m1, m2) -
                             Rational(c * (a - c)) * xp(2, m1, m2) * P(a, b + 1, n1, n2);
    return r.two + r.partition - Rational(2) * cterms;
}

// ---- n = 2 displayed r-matrix, built from explicit monomial lists ----

inline RBiField appendix_n2_rmatrix(long a, long b, long c, long d, int n)
{
    const int A = static_cast<int>(a), B = static_cast<int>(b), C = static_cast<int>(c), D = static_cast<int>(d);
    auto R = [](long v) { return Rational(v); };
    RBiField phi = RBiField::square(2, n);
    // u^1v^1{(b-d)d[U_ab - V_ab] - (b-d)b[U_cd - V_cd]}
    phi.at(0, 0) = poly(4, n, {{{1 + A, B, 1, 0}, R((b - d) * d)}, {{1, 0, 1 + A, B}, R(-(b - d) * d)},
                               {{1 + C, D, 1, 0}, R(-(b - d) * b)}, {{1, 0, 1 + C, D}, R((b - d) * b)}});
    // u^1v^2{(b-d)[c V_ab - a V_cd] + (c-a)[d U_ab - b U_cd]}
    phi.at(0, 1) = poly(4, n, {{{1, 0, A, 1 + B}, R((b - d) * c)}, {{1, 0, C, 1 + D}, R(-(b - d) * a)},
                               {{1 + A, B, 0, 1}, R((c - a) * d)}, {{1 + C, D, 0, 1}, R(-(c - a) * b)}});
    // u^2v^1{(c-a)[-d V_ab + b V_cd] + (b-d)[-c U_ab + a U_cd]}
    phi.at(1, 0) = poly(4, n, {{{0, 1, 1 + A, B}, R(-(c - a) * d)}, {{0, 1, 1 + C, D}, R((c - a) * b)},
                               {{A, 1 + B, 1, 0}, R(-(b - d) * c)}, {{C, 1 + D, 1, 0}, R((b - d) * a)}});
    // u^2v^2{(a-c)c[U_ab - V_ab] - (a-c)a[U_cd - V_cd]}
    phi.at(1, 1) = poly(4, n, {{{A, 1 + B, 0, 1}, R((a - c) * c)}, {{0, 1, A, 1 + B}, R(-(a - c) * c)},
                               {{C, 1 + D, 0, 1}, R(-(a - c) * a)}, {{0, 1, C, 1 + D}, R((a - c) * a)}});
    return phi;
}

// {u^1,u^2} = u^1u^2[(u^1)^d(u^2)^c - (u^1)^b(u^2)^a]
inline RSeries appendix_n2_alpha(long a, long b, long c, long d, int n)
{
    return poly(2, n, {{{1 + static_cast<int>(d), 1 + static_cast<int>(c)}, Q(1)},
                       {{1 + static_cast<int>(b), 1 + static_cast<int>(a)}, Q(-1)}});
}

// Diagonal n = 3 display: {u^1,u^2} = c u^1u^2[(u^2)^b - (u^1)^a], and cyclically.
inline RBiVector appendix_n3_diagonal_alpha(int a, int b, int c, int n)
{
    RBiVector r(3, Truncation(3, n));
    r.at(0, 1) = poly(3, n, {{{1, 1 + b, 0}, Q(c)}, {{1 + a, 1, 0}, Q(-c)}});
    r.at(0, 2) = poly(3, n, {{{1, 0, 1 + c}, Q(b)}, {{1 + a, 0, 1}, Q(-b)}});
    r.at(1, 2) = poly(3, n, {{{0, 1, 1 + c}, Q(a)}, {{0, 1 + b, 1}, Q(-a)}});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j) r.at(i, j) = -r.at(j, i);
    return r;
}

// Constant lambda with x = lambda * y componentwise, if one exists.
inline std::optional<Rational> proportionality(const std::vector<RSeries>& x, const std::vector<RSeries>& y)
{
    std::optional<Rational> lambda;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (y[k].is_zero()) {
            if (!x[k].is_zero()) return std::nullopt;
            continue;
        }
        const auto& t = y[k].terms().front();
        Rational l = x[k].coefficient(t.first) / t.second;
        if (lambda && *lambda != l) return std::nullopt;
        lambda = l;
        if (x[k] != scale(y[k], l)) return std::nullopt;
    }
    return lambda;
}

} // namespace test

#endif
