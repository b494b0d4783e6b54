#ifndef FDIFF_COEFF_POLY_HPP
#define FDIFF_COEFF_POLY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "fdiff/rational.hpp"

namespace fdiff {

// Group coordinate x^i_I (symbol 'x'), or another named family such as y^i_I.
struct Indeterminate {
    char symbol = 'x';
    int component = 1;
    std::vector<int> index;

    int degree() const
    {
        int d = 0;
        for (int v : index) d += v;
        return d;
    }

    std::uint64_t key() const;
    static Indeterminate from_key(std::uint64_t key);

    friend bool operator==(const Indeterminate& a, const Indeterminate& b)
    {
        return a.symbol == b.symbol && a.component == b.component && a.index == b.index;
    }
};

using IndeterminateKey = std::uint64_t;

// Sorted (key, power) pairs; powers are nonzero and may be negative.
using Monomial = boost::container::small_vector<std::pair<IndeterminateKey, int>, 4>;

Monomial monomial_product(const Monomial& a, const Monomial& b);

class CoeffPoly {
public:
    using Term = std::pair<Monomial, Rational>;

    CoeffPoly() = default;
    CoeffPoly(const Rational& c);
    CoeffPoly(int c) : CoeffPoly(Rational(c)) {}

    static CoeffPoly indeterminate(const Indeterminate& x, int power = 1);
    static CoeffPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;

    CoeffPoly& operator+=(const CoeffPoly& o);
    CoeffPoly& operator-=(const CoeffPoly& o);
    CoeffPoly& operator*=(const CoeffPoly& o);
    CoeffPoly& operator*=(const Rational& q);

    friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
    friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
    friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);
    friend CoeffPoly operator*(CoeffPoly a, const Rational& q) { return a *= q; }
    friend CoeffPoly operator*(const Rational& q, CoeffPoly a) { return a *= q; }
    CoeffPoly operator-() const;

    friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const CoeffPoly& a, const CoeffPoly& b) { return !(a == b); }

    // Only single-term polynomials are units.
    CoeffPoly inverse() const;

    CoeffPoly derivative(IndeterminateKey x) const;

    Rational evaluate(const std::function<Rational(const Indeterminate&)>& value) const;

    // Substitution of polynomials for indeterminates; unmapped ones are kept.
    CoeffPoly substitute(const std::function<bool(const Indeterminate&, CoeffPoly&)>& value) const;

    std::vector<IndeterminateKey> indeterminates() const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

inline bool is_zero(const CoeffPoly& p) { return p.is_zero(); }
inline CoeffPoly inverse(const CoeffPoly& p) { return p.inverse(); }

std::string indeterminate_name(const Indeterminate& x);

} // namespace fdiff

#endif
