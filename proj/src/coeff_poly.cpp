#include "fdiff/coeff_poly.hpp"

#include <algorithm>
#include <sstream>

#include "fdiff/error.hpp"

namespace fdiff {

namespace {

constexpr int kMaxIndexDim = 6;

void normalize(std::vector<CoeffPoly::Term>& terms)
{
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        Rational c = std::move(terms[i].second);
        while (j < terms.size() && terms[j].first == terms[i].first) {
            c += terms[j].second;
            ++j;
        }
        if (!fdiff::is_zero(c)) {
            if (out != i) terms[out].first = std::move(terms[i].first);
            terms[out].second = std::move(c);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

} // namespace

std::uint64_t Indeterminate::key() const
{
    if (index.size() > static_cast<std::size_t>(kMaxIndexDim))
        throw RangeError("coordinate multi-index longer than supported");
    if (component < 0 || component > 15) throw RangeError("coordinate component out of range");
    std::uint64_t k = static_cast<std::uint64_t>(static_cast<unsigned char>(symbol)) << 56;
    k |= static_cast<std::uint64_t>(index.size()) << 52;
    k |= static_cast<std::uint64_t>(component) << 48;
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (index[i] < 0 || index[i] > 255) throw RangeError("coordinate index out of range");
        k |= static_cast<std::uint64_t>(index[i]) << (40 - 8 * i);
    }
    return k;
}

Indeterminate Indeterminate::from_key(std::uint64_t key)
{
    Indeterminate x;
    x.symbol = static_cast<char>(key >> 56);
    auto dim = static_cast<std::size_t>((key >> 52) & 0xF);
    x.component = static_cast<int>((key >> 48) & 0xF);
    x.index.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) x.index[i] = static_cast<int>((key >> (40 - 8 * i)) & 0xFF);
    return x;
}

std::string indeterminate_name(const Indeterminate& x)
{
    std::ostringstream os;
    os << x.symbol << x.component << '_';
    for (std::size_t i = 0; i < x.index.size(); ++i) {
        if (i) os << ',';
        os << x.index[i];
    }
    return os.str();
}

Monomial monomial_product(const Monomial& a, const Monomial& b)
{
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else if (b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            int p = a[i].second + b[j].second;
            if (p != 0) r.emplace_back(a[i].first, p);
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

CoeffPoly::CoeffPoly(const Rational& c)
{
    if (!fdiff::is_zero(c)) terms_.emplace_back(Monomial{}, c);
}

CoeffPoly CoeffPoly::indeterminate(const Indeterminate& x, int power)
{
    CoeffPoly p;
    Monomial m;
    if (power != 0) m.emplace_back(x.key(), power);
    p.terms_.emplace_back(std::move(m), Rational(1));
    return p;
}

CoeffPoly CoeffPoly::from_terms(std::vector<Term> terms)
{
    for (auto& t : terms) {
        std::sort(t.first.begin(), t.first.end());
        Monomial merged;
        for (auto& f : t.first) {
            if (!merged.empty() && merged.back().first == f.first)
                merged.back().second += f.second;
            else
                merged.push_back(f);
        }
        Monomial clean;
        for (auto& f : merged)
            if (f.second != 0) clean.push_back(f);
        t.first = std::move(clean);
    }
    normalize(terms);
    CoeffPoly p;
    p.terms_ = std::move(terms);
    return p;
}

bool CoeffPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

Rational CoeffPoly::constant_value() const
{
    if (!terms_.empty() && terms_[0].first.empty()) return terms_[0].second;
    return Rational(0);
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& o)
{
    if (o.terms_.empty()) return *this;
    std::vector<Term> r;
    r.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first < o.terms_[j].first) {
            r.push_back(std::move(terms_[i++]));
        } else if (o.terms_[j].first < terms_[i].first) {
            r.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].second + o.terms_[j].second;
            if (!fdiff::is_zero(c)) r.emplace_back(std::move(terms_[i].first), std::move(c));
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.push_back(std::move(terms_[i]));
    for (; j < o.terms_.size(); ++j) r.push_back(o.terms_[j]);
    terms_ = std::move(r);
    return *this;
}

CoeffPoly CoeffPoly::operator-() const
{
    CoeffPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& o) { return *this += -o; }

CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b)
{
    CoeffPoly r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (b.is_constant()) return a * b.terms_[0].second;
    if (a.is_constant()) return b * a.terms_[0].second;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) r.terms_.emplace_back(monomial_product(ta.first, tb.first), ta.second * tb.second);
    normalize(r.terms_);
    return r;
}

CoeffPoly& CoeffPoly::operator*=(const CoeffPoly& o)
{
    *this = *this * o;
    return *this;
}

CoeffPoly& CoeffPoly::operator*=(const Rational& q)
{
    if (fdiff::is_zero(q)) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= q;
    return *this;
}

CoeffPoly CoeffPoly::inverse() const
{
    if (terms_.size() != 1) throw UnitError("coefficient polynomial is not a unit");
    CoeffPoly r;
    Monomial m;
    for (const auto& f : terms_[0].first) m.emplace_back(f.first, -f.second);
    r.terms_.emplace_back(std::move(m), fdiff::inverse(terms_[0].second));
    return r;
}

CoeffPoly CoeffPoly::derivative(IndeterminateKey x) const
{
    std::vector<Term> r;
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < t.first.size(); ++i) {
            if (t.first[i].first != x) continue;
            int p = t.first[i].second;
            Monomial m = t.first;
            if (p == 1)
                m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
            else
                m[i].second = p - 1;
            r.emplace_back(std::move(m), t.second * p);
        }
    }
    CoeffPoly out;
    out.terms_ = std::move(r);
    normalize(out.terms_);
    return out;
}

Rational CoeffPoly::evaluate(const std::function<Rational(const Indeterminate&)>& value) const
{
    Rational total = 0;
    for (const auto& t : terms_) {
        Rational c = t.second;
        for (const auto& f : t.first) {
            Rational v = value(Indeterminate::from_key(f.first));
            if (f.second < 0 && fdiff::is_zero(v)) throw DomainError("zero value for an inverted coordinate");
            Rational p = 1;
            int e = f.second < 0 ? -f.second : f.second;
            for (int k = 0; k < e; ++k) p *= v;
            c *= f.second < 0 ? fdiff::inverse(p) : p;
        }
        total += c;
    }
    return total;
}

CoeffPoly CoeffPoly::substitute(const std::function<bool(const Indeterminate&, CoeffPoly&)>& value) const
{
    CoeffPoly total;
    for (const auto& t : terms_) {
        CoeffPoly acc(t.second);
        Monomial kept;
        for (const auto& f : t.first) {
            CoeffPoly v;
            if (!value(Indeterminate::from_key(f.first), v)) {
                kept.push_back(f);
                continue;
            }
            CoeffPoly base = f.second < 0 ? v.inverse() : v;
            int e = f.second < 0 ? -f.second : f.second;
            for (int k = 0; k < e; ++k) acc *= base;
        }
        CoeffPoly mono;
        mono.terms_.emplace_back(std::move(kept), Rational(1));
        total += acc * mono;
    }
    return total;
}

std::vector<IndeterminateKey> CoeffPoly::indeterminates() const
{
    std::vector<IndeterminateKey> keys;
    for (const auto& t : terms_)
        for (const auto& f : t.first) keys.push_back(f.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

std::string CoeffPoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.second;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = c == 1 && !t.first.empty();
        if (!unit) os << to_display_string(c);
        bool need_star = !unit;
        for (const auto& f : t.first) {
            if (need_star) os << '*';
            os << indeterminate_name(Indeterminate::from_key(f.first));
            if (f.second != 1) os << '^' << f.second;
            need_star = true;
        }
    }
    return os.str();
}

} // namespace fdiff
