#ifndef FDIFF_EXPONENT_HPP
#define FDIFF_EXPONENT_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <vector>

#include "fdiff/error.hpp"

namespace fdiff {

inline constexpr int kMaxVars = 16;

// Exponent vector of a (Laurent) monomial; unused slots stay zero.
class Exponent {
public:
    Exponent() { e_.fill(0); }
    Exponent(std::initializer_list<int> values)
    {
        e_.fill(0);
        if (values.size() > static_cast<std::size_t>(kMaxVars))
            throw ShapeError("too many variables in exponent");
        int k = 0;
        for (int v : values) set(k++, v);
    }
    explicit Exponent(const std::vector<int>& values)
    {
        e_.fill(0);
        if (values.size() > static_cast<std::size_t>(kMaxVars))
            throw ShapeError("too many variables in exponent");
        for (std::size_t k = 0; k < values.size(); ++k) set(static_cast<int>(k), values[k]);
    }

    int operator[](int k) const { return e_[static_cast<std::size_t>(k)]; }

    void set(int k, int v)
    {
        if (v < -127 || v > 127) throw RangeError("exponent out of representable range");
        e_[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(v);
    }

    int degree() const
    {
        int d = 0;
        for (auto x : e_) d += x;
        return d;
    }

    bool is_zero() const
    {
        for (auto x : e_)
            if (x != 0) return false;
        return true;
    }

    bool has_negative() const
    {
        for (auto x : e_)
            if (x < 0) return true;
        return false;
    }

    friend Exponent operator+(const Exponent& a, const Exponent& b)
    {
        Exponent r;
        for (std::size_t k = 0; k < kMaxVars; ++k) {
            int s = a.e_[k] + b.e_[k];
            if (s < -127 || s > 127) throw RangeError("exponent out of representable range");
            r.e_[k] = static_cast<std::int8_t>(s);
        }
        return r;
    }

    friend Exponent operator-(const Exponent& a)
    {
        Exponent r;
        for (std::size_t k = 0; k < kMaxVars; ++k) r.e_[k] = static_cast<std::int8_t>(-a.e_[k]);
        return r;
    }

    friend Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

    friend bool operator==(const Exponent& a, const Exponent& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }
    friend bool operator<(const Exponent& a, const Exponent& b) { return a.e_ < b.e_; }

    std::vector<int> to_vector(int nvars) const
    {
        std::vector<int> v(static_cast<std::size_t>(nvars));
        for (int k = 0; k < nvars; ++k) v[static_cast<std::size_t>(k)] = e_[static_cast<std::size_t>(k)];
        return v;
    }

    // Componentwise minimum, used to widen lower bounds.
    static Exponent min(const Exponent& a, const Exponent& b)
    {
        Exponent r;
        for (std::size_t k = 0; k < kMaxVars; ++k) r.e_[k] = a.e_[k] < b.e_[k] ? a.e_[k] : b.e_[k];
        return r;
    }

    // Lower-bound sum, saturated at the representable minimum.
    static Exponent bound_sum(const Exponent& a, const Exponent& b)
    {
        Exponent r;
        for (std::size_t k = 0; k < kMaxVars; ++k) {
            int s = a.e_[k] + b.e_[k];
            r.e_[k] = static_cast<std::int8_t>(s < -127 ? -127 : s);
        }
        return r;
    }

    std::size_t hash() const
    {
        static_assert(kMaxVars == 16);
        std::uint64_t w[2];
        std::memcpy(w, e_.data(), sizeof w);
        std::uint64_t h = w[0] * 0x9e3779b97f4a7c15ULL ^ w[1] * 0xc2b2ae3d27d4eb4fULL;
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0x94d049bb133111ebULL ^ (h >> 29));
    }

private:
    std::array<std::int8_t, kMaxVars> e_;
};

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const { return e.hash(); }
};

} // namespace fdiff

#endif
