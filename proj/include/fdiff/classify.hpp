#ifndef FDIFF_CLASSIFY_HPP
#define FDIFF_CLASSIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdiff/bialgebra.hpp"

namespace fdiff {

enum class MatrixClass { NonnegativeNonsingular, NonnegativeSingular, General };

struct IntegerMatrix {
    int n = 0;
    std::vector<std::vector<long long>> rows;

    IntegerMatrix() = default;
    explicit IntegerMatrix(std::vector<std::vector<long long>> r);
    static IntegerMatrix identity(int n);
    static IntegerMatrix diagonal(const std::vector<long long>& d);

    long long at(int i, int k) const { return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; }
    Integer determinant() const;
    bool nonnegative() const;
    bool symmetric() const;
    MatrixClass classification() const;
    // (n-1)x(n-1) minor with row i and column j removed.
    Integer minor(int i, int j) const;
    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) { return a.rows == b.rows; }
};

enum class Normalization { Raw, Appendix };

Normalization parse_normalization(const std::string& s);
std::string to_string(Normalization n);

GeneratorTuple canonical_generators(const IntegerMatrix& d, int max_degree = 8);
RBiField canonical_rmatrix(const IntegerMatrix& d, Normalization norm, int max_degree = 8);
RBiVector canonical_alpha(const IntegerMatrix& d, Normalization norm, int max_degree = 8);

struct MinorTable {
    int n = 0;
    std::vector<std::vector<Integer>> minors;
    // a[(i*n + j)*n + k] = A^{ij}_k.
    std::vector<Rational> a;
    bool support_ok = true;
    bool consistent = true;
    std::vector<std::string> ambiguities;

    const Rational& coefficient(int i, int j, int k) const
    {
        return a[static_cast<std::size_t>((i * n + j) * n + k)];
    }
};

// A^{ij}_k are read from canonical_rmatrix(d, norm).
MinorTable minor_coefficients(const IntegerMatrix& d, Normalization norm = Normalization::Raw, int max_degree = 8);

RBiField special_orbit_rmatrix(int n, int max_degree = 8);

// Primitive integer k with sum_i k_i d_i = 0 (first nonzero entry positive), if D is singular.
std::optional<std::vector<long long>> degeneracy_kernel(const IntegerMatrix& d);

struct LaurentSample {
    GeneratorTuple generators;
    RBiField phi;
};

LaurentSample laurent_family_sample(const IntegerMatrix& d, std::uint64_t seed, int size_budget);

// Every nonsingular n x n matrix with entries in [0, max_entry], in lexicographic order.
std::vector<IntegerMatrix> nonnegative_corpus(int n, int max_entry);

} // namespace fdiff

#endif
