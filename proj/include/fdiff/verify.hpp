#ifndef FDIFF_VERIFY_HPP
#define FDIFF_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdiff/classify.hpp"
#include "fdiff/grouppoisson.hpp"
#include "fdiff/io.hpp"

namespace fdiff {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::optional<int> certified_degree;
    std::string detail;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* first_failure() const;
};

const std::vector<std::string>& suite_names();

// scope: {"all"} or a list of suite names.
VerifyReport verify_suite(const std::vector<std::string>& scope, std::uint64_t seed);

// Named invariants of a single r-matrix: skew, cybe, cyclic-symmetry,
// alpha-jacobi, and weak-diagonal when n = 1.
VerifyReport verify_rmatrix(const RBiField& phi);

Json to_json(const VerifyReport& r);
std::string to_text(const VerifyReport& r);

namespace golden {

// {x_i, x_j}_d on G_01, partition sums read as compositions into positive parts.
CoeffPoly n1_bracket(int i, int j, int d);

// {x^p_m, x^q_n} for D = [[a,b],[c,d]], with (p,q) in {(1,1),(1,2),(2,2)},
// signs of the partition terms as forced by the coordinate swap symmetry.
CoeffPoly n2_bracket(int p, int q, const IntegerMatrix& d, const std::vector<int>& m, const std::vector<int>& n);

// Displayed n = 2 r-matrix for D = [[a,b],[c,d]].
RBiField n2_rmatrix(const IntegerMatrix& d, int max_degree);

} // namespace golden

} // namespace fdiff

#endif
