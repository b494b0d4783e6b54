#ifndef FDIFF_ERROR_HPP
#define FDIFF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fdiff {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched variable counts, truncations or dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Inversion of a series without an invertible leading monomial.
class UnitError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Non-unit determinant, singular linear part, degenerate generators.
class SingularError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Requests beyond the certified degree of a truncated expansion.
class RangeError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

} // namespace fdiff

#endif
