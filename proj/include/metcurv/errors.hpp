#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metcurv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed call: wrong element count, unmet precondition on the shape of the input.
class ArgumentError : public Error
{
public:
    using Error::Error;
};

/// Input outside the mathematical domain of an operation. Carries the offending value when there is one.
class DomainError : public Error
{
public:
    explicit DomainError(const std::string& what, double value = 0.0) : Error(what), value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// A distance matrix violating the metric axioms. `i`, `j`, `k` name the first offending triple
/// (for symmetry / diagonal violations `k == j`).
class MetricViolation : public Error
{
public:
    MetricViolation(const std::string& what, std::size_t i, std::size_t j, std::size_t k)
        : Error(what), i_(i), j_(j), k_(k)
    {
    }
    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }
    std::size_t k() const noexcept { return k_; }

private:
    std::size_t i_, j_, k_;
};

/// Exhaustive search refused because the instance is too large.
class CapacityError : public Error
{
public:
    using Error::Error;
};

/// Input so close to a singular configuration that the result would be meaningless.
class IllConditionedError : public Error
{
public:
    using Error::Error;
};

/// A limit extrapolation whose sequence does not settle.
class UnstableEstimateError : public Error
{
public:
    using Error::Error;
};

/// Graph not connected. `a` and `b` are a separated pair.
class ConnectivityError : public Error
{
public:
    ConnectivityError(const std::string& what, std::size_t a, std::size_t b) : Error(what), a_(a), b_(b) {}
    std::size_t a() const noexcept { return a_; }
    std::size_t b() const noexcept { return b_; }

private:
    std::size_t a_, b_;
};

/// Data that cannot come from a metric curve or surface.
class DataError : public Error
{
public:
    using Error::Error;
};

/// File parse failure; `line` is 1-based, 0 when unknown.
class ParseError : public Error
{
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace metcurv
