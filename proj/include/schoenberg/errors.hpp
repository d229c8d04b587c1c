#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schoenberg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A dissimilarity matrix failed the Euclidean (c.n.d.) test: the centered
/// scalar-product matrix has an eigenvalue below the negative tolerance.
class NotEuclideanError : public Error {
public:
    NotEuclideanError(const std::string& what, double offending_eigenvalue)
        : Error(what), offending_eigenvalue_(offending_eigenvalue) {}

    double offending_eigenvalue() const { return offending_eigenvalue_; }

private:
    double offending_eigenvalue_;
};

/// The iterative eigensolver hit its iteration cap.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::size_t order)
        : Error(what), order_(order) {}

    std::size_t order() const { return order_; }

private:
    std::size_t order_;
};

/// Malformed textual input (CSV files, transform specs, grids).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what), line_(0) {}
    ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}

    /// 1-based line number when the source is a file, 0 otherwise.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace schoenberg
