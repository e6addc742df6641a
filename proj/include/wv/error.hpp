#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wv {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical evaluation left the domain of an operation (ln of a non-positive
// value, division through the guard band, singular metric, ...).
struct EvalError : Error {
    explicit EvalError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Sampling or configuration problems (empty box, unsatisfiable constraint, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

} // namespace wv
