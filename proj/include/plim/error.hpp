#pragma once

#include <stdexcept>
#include <string>

namespace plim {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// bad input values (x outside [0,1], malformed dots, ...)
struct DomainError : Error {
    using Error::Error;
};

// file / literal syntax problems
struct ParseError : Error {
    using Error::Error;
};

// a cap was hit; carries how far the computation got
struct BudgetError : Error {
    long long reached = 0;
    int attained = 0;
    BudgetError(const std::string& msg, long long reached_, int attained_)
        : Error(msg), reached(reached_), attained(attained_) {}
};

// iteration failed to settle within max_iter
struct ConvergenceError : Error {
    double last_residual = 0;
    ConvergenceError(const std::string& msg, double r) : Error(msg), last_residual(r) {}
};

// caller violated an operation's stated precondition
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace plim
