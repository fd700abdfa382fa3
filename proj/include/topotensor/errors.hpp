#ifndef TOPOTENSOR_ERRORS_HPP
#define TOPOTENSOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace topotensor {

// Base for all library errors so callers can catch one type at the boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimsError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct ModeError : Error {
    using Error::Error;
};

struct SpecError : Error {
    using Error::Error;
};

struct SymmetryError : Error {
    using Error::Error;
};

struct StrategyError : Error {
    using Error::Error;
};

struct SchemeError : Error {
    using Error::Error;
};

struct ValueError : Error {
    using Error::Error;
};

// File parsing (dten/scpx/config).
struct FormatError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    double best_residual;
    ConvergenceError(const std::string& msg, double best)
        : Error(msg), best_residual(best) {}
};

}  // namespace topotensor

#endif
