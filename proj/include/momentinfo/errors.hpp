#pragma once

#include <stdexcept>
#include <string>

namespace momentinfo {

// Hankel moment matrix singular to working precision: the underlying
// distribution has at most n support points.
class DegenerateSupport : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A structural self-check failed (e.g. odd polynomial residue that should
// vanish identically). Indicates a bug in a moment table, not bad data.
class InternalConsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive integration ran out of subdivisions. Carries the partial result.
class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& what, double partial, double err)
        : std::runtime_error(what), partial_value(partial), error_estimate(err) {}
    double partial_value;
    double error_estimate;
};

// Label filtering removed every sample.
class EmptyAfterFilter : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace momentinfo
