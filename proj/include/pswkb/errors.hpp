#pragma once

#include <stdexcept>
#include <string>

namespace pswkb {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad argument or violated precondition (maps to CLI exit code 2).
struct precondition_error : error {
    using error::error;
};

struct domain_error : precondition_error {
    using precondition_error::precondition_error;
};

struct incompatible_grids_error : precondition_error {
    using precondition_error::precondition_error;
};

struct out_of_window_error : precondition_error {
    using precondition_error::precondition_error;
};

struct unsupported_error : precondition_error {
    using precondition_error::precondition_error;
};

struct coverage_error : precondition_error {
    using precondition_error::precondition_error;
};

struct config_error : precondition_error {
    using precondition_error::precondition_error;
};

// Numerical failure of an otherwise well-posed computation (CLI exit code 3).
struct numerical_error : error {
    using error::error;
};

struct quantization_error : numerical_error {
    using numerical_error::numerical_error;
};

struct matching_error : numerical_error {
    double residual = 0.0;
    matching_error(const std::string& what, double res)
        : numerical_error(what), residual(res) {}
};

struct validity_error : precondition_error {
    using precondition_error::precondition_error;
};

struct degenerate_turning_point_error : precondition_error {
    using precondition_error::precondition_error;
};

} // namespace pswkb
