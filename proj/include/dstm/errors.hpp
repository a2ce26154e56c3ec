// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dstm {

/// Operand shapes are incompatible (matmul, trace of a non-square matrix, ...).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain where an evaluation is trustworthy.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A pivot below -tol was met while factoring a supposedly PSD matrix.
struct NotPsdError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The model produced something it promises never to produce
/// (non-PD determinant argument, non-Hermitian covariance, ...).
struct ModelViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration value. `field` names the offending parameter.
struct ConfigError : std::invalid_argument {
    ConfigError(std::string field_name, const std::string& what)
        : std::invalid_argument(field_name + ": " + what), field(std::move(field_name)) {}
    std::string field;
};

struct FullDiversityViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace dstm
