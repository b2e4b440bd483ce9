// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lab {

enum class ErrorKind {
    SingularHessian,
    WrongDimension,
    NotAdmissible,
    SingularRotation,
    StripViolation,
    InverseMapDiverged,
    NotConvex,
    NoDecay,
    IllConditioned,
    NonPositiveValue,
    DidNotConverge,
    InadmissibleIterate,
    UnknownName,
    BadParams,
    ConfigError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// True for outcomes where the mathematics says no (the CLI exits with 1),
/// false for malformed input (exit 2).
[[nodiscard]] bool is_numerical(ErrorKind kind) noexcept;

class LabError : public std::runtime_error {
public:
    LabError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    /// Message without the kind prefix.
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace lab
