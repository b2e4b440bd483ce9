// SPDX-License-Identifier: MIT
#pragma once

#include <optional>

#include "lab/linalg.hpp"

namespace lab {

/// Expansion data of u(x) ~ 1/2 x^T A x + b.x + c + (d/2) log(x^T L x) near
/// infinity. `c` is empty when it is not predicted (only fitted).
struct AsymptoticProfile {
    SymMat A;
    Vec b;
    std::optional<double> c;
    double d = 0.0;
    SymMat L;
    double decay_slope = 0.0;  // -inf when the residual sits below the floor

    /// Evaluates Q + Gamma at x (c taken as 0 when absent).
    [[nodiscard]] double eval(const Vec& x) const;
    /// D(Q + Gamma)(x)
    [[nodiscard]] Vec gradient(const Vec& x) const;
};

}  // namespace lab
