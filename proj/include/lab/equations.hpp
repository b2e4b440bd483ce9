// SPDX-License-Identifier: MIT
//
// The four Hessian operators: special Lagrangian (SLE), Monge-Ampere (MA),
// quadratic Hessian sigma_2 (SIGMA2) and inverse harmonic Hessian (IHH).
#pragma once

#include <string>
#include <string_view>

#include "lab/linalg.hpp"

namespace lab {

enum class EquationKind { SLE, MA, SIGMA2, IHH };

[[nodiscard]] std::string_view to_string(EquationKind kind) noexcept;
[[nodiscard]] EquationKind parse_equation_kind(std::string_view name);  // "sle", "ma", "sigma2", "ihh"

struct EquationSpec {
    EquationKind kind = EquationKind::SLE;
    int dim = 2;
    double theta = 0.0;  // SLE phase
    double delta = 0.0;  // SIGMA2 lower-bound margin

    [[nodiscard]] static EquationSpec sle(int dim, double theta);
    [[nodiscard]] static EquationSpec ma(int dim);
    [[nodiscard]] static EquationSpec sigma2(int dim, double delta);
    [[nodiscard]] static EquationSpec ihh(int dim);

    /// |theta| > (dim - 2) pi / 2; false for every kind but SLE.
    [[nodiscard]] bool supercritical() const noexcept;
    /// Throws BadParams when the invariants of the kind do not hold.
    void validate() const;
};

/// Coefficient matrix F_{M_ij}(M) of the linearised operator.
struct LinearizedCoeffs {
    SymMat a;
};

/// K = sqrt(2 / (n (n - 1))), the shift of the sigma_2 admissible cone.
[[nodiscard]] double sigma2_shift(int dim);
[[nodiscard]] double sigma2(const SymMat& m);

/// SLE: phase - theta; MA: det - 1; SIGMA2: sigma_2 - 1; IHH: sum 1/lambda - 1.
[[nodiscard]] double residual(const EquationSpec& spec, const SymMat& m);

/// +1, or -1 for IHH: oriented_residual = orientation * residual has
/// derivative <linearization, E> in every direction E.
[[nodiscard]] double orientation(const EquationSpec& spec) noexcept;
[[nodiscard]] double oriented_residual(const EquationSpec& spec, const SymMat& m);

/// 2D algebraic forms: SLE cos(theta) tr M + sin(theta) (det M - 1);
/// IHH tr M - det M.
[[nodiscard]] double residual_algebraic_2d(const EquationSpec& spec, const SymMat& m);

/// Both the trigonometric and the algebraic SLE residuals vanish. The
/// algebraic form alone only fixes the phase modulo pi.
[[nodiscard]] bool forms_consistent(const SymMat& m, double theta, double tol = 1e-10);

[[nodiscard]] LinearizedCoeffs linearization(const EquationSpec& spec, const SymMat& m);

[[nodiscard]] bool admissible(const EquationSpec& spec, const SymMat& m);

}  // namespace lab
