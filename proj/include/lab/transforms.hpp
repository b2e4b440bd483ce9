// SPDX-License-Identifier: MIT
//
// Changes of variables on Hessians and on potentials: the U(n) rotation of the
// gradient graph {(x, Du(x))} by an angle vartheta, its inverse, the Legendre
// transform, and the Legendre-Lewy transform used for sigma_2.
#pragma once

#include "lab/equations.hpp"
#include "lab/potential.hpp"

namespace lab {

struct RotationParams {
    double vartheta;
    double c;
    double s;

    explicit RotationParams(double angle);
    /// Angle that brings a supercritical SLE phase down to (n - 2) pi / 2:
    /// vartheta = (theta - (n - 2) pi / 2) / n.
    [[nodiscard]] static RotationParams for_sle(const EquationSpec& spec);
};

/// (-sI + cM)(cI + sM)^{-1}; eigenvalues tan(arctan(lambda_i) - vartheta).
/// Throws SingularRotation when cI + sM is not positive definite.
[[nodiscard]] SymMat rotate_hessian(const SymMat& m, double vartheta);

/// (sI + cM~)(cI - sM~)^{-1}. Throws StripViolation when
/// lambda_max(M~) >= cot(vartheta) - 1e-12.
[[nodiscard]] SymMat unrotate_hessian(const SymMat& mt, double vartheta);

struct RotatedPoint {
    Vec x;  // c x + s Du
    Vec y;  // -s x + c Du
};

[[nodiscard]] RotatedPoint forward_point(const Vec& x, const Vec& gradient, double vartheta);

/// Tolerances of the damped Newton point inversions (relative to 1 + |target|).
struct InversionOptions {
    double tolerance = 1e-12;
    int max_iterations = 100;
};

/// Solves c x + s DP(x) = target for x by damped Newton, starting from the
/// far-field affine predictor when P carries one. Returns the jet of P at x.
/// Throws InverseMapDiverged.
struct InvertedPoint {
    Vec x;
    Jet jet;
    int iterations = 0;
};
[[nodiscard]] InvertedPoint invert_gradient_map(const PotentialFn& p, double c, double s, const Vec& target,
                                                const InversionOptions& opts = {});

/// New potential u~ on the rotated coordinates x~ = c x + s Du(x):
///   u~(x~) = cs/2 (|Du|^2 - |x|^2) - s^2 Du.x + u,  Du~ = -s x + c Du.
/// Requires cI + s D^2P > 0 at every evaluated preimage.
[[nodiscard]] PotentialFn rotate_potential(const PotentialFn& p, double vartheta,
                                           const InversionOptions& opts = {});

/// Rotation by -vartheta; requires lambda_max(D^2 P~) < cot(vartheta).
[[nodiscard]] PotentialFn unrotate_potential(const PotentialFn& pt, double vartheta,
                                             const InversionOptions& opts = {});

/// u*(y) = x.y - u(x) with y = Du(x). Throws NotConvex.
[[nodiscard]] PotentialFn legendre(const PotentialFn& p, const InversionOptions& opts = {});

/// u~(y) = -(w*)(y) with w = u + K|x|^2/2; D^2 u~ = -(D^2u + K I)^{-1}.
/// Throws NotAdmissible when D^2u <= (delta - K) I at a preimage.
[[nodiscard]] PotentialFn legendre_lewy(const PotentialFn& p, const EquationSpec& spec,
                                        const InversionOptions& opts = {});

}  // namespace lab
