// SPDX-License-Identifier: MIT
//
// Exact exterior solutions. The 2D special Lagrangian family is manufactured
// from a harmonic potential with a prescribed Laurent expansion of its complex
// gradient, rotated back by -vartheta; the named closed forms cover the
// remaining equations and the critical-phase counterexamples.
#pragma once

#include <complex>
#include <vector>

#include "lab/equations.hpp"
#include "lab/potential.hpp"
#include "lab/profile.hpp"

namespace lab {

using Complex = std::complex<double>;

/// h(z) = a1 z + a0 + am1 / z + sum_k tail[k] z^{-(k+2)}.
struct LaurentCoeffs {
    Complex a1{0.0, 0.0};
    Complex a0{0.0, 0.0};
    double am1 = 0.0;           // real, so Re(am1 log z) is single valued
    std::vector<Complex> tail;  // a_{-2}, a_{-3}, ...

    /// Tail capped at 7 terms (a_{-2}..a_{-8}) with |a_{-k}| <= 10.
    void validate() const;
    /// h(z) and h'(z).
    [[nodiscard]] Complex h(Complex z) const;
    [[nodiscard]] Complex dh(Complex z) const;
    /// Primitive W with W' = h (branch: principal log).
    [[nodiscard]] Complex primitive(Complex z) const;
    /// Upper bound of |h'(z) - a1| for |z| >= r.
    [[nodiscard]] double hessian_deviation_bound(double r) const;
};

/// u~ = Re W(x1 + i x2): harmonic, Du~ = (Re h, -Im h).
[[nodiscard]] PotentialFn harmonic_potential(const LaurentCoeffs& coeffs);

/// Exact SLE solution with phase 2 vartheta on {|x| > rho}; rho is the first
/// radius in {1, 2, 4, ...} certified on a 256-point shell.
[[nodiscard]] PotentialFn oracle_sle(const LaurentCoeffs& coeffs, double vartheta);

/// Closed-form route to the same potential, parametrised by the rotated point:
/// x = c x~ - s Du~(x~) and u(x) = sc/2 (|z|^2 - |h|^2) + Re int (c^2 h - s^2 z h') dz.
struct HarmonicRepresentation {
    Vec x;
    double value;
};
[[nodiscard]] HarmonicRepresentation harmonic_representation(const LaurentCoeffs& coeffs, double vartheta,
                                                             const Vec& rotated_point);

/// Predicted A, b, d and log kernel L = I + A^2 of oracle_sle; c is not predicted.
[[nodiscard]] AsymptoticProfile expected_profile(const LaurentCoeffs& coeffs, double vartheta);

/// A~ built from a1: [[Re a1, -Im a1], [-Im a1, -Re a1]].
[[nodiscard]] SymMat laurent_hessian(Complex a1);

// Named closed-form solutions -------------------------------------------------

/// sin(x1) e^{x2}: harmonic, so SLE at the critical phase 0.
[[nodiscard]] PotentialFn sin_exp();
/// (x1^2 + x2^2) e^{x3} - e^{x3} + e^{-x3} / 4: sigma_2 = 1 in 3D.
[[nodiscard]] PotentialFn warren3d();
/// log|x| in dimension 2 or 3.
[[nodiscard]] PotentialFn log_radial(int dim);
/// Nondivergence operator (delta_ij + (n - 2) x_i x_j / |x|^2) v_ij.
[[nodiscard]] double log_radial_operator(const Vec& x, const SymMat& hessian);
/// Radial Monge-Ampere solution with u'(r) = sqrt(r^2 + c):
/// u = (r sqrt(r^2 + c) + c log(r + sqrt(r^2 + c))) / 2.
[[nodiscard]] PotentialFn ma_radial(double c);
/// Inverse harmonic Hessian solution: Legendre transform of |y|^2 / 4 + Re W(y).
/// Needs |a1| < 1/2 - 0.05 so that 0 < D^2 of the dual stays below I.
[[nodiscard]] PotentialFn ihh_oracle(const LaurentCoeffs& coeffs);
/// Predicted profile of ihh_oracle: A = (I/2 + A~)^{-1}, d = -am1, L = A^2.
[[nodiscard]] AsymptoticProfile expected_ihh_profile(const LaurentCoeffs& coeffs);

}  // namespace lab
