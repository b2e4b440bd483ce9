// SPDX-License-Identifier: MIT
//
// Profile extraction at infinity: Hessian limit, quadratic + log fit, decay
// slopes, and the boundary-integral formula for the log coefficient.
#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "lab/equations.hpp"
#include "lab/kernels.hpp"
#include "lab/potential.hpp"
#include "lab/profile.hpp"

namespace lab {

inline constexpr double kNoDecaySlope = -std::numeric_limits<double>::infinity();
/// Residuals at or below this are treated as exact.
inline constexpr double kResidualFloor = 1e-12;

struct ShellSpec {
    std::vector<double> radii;
    int points_per_shell = 64;
    double angle_offset = 0.0;  // rotates every equiangular shell (2D)

    /// Radii strictly increasing and > inner_radius; at least 32 points.
    void validate(double inner_radius) const;
    [[nodiscard]] std::vector<Vec> points(int dim, std::size_t shell) const;
};

/// Smooth, simple, positively oriented closed curve on [0, 2 pi).
class BoundaryCurve {
public:
    using Map = std::function<Vec(double)>;

    BoundaryCurve(Map point, Map tangent, int order = 512);

    [[nodiscard]] static BoundaryCurve circle(double radius, const Vec& center = Vec::zero(2), int order = 512);
    /// Semi-axes along the frame rotated by `angle`.
    [[nodiscard]] static BoundaryCurve ellipse(double semi_a, double semi_b, double angle = 0.0,
                                               const Vec& center = Vec::zero(2), int order = 512);

    [[nodiscard]] Vec point(double t) const { return point_(t); }
    [[nodiscard]] Vec tangent(double t) const { return tangent_(t); }
    [[nodiscard]] int order() const noexcept { return order_; }
    /// 1/2 closed integral of (x dy - y dx), trapezoid rule at `order` nodes.
    [[nodiscard]] double enclosed_area() const noexcept { return area_; }
    [[nodiscard]] double node(int k) const noexcept;

private:
    Map point_;
    Map tangent_;
    int order_;
    double area_ = 0.0;
};

struct HessianLimit {
    SymMat A;
    double slope = 0.0;                  // kNoDecaySlope when below the floor
    std::vector<double> shell_residuals;  // max ||D^2 P - A||_F per shell
};

/// A = mean of D^2 P over the outermost shell.
[[nodiscard]] HessianLimit hessian_limit(const PotentialFn& p, const ShellSpec& shells, Exec exec = Exec::Parallel);

/// Log kernel L for the equation: SLE I + A^2, MA A, IHH A^2.
[[nodiscard]] SymMat log_kernel(const EquationSpec& spec, const SymMat& a);

/// A from hessian_limit, then least squares for (b, c, d); d is fitted only in 2D.
[[nodiscard]] AsymptoticProfile fit_profile(const PotentialFn& p, const EquationSpec& spec, const ShellSpec& shells,
                                            Exec exec = Exec::Parallel);

/// Least-squares slope of log value against log r; needs >= 3 distinct radii.
[[nodiscard]] double decay_exponent(const std::vector<std::pair<double, double>>& samples);

/// Per-shell maxima of `measure` and their log-log slope (kNoDecaySlope when
/// fewer than two shells stay above the floor).
struct ShellDecay {
    std::vector<double> radii;
    std::vector<double> maxima;
    double slope = 0.0;
};
[[nodiscard]] ShellDecay shell_decay(const PotentialFn& p, const ShellSpec& shells,
                                     const std::function<double(const Vec&, const Jet&)>& measure,
                                     Exec exec = Exec::Parallel);

/// Coefficients (alpha, beta, rhs) of the 2D divergence form
/// alpha u_nu + beta u_1 (u_22, -u_12).nu integrated against rhs |Omega|.
struct DivergenceForm {
    double alpha;
    double beta;
    double rhs;
};
[[nodiscard]] DivergenceForm divergence_form(const EquationSpec& spec);

/// d = (closed integral - area term) / (2 pi), composite trapezoid rule.
[[nodiscard]] double boundary_d(const EquationSpec& spec, const PotentialFn& p, const BoundaryCurve& curve);

/// Linearized flux of Gamma = (d/2) log x^T L x through {x^T L x = R^2};
/// the identity says it equals 2 pi d.
[[nodiscard]] double flux_identity(const EquationSpec& spec, const SymMat& a, const Vec& b, double d, double radius,
                                   int order = 512);

}  // namespace lab
