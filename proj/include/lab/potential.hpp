// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "lab/linalg.hpp"

namespace lab {

/// Value, gradient and Hessian of a potential at one point.
struct Jet {
    double value = 0.0;
    Vec gradient;
    SymMat hessian;
};

/// Affine model Du(x) ~ H x + g of the gradient far from the origin. Used to
/// seed the point-inversion Newton iterations of the transforms.
struct AffineGradient {
    SymMat hessian;
    Vec offset;
};

/// An evaluable scalar potential on the exterior of a ball {|x| > inner_radius}.
///
/// Instances are immutable; copies share the evaluator, which must itself be
/// free of mutable state so concurrent evaluation is safe.
class PotentialFn {
public:
    using Evaluator = std::function<Jet(const Vec&)>;

    PotentialFn(int dim, double inner_radius, Evaluator eval, std::optional<AffineGradient> far_field = std::nullopt,
                std::string label = {});

    [[nodiscard]] Jet eval(const Vec& x) const { return (*eval_)(x); }
    [[nodiscard]] double value(const Vec& x) const { return eval(x).value; }
    [[nodiscard]] Vec gradient(const Vec& x) const { return eval(x).gradient; }
    [[nodiscard]] SymMat hessian(const Vec& x) const { return eval(x).hessian; }

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double inner_radius() const noexcept { return inner_radius_; }
    [[nodiscard]] const std::optional<AffineGradient>& far_field() const noexcept { return far_field_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

    /// Same evaluator on a smaller exterior set.
    [[nodiscard]] PotentialFn with_inner_radius(double rho) const;
    /// P + other (same dimension); far-field models add when both exist.
    [[nodiscard]] PotentialFn plus(const PotentialFn& other) const;
    /// s * P
    [[nodiscard]] PotentialFn scaled(double s) const;

private:
    int dim_;
    double inner_radius_;
    std::shared_ptr<const Evaluator> eval_;
    std::optional<AffineGradient> far_field_;
    std::string label_;
};

/// Quadratic 1/2 x^T A x + b.x + c on all of R^n.
[[nodiscard]] PotentialFn make_quadratic(const SymMat& a, const Vec& b, double c);

}  // namespace lab
