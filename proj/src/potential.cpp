// SPDX-License-Identifier: MIT
#include "lab/potential.hpp"

#include <algorithm>

#include "lab/error.hpp"

namespace lab {

PotentialFn::PotentialFn(int dim, double inner_radius, Evaluator eval, std::optional<AffineGradient> far_field,
                         std::string label)
    : dim_(dim),
      inner_radius_(inner_radius),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      far_field_(std::move(far_field)),
      label_(std::move(label)) {
    require_dim(dim);
    if (!(inner_radius >= 0.0)) throw LabError(ErrorKind::BadParams, "inner radius must be >= 0");
}

PotentialFn PotentialFn::with_inner_radius(double rho) const {
    PotentialFn p = *this;
    if (!(rho >= 0.0)) throw LabError(ErrorKind::BadParams, "inner radius must be >= 0");
    p.inner_radius_ = rho;
    return p;
}

PotentialFn PotentialFn::plus(const PotentialFn& other) const {
    if (other.dim() != dim_) throw LabError(ErrorKind::WrongDimension, "potential dimensions differ");
    std::optional<AffineGradient> ff;
    if (far_field_ && other.far_field_) {
        ff = AffineGradient{far_field_->hessian + other.far_field_->hessian, far_field_->offset + other.far_field_->offset};
    }
    auto a = eval_;
    auto b = other.eval_;
    return PotentialFn(
        dim_, std::max(inner_radius_, other.inner_radius_),
        [a, b](const Vec& x) {
            Jet ja = (*a)(x);
            Jet jb = (*b)(x);
            return Jet{ja.value + jb.value, ja.gradient + jb.gradient, ja.hessian + jb.hessian};
        },
        ff, label_ + "+" + other.label_);
}

PotentialFn PotentialFn::scaled(double s) const {
    std::optional<AffineGradient> ff;
    if (far_field_) ff = AffineGradient{s * far_field_->hessian, s * far_field_->offset};
    auto a = eval_;
    return PotentialFn(
        dim_, inner_radius_,
        [a, s](const Vec& x) {
            Jet j = (*a)(x);
            return Jet{s * j.value, s * j.gradient, s * j.hessian};
        },
        ff, label_);
}

PotentialFn make_quadratic(const SymMat& a, const Vec& b, double c) {
    if (a.dim() != b.dim()) throw LabError(ErrorKind::WrongDimension, "quadratic: A and b dimensions differ");
    return PotentialFn(
        a.dim(), 0.0,
        [a, b, c](const Vec& x) {
            const Vec ax = a * x;
            return Jet{0.5 * dot(x, ax) + dot(b, x) + c, ax + b, a};
        },
        AffineGradient{a, b}, "quadratic");
}

}  // namespace lab
