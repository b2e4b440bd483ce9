// SPDX-License-Identifier: MIT
#include "lab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lab/error.hpp"
#include "lab/sampling.hpp"

namespace lab {

RotationParams::RotationParams(double angle) : vartheta(angle), c(std::cos(angle)), s(std::sin(angle)) {}

RotationParams RotationParams::for_sle(const EquationSpec& spec) {
    if (spec.kind != EquationKind::SLE || !spec.supercritical())
        throw LabError(ErrorKind::NotAdmissible, "rotation angle needs a supercritical SLE phase");
    const double t = std::abs(spec.theta);
    return RotationParams((t - (spec.dim - 2) * kPi / 2.0) / spec.dim);
}

SymMat rotate_hessian(const SymMat& m, double vartheta) {
    const double c = std::cos(vartheta), s = std::sin(vartheta);
    const EigenDecomposition e = eig_sym(m);
    SymMat out(m.dim());
    for (int k = 0; k < m.dim(); ++k) {
        const double denom = c + s * e.values[k];
        if (denom < 1e-12) throw LabError(ErrorKind::SingularRotation, "cI + sM is not positive definite");
        out += ((c * e.values[k] - s) / denom) * SymMat::outer(e.vectors[static_cast<std::size_t>(k)]);
    }
    return out;
}

SymMat unrotate_hessian(const SymMat& mt, double vartheta) {
    const double c = std::cos(vartheta), s = std::sin(vartheta);
    const EigenDecomposition e = eig_sym(mt);
    SymMat out(mt.dim());
    for (int k = 0; k < mt.dim(); ++k) {
        const double denom = c - s * e.values[k];
        if (denom < 1e-12 * std::abs(s))
            throw LabError(ErrorKind::StripViolation, "lambda_max(D^2 u~) >= cot(vartheta): strip bound fails");
        out += ((s + c * e.values[k]) / denom) * SymMat::outer(e.vectors[static_cast<std::size_t>(k)]);
    }
    return out;
}

RotatedPoint forward_point(const Vec& x, const Vec& gradient, double vartheta) {
    const double c = std::cos(vartheta), s = std::sin(vartheta);
    return {c * x + s * gradient, -s * x + c * gradient};
}

namespace {

// Jacobian of x -> c x + s Du(x).
SymMat map_jacobian(const SymMat& hess, double c, double s) {
    return c * SymMat::identity(hess.dim()) + s * hess;
}

std::optional<Vec> predictor(const PotentialFn& p, double c, double s, const Vec& target) {
    const auto& ff = p.far_field();
    if (!ff) return std::nullopt;
    try {
        return inverse(map_jacobian(ff->hessian, c, s)) * (target - s * ff->offset);
    } catch (const LabError&) {
        return std::nullopt;
    }
}

struct Trial {
    bool ok = false;
    Jet jet;
    Vec residual;
    double norm = 0.0;
};

Trial try_eval(const PotentialFn& p, double c, double s, const Vec& x, const Vec& target) {
    Trial t;
    try {
        t.jet = p.eval(x);
    } catch (const LabError&) {
        return t;
    }
    t.residual = c * x + s * t.jet.gradient - target;
    t.norm = t.residual.norm();
    t.ok = std::isfinite(t.norm);
    return t;
}

// Image radius of the sphere |x| = rho under x -> c x + s Du(x); everything
// outside it lies in the image of the exterior domain.
double image_radius(const PotentialFn& p, double c, double s) {
    if (p.inner_radius() == 0.0) return 0.0;
    const int n = p.dim() == 2 ? 256 : 400;
    double r = 0.0;
    for (const Vec& x : sphere_points(p.dim(), p.inner_radius(), n)) {
        try {
            const Jet j = p.eval(x);
            r = std::max(r, (c * x + s * j.gradient).norm());
        } catch (const LabError&) {
        }
    }
    return r;
}

std::optional<AffineGradient> rotated_far_field(const PotentialFn& p, double vartheta) {
    const auto& ff = p.far_field();
    if (!ff) return std::nullopt;
    const double c = std::cos(vartheta), s = std::sin(vartheta);
    try {
        const SymMat h = vartheta >= 0.0 ? rotate_hessian(ff->hessian, vartheta)
                                         : unrotate_hessian(ff->hessian, -vartheta);
        return AffineGradient{h, c * ff->offset - s * (h * ff->offset)};
    } catch (const LabError&) {
        return std::nullopt;
    }
}

// Shared by rotate_potential (angle > 0) and unrotate_potential (angle < 0).
PotentialFn rotate_signed(const PotentialFn& p, double angle, const InversionOptions& opts) {
    const double c = std::cos(angle), s = std::sin(angle);
    auto evaluator = [p, angle, c, s, opts](const Vec& xt) {
        const InvertedPoint ip = invert_gradient_map(p, c, s, xt, opts);
        const Vec& x = ip.x;
        const Vec& du = ip.jet.gradient;
        Jet out;
        out.value = 0.5 * c * s * (du.norm_sq() - x.norm_sq()) - s * s * dot(du, x) + ip.jet.value;
        out.gradient = -s * x + c * du;
        out.hessian = angle >= 0.0 ? rotate_hessian(ip.jet.hessian, angle) : unrotate_hessian(ip.jet.hessian, -angle);
        return out;
    };
    return PotentialFn(p.dim(), image_radius(p, c, s), evaluator, rotated_far_field(p, angle),
                       "rot(" + p.label() + ")");
}

}  // namespace

InvertedPoint invert_gradient_map(const PotentialFn& p, double c, double s, const Vec& target,
                                  const InversionOptions& opts) {
    const double tol = opts.tolerance * (1.0 + target.norm());
    std::optional<Vec> x0 = predictor(p, c, s, target);
    Trial cur;
    Vec x = target;
    if (x0) {
        cur = try_eval(p, c, s, *x0, target);
        if (cur.ok) x = *x0;
    }
    if (!cur.ok) {
        x = target;
        cur = try_eval(p, c, s, x, target);
    }
    if (!cur.ok) throw LabError(ErrorKind::InverseMapDiverged, "potential not evaluable at the initial guess");

    for (int it = 0; it <= opts.max_iterations; ++it) {
        if (cur.norm <= tol) return {x, cur.jet, it};
        Vec step;
        try {
            step = -(inverse(map_jacobian(cur.jet.hessian, c, s)) * cur.residual);
        } catch (const LabError&) {
            throw LabError(ErrorKind::InverseMapDiverged, "singular Jacobian in point inversion");
        }
        double alpha = 1.0;
        bool accepted = false;
        for (int half = 0; half < 40; ++half, alpha *= 0.5) {
            const Vec xn = x + alpha * step;
            Trial t = try_eval(p, c, s, xn, target);
            if (t.ok && t.norm < cur.norm) {
                x = xn;
                cur = std::move(t);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // roundoff floor: no representable decrease left
            if (cur.norm <= 1e2 * tol) return {x, cur.jet, it};
            break;
        }
    }
    throw LabError(ErrorKind::InverseMapDiverged,
                   "point inversion did not reach tolerance at target " + to_string(target));
}

PotentialFn rotate_potential(const PotentialFn& p, double vartheta, const InversionOptions& opts) {
    if (vartheta == 0.0) return p;
    return rotate_signed(p, vartheta, opts);
}

PotentialFn unrotate_potential(const PotentialFn& pt, double vartheta, const InversionOptions& opts) {
    if (vartheta == 0.0) return pt;
    return rotate_signed(pt, -vartheta, opts);
}

namespace {

std::optional<AffineGradient> legendre_far_field(const PotentialFn& p) {
    const auto& ff = p.far_field();
    if (!ff) return std::nullopt;
    try {
        const SymMat hinv = inverse(ff->hessian);
        return AffineGradient{hinv, -(hinv * ff->offset)};
    } catch (const LabError&) {
        return std::nullopt;
    }
}

Jet legendre_jet(const PotentialFn& p, const Vec& y, const InversionOptions& opts) {
    const InvertedPoint ip = invert_gradient_map(p, 0.0, 1.0, y, opts);
    const double scale = 1.0 + ip.jet.hessian.max_abs();
    if (!(lambda_min(ip.jet.hessian) > 1e-12 * scale))
        throw LabError(ErrorKind::NotConvex, "Legendre transform needs a strictly convex potential");
    return Jet{dot(ip.x, y) - ip.jet.value, ip.x, inverse(ip.jet.hessian)};
}

}  // namespace

PotentialFn legendre(const PotentialFn& p, const InversionOptions& opts) {
    auto evaluator = [p, opts](const Vec& y) { return legendre_jet(p, y, opts); };
    return PotentialFn(p.dim(), image_radius(p, 0.0, 1.0), evaluator, legendre_far_field(p), "leg(" + p.label() + ")");
}

PotentialFn legendre_lewy(const PotentialFn& p, const EquationSpec& spec, const InversionOptions& opts) {
    if (spec.kind != EquationKind::SIGMA2) throw LabError(ErrorKind::BadParams, "Legendre-Lewy needs a sigma2 spec");
    if (p.dim() != spec.dim) throw LabError(ErrorKind::WrongDimension, "potential and equation dimensions differ");
    const double k = sigma2_shift(spec.dim);
    const double bound = spec.delta - k;
    const PotentialFn w = p.plus(make_quadratic(k * SymMat::identity(p.dim()), Vec::zero(p.dim()), 0.0));
    auto evaluator = [w, k, bound, opts](const Vec& y) {
        const InvertedPoint ip = invert_gradient_map(w, 0.0, 1.0, y, opts);
        const SymMat d2u = ip.jet.hessian - k * SymMat::identity(y.dim());
        if (!(lambda_min(d2u) > bound))
            throw LabError(ErrorKind::NotAdmissible, "D^2u must exceed (delta - K) I for Legendre-Lewy");
        return Jet{ip.jet.value - dot(ip.x, y), -ip.x, -1.0 * inverse(ip.jet.hessian)};
    };
    std::optional<AffineGradient> ff;
    if (auto lf = legendre_far_field(w)) ff = AffineGradient{-1.0 * lf->hessian, -lf->offset};
    return PotentialFn(p.dim(), image_radius(w, 0.0, 1.0), evaluator, ff, "lewy(" + p.label() + ")");
}

}  // namespace lab
