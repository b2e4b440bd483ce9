// SPDX-License-Identifier: MIT
#include "lab/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "lab/error.hpp"
#include "lab/sampling.hpp"

namespace lab {

namespace {

std::string number_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

void ShellSpec::validate(double inner_radius) const {
    if (radii.empty()) throw LabError(ErrorKind::BadParams, "shells: no radii");
    if (points_per_shell < 32) throw LabError(ErrorKind::BadParams, "shells: need at least 32 points per shell");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(std::isfinite(radii[k]) && radii[k] > inner_radius))
            throw LabError(ErrorKind::BadParams, "shells: radius " + number_text(radii[k]) +
                                                     " not beyond the inner radius " + number_text(inner_radius));
        if (k > 0 && !(radii[k] > radii[k - 1]))
            throw LabError(ErrorKind::BadParams, "shells: radii must be strictly increasing");
    }
}

std::vector<Vec> ShellSpec::points(int dim, std::size_t shell) const {
    return sphere_points(dim, radii.at(shell), points_per_shell, angle_offset);
}

// ---------------------------------------------------------------------------

BoundaryCurve::BoundaryCurve(Map point, Map tangent, int order)
    : point_(std::move(point)), tangent_(std::move(tangent)), order_(order) {
    if (order_ < 8) throw LabError(ErrorKind::BadParams, "curve: quadrature order must be >= 8");
    std::vector<double> terms(static_cast<std::size_t>(order_));
    for (int k = 0; k < order_; ++k) {
        const double t = node(k);
        const Vec x = point_(t), dx = tangent_(t);
        if (x.dim() != 2 || dx.dim() != 2) throw LabError(ErrorKind::WrongDimension, "curve must be planar");
        terms[static_cast<std::size_t>(k)] = x[0] * dx[1] - x[1] * dx[0];
    }
    area_ = 0.5 * pairwise_sum(terms) * (2.0 * kPi / order_);
    if (!(area_ > 0.0)) throw LabError(ErrorKind::BadParams, "curve must be positively oriented with positive area");
}

double BoundaryCurve::node(int k) const noexcept { return 2.0 * kPi * k / order_; }

BoundaryCurve BoundaryCurve::circle(double radius, const Vec& center, int order) {
    return ellipse(radius, radius, 0.0, center, order);
}

BoundaryCurve BoundaryCurve::ellipse(double semi_a, double semi_b, double angle, const Vec& center, int order) {
    if (!(semi_a > 0.0 && semi_b > 0.0)) throw LabError(ErrorKind::BadParams, "curve: semi-axes must be positive");
    require_dim(center.dim());
    if (center.dim() != 2) throw LabError(ErrorKind::WrongDimension, "curve must be planar");
    const double ca = std::cos(angle), sa = std::sin(angle);
    auto point = [=](double t) {
        const double p = semi_a * std::cos(t), q = semi_b * std::sin(t);
        return Vec{center[0] + ca * p - sa * q, center[1] + sa * p + ca * q};
    };
    auto tangent = [=](double t) {
        const double p = -semi_a * std::sin(t), q = semi_b * std::cos(t);
        return Vec{ca * p - sa * q, sa * p + ca * q};
    };
    return BoundaryCurve(point, tangent, order);
}

// ---------------------------------------------------------------------------

namespace {

double loglog_slope(const std::vector<double>& r, const std::vector<double>& v) {
    const std::size_t n = r.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += std::log(r[k]);
        my += std::log(v[k]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = std::log(r[k]) - mx;
        sxy += dx * (std::log(v[k]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// Absolute floor, raised to the rounding level of quantities of size `scale`.
double residual_floor(double scale) {
    return std::max(kResidualFloor, 256.0 * std::numeric_limits<double>::epsilon() * scale);
}

// Slope over the shells whose maxima sit above the floor.
double floored_slope(const std::vector<double>& radii, const std::vector<double>& maxima, double scale) {
    std::vector<double> r, v;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (maxima[k] > residual_floor(scale)) {
            r.push_back(radii[k]);
            v.push_back(maxima[k]);
        }
    }
    if (r.size() < 2) return kNoDecaySlope;
    return loglog_slope(r, v);
}

struct ShellSamples {
    std::vector<Vec> points;
    std::vector<Jet> jets;
    std::vector<std::size_t> begin;  // offsets per shell, plus the end
};

ShellSamples sample(const PotentialFn& p, const ShellSpec& shells, Exec exec) {
    shells.validate(p.inner_radius());
    ShellSamples s;
    for (std::size_t k = 0; k < shells.radii.size(); ++k) {
        s.begin.push_back(s.points.size());
        for (const Vec& x : shells.points(p.dim(), k)) s.points.push_back(x);
    }
    s.begin.push_back(s.points.size());
    s.jets = evaluate_points(p, s.points, exec);
    return s;
}

HessianLimit limit_from_samples(const ShellSamples& s, const std::vector<double>& radii, int dim) {
    const std::size_t outer = radii.size() - 1;
    const std::size_t lo = s.begin[outer], hi = s.begin[outer + 1];
    HessianLimit out;
    out.A = SymMat::zero(dim);
    std::vector<double> column(hi - lo);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            for (std::size_t k = lo; k < hi; ++k) column[k - lo] = s.jets[k].hessian(i, j);
            out.A(i, j) = pairwise_sum(column) / static_cast<double>(hi - lo);
        }
    }
    double scale = 0.0;
    for (std::size_t shell = 0; shell < radii.size(); ++shell) {
        double m = 0.0;
        for (std::size_t k = s.begin[shell]; k < s.begin[shell + 1]; ++k) {
            const SymMat& h = s.jets[k].hessian;
            if (!std::isfinite(h.max_abs()))
                throw LabError(ErrorKind::NoDecay, "Hessian not finite on shell r = " + number_text(radii[shell]));
            m = std::max(m, (h - out.A).frobenius());
            scale = std::max(scale, h.frobenius());
        }
        out.shell_residuals.push_back(m);
    }
    const double inner_res = out.shell_residuals.front(), outer_res = out.shell_residuals.back();
    if (outer_res > inner_res && outer_res > residual_floor(scale))
        throw LabError(ErrorKind::NoDecay, "Hessian residual grows from " + number_text(inner_res) + " at r = " +
                                               number_text(radii.front()) + " to " + number_text(outer_res) +
                                               " at r = " + number_text(radii.back()));
    out.slope = floored_slope(radii, out.shell_residuals, scale);
    return out;
}

}  // namespace

HessianLimit hessian_limit(const PotentialFn& p, const ShellSpec& shells, Exec exec) {
    return limit_from_samples(sample(p, shells, exec), shells.radii, p.dim());
}

SymMat log_kernel(const EquationSpec& spec, const SymMat& a) {
    switch (spec.kind) {
        case EquationKind::SLE: return SymMat::identity(a.dim()) + square(a);
        case EquationKind::MA: return a;
        case EquationKind::IHH: return square(a);
        case EquationKind::SIGMA2: break;
    }
    throw LabError(ErrorKind::BadParams, "no 2D log kernel for " + std::string(to_string(spec.kind)));
}

AsymptoticProfile fit_profile(const PotentialFn& p, const EquationSpec& spec, const ShellSpec& shells, Exec exec) {
    const int dim = p.dim();
    if (spec.dim != dim) throw LabError(ErrorKind::WrongDimension, "equation and potential dimensions differ");
    const ShellSamples s = sample(p, shells, exec);
    const HessianLimit limit = limit_from_samples(s, shells.radii, dim);

    AsymptoticProfile prof;
    prof.A = limit.A;
    const bool with_log = dim == 2;
    if (with_log) {
        prof.L = log_kernel(spec, prof.A);
        if (!(lambda_min(prof.L) > 0.0))
            throw LabError(ErrorKind::NotAdmissible, "log kernel " + to_string(prof.L) + " is not positive definite");
    } else {
        prof.L = SymMat::zero(dim);
    }

    const auto rows = static_cast<Eigen::Index>(s.points.size());
    const Eigen::Index cols = dim + 1 + (with_log ? 1 : 0);
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    double value_scale = 0.0;
    for (Eigen::Index k = 0; k < rows; ++k) {
        const Vec& x = s.points[static_cast<std::size_t>(k)];
        const double u = s.jets[static_cast<std::size_t>(k)].value;
        for (int i = 0; i < dim; ++i) design(k, i) = x[i];
        design(k, dim) = 1.0;
        if (with_log) design(k, dim + 1) = 0.5 * std::log(quad_form(prof.L, x));
        target(k) = u - 0.5 * quad_form(prof.A, x);
        value_scale = std::max(value_scale, std::abs(u));
    }
    Eigen::VectorXd col_scale(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        col_scale(j) = design.col(j).cwiseAbs().maxCoeff();
        if (col_scale(j) == 0.0) throw LabError(ErrorKind::IllConditioned, "fit basis column vanishes on the shells");
        design.col(j) /= col_scale(j);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
    const auto& sv = svd.singularValues();
    const double cond_normal = std::pow(sv(0) / sv(sv.size() - 1), 2);
    if (!(cond_normal <= 1e12))
        throw LabError(ErrorKind::IllConditioned, "normal-equation condition number " + number_text(cond_normal));
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
    const Eigen::VectorXd fitted = design * coef;

    prof.b = Vec::zero(dim);
    for (int i = 0; i < dim; ++i) prof.b[i] = coef(i) / col_scale(i);
    prof.c = coef(dim) / col_scale(dim);
    prof.d = with_log ? coef(dim + 1) / col_scale(dim + 1) : 0.0;

    // On one shell the fit basis restricts to span{1, x/r, log(x^T L x / r^2)};
    // removing that span leaves the part of the residual that no error in
    // (b, c, d) can produce.
    std::vector<double> maxima;
    for (std::size_t shell = 0; shell < shells.radii.size(); ++shell) {
        const std::size_t lo = s.begin[shell], n = s.begin[shell + 1] - lo;
        const double r = shells.radii[shell];
        Eigen::MatrixXd local(static_cast<Eigen::Index>(n), cols);
        Eigen::VectorXd e(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const auto row = static_cast<Eigen::Index>(k), global = static_cast<Eigen::Index>(lo + k);
            const Vec& x = s.points[lo + k];
            for (int i = 0; i < dim; ++i) local(row, i) = x[i] / r;
            local(row, dim) = 1.0;
            if (with_log) local(row, dim + 1) = std::log(quad_form(prof.L, x) / (r * r));
            e(row) = target(global) - fitted(global);
        }
        const Eigen::VectorXd rest = e - local * local.colPivHouseholderQr().solve(e);
        maxima.push_back(rest.cwiseAbs().maxCoeff());
    }
    prof.decay_slope = floored_slope(shells.radii, maxima, value_scale);
    return prof;
}

double decay_exponent(const std::vector<std::pair<double, double>>& samples) {
    std::vector<double> r, v;
    for (const auto& [radius, value] : samples) {
        if (!(value > 0.0))
            throw LabError(ErrorKind::NonPositiveValue, "decay sample at r = " + number_text(radius) + " is " +
                                                            number_text(value));
        if (!(radius > 0.0)) throw LabError(ErrorKind::BadParams, "decay sample radius must be positive");
        r.push_back(radius);
        v.push_back(value);
    }
    std::vector<double> distinct = r;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw LabError(ErrorKind::BadParams, "decay fit needs at least 3 distinct radii");
    return loglog_slope(r, v);
}

ShellDecay shell_decay(const PotentialFn& p, const ShellSpec& shells,
                       const std::function<double(const Vec&, const Jet&)>& measure, Exec exec) {
    const ShellSamples s = sample(p, shells, exec);
    ShellDecay out;
    out.radii = shells.radii;
    for (std::size_t shell = 0; shell < shells.radii.size(); ++shell) {
        double m = 0.0;
        for (std::size_t k = s.begin[shell]; k < s.begin[shell + 1]; ++k) m = std::max(m, measure(s.points[k], s.jets[k]));
        out.maxima.push_back(m);
    }
    out.slope = floored_slope(out.radii, out.maxima, 0.0);
    return out;
}

// ---------------------------------------------------------------------------

DivergenceForm divergence_form(const EquationSpec& spec) {
    if (spec.dim != 2) throw LabError(ErrorKind::WrongDimension, "boundary formula is two-dimensional");
    switch (spec.kind) {
        case EquationKind::SLE: return {std::cos(spec.theta), std::sin(spec.theta), std::sin(spec.theta)};
        case EquationKind::MA: return {0.0, 1.0, 1.0};
        case EquationKind::IHH: return {-1.0, 1.0, 0.0};
        case EquationKind::SIGMA2: break;
    }
    throw LabError(ErrorKind::BadParams, "no 2D divergence form for " + std::string(to_string(spec.kind)));
}

namespace {

// alpha Du + beta u_1 (u_22, -u_12)
Vec form_flux(const DivergenceForm& f, const Vec& du, const SymMat& h) {
    return f.alpha * du + (f.beta * du[0]) * Vec{h(1, 1), -h(0, 1)};
}

}  // namespace

double boundary_d(const EquationSpec& spec, const PotentialFn& p, const BoundaryCurve& curve) {
    if (p.dim() != 2) throw LabError(ErrorKind::WrongDimension, "boundary formula is two-dimensional");
    const DivergenceForm form = divergence_form(spec);
    const int n = curve.order();
    std::vector<Vec> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) pts[static_cast<std::size_t>(k)] = curve.point(curve.node(k));
    const std::vector<Jet> jets = evaluate_points(p, pts);
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const Vec dg = curve.tangent(curve.node(k));
        const Vec normal_ds{dg[1], -dg[0]};
        terms[i] = dot(form_flux(form, jets[i].gradient, jets[i].hessian), normal_ds);
    }
    const double integral = pairwise_sum(terms) * (2.0 * kPi / n);
    return (integral - form.rhs * curve.enclosed_area()) / (2.0 * kPi);
}

double flux_identity(const EquationSpec& spec, const SymMat& a, const Vec& b, double d, double radius, int order) {
    if (a.dim() != 2 || b.dim() != 2) throw LabError(ErrorKind::WrongDimension, "flux identity is two-dimensional");
    const DivergenceForm form = divergence_form(spec);
    const SymMat kernel = log_kernel(spec, a);
    const SymMat half_inv = apply_spectral(kernel, [](double l) { return 1.0 / std::sqrt(l); });
    std::vector<double> terms(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        const double t = 2.0 * kPi * k / order;
        const Vec x = radius * (half_inv * Vec{std::cos(t), std::sin(t)});
        const Vec dx = radius * (half_inv * Vec{-std::sin(t), std::cos(t)});
        const Vec lx = kernel * x;
        const double g = dot(x, lx);
        const Vec dgamma = (d / g) * lx;
        const SymMat hgamma = (d / g) * kernel - (2.0 * d / (g * g)) * SymMat::outer(lx);
        const Vec dq = a * x + b;
        const Vec flux = form.alpha * dgamma + form.beta * (dq[0] * Vec{hgamma(1, 1), -hgamma(0, 1)} +
                                                            dgamma[0] * Vec{a(1, 1), -a(0, 1)});
        terms[static_cast<std::size_t>(k)] = dot(flux, Vec{dx[1], -dx[0]});
    }
    return pairwise_sum(terms) * (2.0 * kPi / order);
}

}  // namespace lab
