// SPDX-License-Identifier: MIT
#include "lab/oracle2d.hpp"

#include <cmath>
#include <functional>

#include "lab/error.hpp"
#include "lab/sampling.hpp"
#include "lab/transforms.hpp"

namespace lab {

void LaurentCoeffs::validate() const {
    if (tail.size() > 7) throw LabError(ErrorKind::BadParams, "Laurent tail limited to a_{-2}..a_{-8}");
    for (const Complex& a : tail)
        if (std::abs(a) > 10.0) throw LabError(ErrorKind::BadParams, "Laurent tail coefficients must satisfy |a| <= 10");
    if (!std::isfinite(am1) || !std::isfinite(std::abs(a1)) || !std::isfinite(std::abs(a0)))
        throw LabError(ErrorKind::BadParams, "Laurent coefficients must be finite");
}

Complex LaurentCoeffs::h(Complex z) const {
    const Complex inv = 1.0 / z;
    Complex sum = a1 * z + a0 + am1 * inv;
    Complex p = inv * inv;
    for (const Complex& a : tail) {
        sum += a * p;
        p *= inv;
    }
    return sum;
}

Complex LaurentCoeffs::dh(Complex z) const {
    const Complex inv = 1.0 / z;
    Complex sum = a1 - am1 * inv * inv;
    Complex p = inv * inv * inv;
    double k = 2.0;
    for (const Complex& a : tail) {
        sum -= k * a * p;
        p *= inv;
        k += 1.0;
    }
    return sum;
}

Complex LaurentCoeffs::primitive(Complex z) const {
    const Complex inv = 1.0 / z;
    Complex sum = 0.5 * a1 * z * z + a0 * z + am1 * std::log(z);
    Complex p = inv;
    double k = 2.0;
    for (const Complex& a : tail) {
        sum -= a * p / (k - 1.0);
        p *= inv;
        k += 1.0;
    }
    return sum;
}

double LaurentCoeffs::hessian_deviation_bound(double r) const {
    double b = std::abs(am1) / (r * r);
    double p = 1.0 / (r * r * r);
    double k = 2.0;
    for (const Complex& a : tail) {
        b += k * std::abs(a) * p;
        p /= r;
        k += 1.0;
    }
    return b;
}

SymMat laurent_hessian(Complex a1) { return SymMat::from_upper(2, {a1.real(), -a1.imag(), -a1.real()}); }

PotentialFn harmonic_potential(const LaurentCoeffs& coeffs) {
    coeffs.validate();
    auto eval = [coeffs](const Vec& x) {
        const Complex z{x[0], x[1]};
        if (z == Complex{0.0, 0.0}) throw LabError(ErrorKind::BadParams, "harmonic potential undefined at z = 0");
        const Complex h = coeffs.h(z);
        const Complex dh = coeffs.dh(z);
        return Jet{coeffs.primitive(z).real(), Vec{h.real(), -h.imag()},
                   SymMat::from_upper(2, {dh.real(), -dh.imag(), -dh.real()})};
    };
    return PotentialFn(2, 1.0, eval, AffineGradient{laurent_hessian(coeffs.a1), Vec{coeffs.a0.real(), -coeffs.a0.imag()}},
                       "harmonic");
}

namespace {

// Smallest radius beyond which |h'(z) - a1| stays below `allowance`.
double convexity_radius(const LaurentCoeffs& coeffs, double allowance) {
    double r = 1e-2;
    while (coeffs.hessian_deviation_bound(r) > allowance) {
        r *= 1.01;
        if (r > 1e8) throw LabError(ErrorKind::BadParams, "Laurent tail too large to certify an exterior domain");
    }
    return r;
}

// First radius in {1, 2, 4, ...} where `point_ok` holds on a 256-point circle.
double certify_radius(const std::function<bool(const Vec&)>& point_ok) {
    for (double radius = 1.0; radius <= 1048576.0; radius *= 2.0) {
        bool ok = true;
        for (const Vec& x : sphere_points(2, radius, 256)) {
            bool pass = false;
            try {
                pass = point_ok(x);
            } catch (const LabError&) {
                pass = false;
            }
            if (!pass) {
                ok = false;
                break;
            }
        }
        if (ok) return radius;
    }
    throw LabError(ErrorKind::InverseMapDiverged, "no exterior radius passed the inverse-map validation");
}

}  // namespace

PotentialFn oracle_sle(const LaurentCoeffs& coeffs, double vartheta) {
    coeffs.validate();
    if (!(vartheta > 0.0 && vartheta < kPi / 2.0)) throw LabError(ErrorKind::BadParams, "vartheta must lie in (0, pi/2)");
    const double cot = 1.0 / std::tan(vartheta);
    if (!(std::abs(coeffs.a1) < cot - 0.05))
        throw LabError(ErrorKind::StripViolation, "|a1| must stay below cot(vartheta) - 0.05");

    const PotentialFn harmonic = harmonic_potential(coeffs);
    const PotentialFn u = unrotate_potential(harmonic, vartheta);
    const double r_conv = convexity_radius(coeffs, 0.5 * (cot - std::abs(coeffs.a1)));
    const EquationSpec spec{EquationKind::SLE, 2, 2.0 * vartheta, 0.0};
    const double c = std::cos(vartheta), s = std::sin(vartheta);

    const double rho = certify_radius([&](const Vec& x) {
        const Jet j = u.eval(x);
        const Vec xt = c * x + s * j.gradient;
        if (xt.norm() < r_conv) return false;
        if (std::abs(coeffs.dh(Complex{xt[0], xt[1]})) >= cot - 1e-6) return false;
        return std::abs(residual(spec, j.hessian)) <= 1e-9;
    });
    return PotentialFn(2, rho, [u](const Vec& x) { return u.eval(x); }, u.far_field(), "oracle-sle");
}

HarmonicRepresentation harmonic_representation(const LaurentCoeffs& coeffs, double vartheta, const Vec& rotated_point) {
    const double c = std::cos(vartheta), s = std::sin(vartheta);
    const Complex z{rotated_point[0], rotated_point[1]};
    const Complex h = coeffs.h(z);
    const Vec du_t{h.real(), -h.imag()};

    // term-by-term primitive of c^2 h - s^2 z h'
    const Complex inv = 1.0 / z;
    Complex g = 0.5 * (c * c - s * s) * coeffs.a1 * z * z + c * c * coeffs.a0 * z + coeffs.am1 * std::log(z);
    Complex p = inv;
    double k = 2.0;
    for (const Complex& a : coeffs.tail) {
        g += (c * c + k * s * s) * a * p / (1.0 - k);
        p *= inv;
        k += 1.0;
    }
    const double value = 0.5 * s * c * (std::norm(z) - std::norm(h)) + g.real();
    return {c * rotated_point - s * du_t, value};
}

AsymptoticProfile expected_profile(const LaurentCoeffs& coeffs, double vartheta) {
    const double cot = 1.0 / std::tan(vartheta);
    if (!(std::abs(coeffs.a1) < cot - 0.05))
        throw LabError(ErrorKind::StripViolation, "|a1| must stay below cot(vartheta) - 0.05");
    const double c = std::cos(vartheta), s = std::sin(vartheta);
    AsymptoticProfile prof;
    prof.A = unrotate_hessian(laurent_hessian(coeffs.a1), vartheta);
    const Vec bt{coeffs.a0.real(), -coeffs.a0.imag()};
    prof.b = (c * SymMat::identity(2) + s * prof.A) * bt;
    prof.c = std::nullopt;
    prof.d = coeffs.am1;
    prof.L = SymMat::identity(2) + square(prof.A);
    prof.decay_slope = -1.0;
    return prof;
}

// ---------------------------------------------------------------------------

PotentialFn sin_exp() {
    return PotentialFn(
        2, 0.0,
        [](const Vec& x) {
            const double e = std::exp(x[1]), sn = std::sin(x[0]), cs = std::cos(x[0]);
            return Jet{sn * e, Vec{cs * e, sn * e}, SymMat::from_upper(2, {-sn * e, cs * e, sn * e})};
        },
        std::nullopt, "sin-exp");
}

PotentialFn warren3d() {
    return PotentialFn(
        3, 0.0,
        [](const Vec& x) {
            const double e = std::exp(x[2]), ei = std::exp(-x[2]);
            const double q = x[0] * x[0] + x[1] * x[1];
            const double u = q * e - e + 0.25 * ei;
            const double u3 = q * e - e - 0.25 * ei;
            Vec g{2.0 * x[0] * e, 2.0 * x[1] * e, u3};
            SymMat h = SymMat::from_upper(3, {2.0 * e, 0.0, 2.0 * x[0] * e, 2.0 * e, 2.0 * x[1] * e, u});
            return Jet{u, g, h};
        },
        std::nullopt, "warren3d");
}

PotentialFn log_radial(int dim) {
    require_dim(dim);
    return PotentialFn(
        dim, 0.0,
        [](const Vec& x) {
            const double r2 = x.norm_sq();
            if (r2 == 0.0) throw LabError(ErrorKind::BadParams, "log|x| undefined at the origin");
            SymMat h = (1.0 / r2) * SymMat::identity(x.dim()) - (2.0 / (r2 * r2)) * SymMat::outer(x);
            return Jet{0.5 * std::log(r2), (1.0 / r2) * x, h};
        },
        std::nullopt, "log-radial");
}

double log_radial_operator(const Vec& x, const SymMat& hessian) {
    const int n = x.dim();
    const SymMat coeff = SymMat::identity(n) + ((n - 2.0) / x.norm_sq()) * SymMat::outer(x);
    return coeff.contract(hessian);
}

PotentialFn ma_radial(double c) {
    if (!(c > 0.0)) throw LabError(ErrorKind::BadParams, "ma-radial needs c > 0");
    return PotentialFn(
        2, 0.5,
        [c](const Vec& x) {
            const double r = x.norm();
            if (r == 0.0) throw LabError(ErrorKind::BadParams, "ma-radial undefined at the origin");
            const double sq = std::sqrt(r * r + c);
            const double value = 0.5 * (r * sq + c * std::log(r + sq));
            const double up = sq, upp = r / sq;
            const SymMat radial = (1.0 / (r * r)) * SymMat::outer(x);
            SymMat h = upp * radial + (up / r) * (SymMat::identity(2) - radial);
            return Jet{value, (up / r) * x, h};
        },
        AffineGradient{SymMat::identity(2), Vec::zero(2)}, "ma-radial");
}

PotentialFn ihh_oracle(const LaurentCoeffs& coeffs) {
    coeffs.validate();
    if (!(std::abs(coeffs.a1) < 0.5 - 0.05)) throw LabError(ErrorKind::BadParams, "ihh-oracle needs |a1| < 0.45");
    const PotentialFn dual = harmonic_potential(coeffs).plus(make_quadratic(0.5 * SymMat::identity(2), Vec::zero(2), 0.0));
    const PotentialFn u = legendre(dual);
    const double r_conv = convexity_radius(coeffs, 0.5 * (0.5 - std::abs(coeffs.a1)));
    const EquationSpec spec{EquationKind::IHH, 2, 0.0, 0.0};
    const double rho = certify_radius([&](const Vec& x) {
        const Jet j = u.eval(x);
        if (j.gradient.norm() < r_conv) return false;
        return std::abs(residual(spec, j.hessian)) <= 1e-9;
    });
    return PotentialFn(2, rho, [u](const Vec& x) { return u.eval(x); }, u.far_field(), "ihh-oracle");
}

AsymptoticProfile expected_ihh_profile(const LaurentCoeffs& coeffs) {
    const SymMat a_bar = 0.5 * SymMat::identity(2) + laurent_hessian(coeffs.a1);
    const Vec b_bar{coeffs.a0.real(), -coeffs.a0.imag()};
    AsymptoticProfile prof;
    prof.A = inverse(a_bar);
    prof.b = -(prof.A * b_bar);
    prof.c = std::nullopt;
    prof.d = -coeffs.am1;
    prof.L = square(prof.A);
    prof.decay_slope = -1.0;
    return prof;
}

}  // namespace lab
