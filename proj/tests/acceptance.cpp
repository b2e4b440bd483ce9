// SPDX-License-Identifier: MIT
//
// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lab/asymptotics.hpp"
#include "lab/error.hpp"
#include "lab/kernels.hpp"
#include "lab/oracle2d.hpp"
#include "lab/sampling.hpp"
#include "lab/solver.hpp"
#include "lab/transforms.hpp"
#include "oracles.hpp"

using namespace lab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [out of tolerance]");
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

LaurentCoeffs coeffs(Complex a1, Complex a0, double am1, std::vector<Complex> tail = {}) {
    LaurentCoeffs c;
    c.a1 = a1;
    c.a0 = a0;
    c.am1 = am1;
    c.tail = std::move(tail);
    return c;
}

ShellSpec shells(std::vector<double> radii) {
    ShellSpec s;
    s.radii = std::move(radii);
    s.points_per_shell = 64;
    return s;
}

PotentialFn wobbly_convex(int dim) {
    return PotentialFn(dim, 0.0, [dim](const Vec& x) {
        Jet j{0.0, Vec(dim), SymMat(dim)};
        for (int i = 0; i < dim; ++i) {
            j.value += 0.15 * x[i] * x[i] - 0.05 * std::cos(x[i]);
            j.gradient[i] = 0.3 * x[i] + 0.05 * std::sin(x[i]);
            j.hessian(i, i) = 0.3 + 0.05 * std::cos(x[i]);
        }
        return j;
    });
}

double jet_gap(const Jet& a, const Jet& b) {
    return std::max({std::abs(a.value - b.value), oracle::max_diff(a.gradient, b.gradient),
                     oracle::max_entry_diff(a.hessian, b.hessian)});
}

struct SleInstance {
    LaurentCoeffs coeffs;
    double vartheta;
};

// a0 != 0 throughout, so the value remainder carries its r^-1 term
std::vector<SleInstance> sle_instances() {
    const LaurentCoeffs first = coeffs({0.2, 0.1}, {0.3, -0.2}, 0.5, {{0.1, 0.2}});
    return {
        {first, kPi / 8},
        {first, kPi / 4},
        {first, 3 * kPi / 8},
        {coeffs({-0.1, 0.25}, {0.5, 0.4}, -0.3, {{0.2, -0.1}, {0.05, 0.05}}), kPi / 4},
        {coeffs({0.3, 0.0}, {-0.4, 0.1}, 0.8), 3 * kPi / 8},
        {coeffs({0.15, -0.2}, {0.2, 0.2}, 0.25, {{-0.1, 0.0}}), kPi / 8},
    };
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// each named solution gets its own one-second budget
Outcome named_residuals() {
    Outcome out;
    const auto pts2 = shell_points(2, 1.0, 2.0, 10000, 1);
    const auto pts3 = shell_points(3, 1.0, 2.0, 10000, 2);
    auto timed = [&](const std::string& name, const std::function<double()>& measure) {
        const auto start = std::chrono::steady_clock::now();
        const double worst = measure();
        const double t = seconds_since(start);
        out.require(worst <= 1e-10 && t < 1.0, name + " " + sci(worst) + " in " + sci(t) + " s");
    };
    timed("sin-exp", [&] { return max_abs_residual(EquationSpec::sle(2, 0.0), sin_exp(), pts2); });
    timed("warren3d", [&] {
        double worst = max_abs_residual(EquationSpec::sigma2(3, 0.1), warren3d(), pts3);
        for (const Vec& x : pts3) worst = std::max(worst, std::abs(oracle::sigma2_minors(warren3d().hessian(x)) - 1.0));
        return worst;
    });
    for (int dim : {2, 3}) {
        timed("log-radial " + std::to_string(dim) + "d", [&] {
            const PotentialFn p = log_radial(dim);
            double worst = 0.0;
            for (const Vec& x : dim == 2 ? pts2 : pts3) worst = std::max(worst, std::abs(log_radial_operator(x, p.hessian(x))));
            return worst;
        });
    }
    return out;
}

Outcome rotation_algebra() {
    Outcome out;
    oracle::Rng rng(2024);
    double additivity = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const int n = 2 + k % 2;
        const double vt = rng.uniform(0.05, 1.5);
        const double floor = -1.0 / std::tan(vt) + 0.05;
        std::vector<double> ev;
        for (int i = 0; i < n; ++i) ev.push_back(rng.uniform(floor, 6.0));
        const SymMat m = rng.with_eigenvalues(ev);
        additivity = std::max(additivity, std::abs(phase(rotate_hessian(m, vt)) - (phase(m) - n * vt)));
    }
    out.require(additivity <= 1e-10, "phase drop " + sci(additivity));

    double conformal = 0.0;
    int count = 0;
    while (count < 1000) {
        const double vt = rng.uniform(0.05, 1.5);
        const double lo = std::max(-kPi / 2, 2 * vt - kPi / 2) + 0.05;
        const double hi = std::min(kPi / 2, 2 * vt + kPi / 2) - 0.05;
        const double t1 = rng.uniform(lo, hi);
        const double t2 = 2 * vt - t1;
        if (std::abs(t2) >= kPi / 2 - 0.05) continue;
        ++count;
        const SymMat a = rng.with_eigenvalues({std::tan(t1), std::tan(t2)});
        const SymMat lhs = square(std::cos(vt) * SymMat::identity(2) + std::sin(vt) * a);
        const SymMat rhs = std::pow(std::cos((t1 - t2) / 2), 2) * (SymMat::identity(2) + square(a));
        conformal = std::max(conformal, oracle::max_entry_diff(lhs, rhs) / (1.0 + rhs.max_abs()));
    }
    out.require(conformal <= 1e-10, "conformality " + sci(conformal));
    return out;
}

Outcome round_trips() {
    Outcome out;
    double rot = 0.0;
    std::uint64_t seed = 10;
    for (double vt : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
        for (const PotentialFn& p : {ma_radial(1.0), wobbly_convex(2), wobbly_convex(3)}) {
            const PotentialFn back = unrotate_potential(rotate_potential(p, vt), vt);
            for (const Vec& x : shell_points(p.dim(), 2.0, 10.0, 200, seed++)) rot = std::max(rot, jet_gap(p.eval(x), back.eval(x)));
        }
    }
    out.require(rot <= 1e-9, "rotate/unrotate " + sci(rot));
    double leg = 0.0;
    for (const PotentialFn& p : {ma_radial(1.0), wobbly_convex(2), wobbly_convex(3)}) {
        const PotentialFn twice = legendre(legendre(p));
        for (const Vec& x : shell_points(p.dim(), 2.0, 6.0, 200, seed++)) leg = std::max(leg, jet_gap(p.eval(x), twice.eval(x)));
    }
    out.require(leg <= 1e-9, "Legendre involution " + sci(leg));
    return out;
}

Outcome sle_log_coefficient() {
    Outcome out;
    double fit_gap = 0.0, boundary_gap = 0.0, value_slope = 0.0, hessian_slope = 0.0;
    for (const SleInstance& s : sle_instances()) {
        const PotentialFn u = oracle_sle(s.coeffs, s.vartheta);
        const EquationSpec spec = EquationSpec::sle(2, 2 * s.vartheta);
        const AsymptoticProfile fit = fit_profile(u, spec, shells({50, 100, 200}));
        const double bd = boundary_d(spec, u, BoundaryCurve::circle(u.inner_radius()));
        const HessianLimit lim = hessian_limit(u, shells({50, 100, 200}));
        fit_gap = std::max(fit_gap, std::abs(fit.d - s.coeffs.am1));
        boundary_gap = std::max(boundary_gap, std::abs(bd - s.coeffs.am1));
        value_slope = std::max(value_slope, std::abs(fit.decay_slope + 1.0));
        hessian_slope = std::max(hessian_slope, std::abs(lim.slope + 2.0));
    }
    out.require(fit_gap <= 2e-3, "6 instances; |d_fit - a_-1| " + sci(fit_gap));
    out.require(boundary_gap <= 1e-4, "|d_boundary - a_-1| " + sci(boundary_gap));
    out.require(value_slope <= 0.15, "|value slope + 1| " + sci(value_slope));
    out.require(hessian_slope <= 0.15, "|Hessian slope + 2| " + sci(hessian_slope));
    return out;
}

Outcome ma_log_coefficient() {
    Outcome out;
    const PotentialFn u = ma_radial(1.0);
    const EquationSpec spec = EquationSpec::ma(2);
    const AsymptoticProfile fit = fit_profile(u, spec, shells({50, 100, 200}));
    const double bd = boundary_d(spec, u, BoundaryCurve::circle(1.0));
    out.require(std::abs(fit.d - 0.5) <= 1e-3, "d_fit " + sci(fit.d) + " (err " + sci(std::abs(fit.d - 0.5)) + ")");
    out.require(std::abs(bd - 0.5) <= 1e-6, "d_boundary " + sci(bd) + " (err " + sci(std::abs(bd - 0.5)) + ")");
    for (double radius : {10.0, 100.0}) {
        const double flux = flux_identity(spec, fit.A, fit.b, fit.d, radius);
        out.require(std::abs(flux - 2 * kPi * fit.d) <= 1e-6,
                    "flux at R=" + sci(radius) + " err " + sci(std::abs(flux - 2 * kPi * fit.d)));
    }
    return out;
}

Outcome ihh_log_coefficient() {
    Outcome out;
    const LaurentCoeffs co = coeffs({0.2, 0.1}, {0.3, 0.1}, 0.4, {{0.1, 0.0}});
    const PotentialFn u = ihh_oracle(co);
    const EquationSpec spec = EquationSpec::ihh(2);
    const double expected = expected_ihh_profile(co).d;
    const AsymptoticProfile fit = fit_profile(u, spec, shells({50, 100, 200}));
    const double bd = boundary_d(spec, u, BoundaryCurve::circle(u.inner_radius()));
    out.require(oracle::max_entry_diff(fit.L, square(fit.A)) <= 1e-14, "kernel A^2");
    out.require(std::abs(fit.d - expected) <= 2e-3, "|d_fit - d| " + sci(std::abs(fit.d - expected)));
    out.require(std::abs(bd - expected) <= 2e-3, "|d_boundary - d| " + sci(std::abs(bd - expected)));
    out.require(std::abs(fit.d - bd) <= 2e-3, "|d_fit - d_boundary| " + sci(std::abs(fit.d - bd)));
    return out;
}

Outcome legendre_lewy_range() {
    Outcome out;
    const EquationSpec spec = EquationSpec::sigma2(3, 0.1);
    // sigma_2(diag(0.2, 0.5, 9/7)) = 1
    const std::vector<PotentialFn> inputs{make_quadratic(SymMat::diag({0.2, 0.5, 9.0 / 7.0}), Vec{0.1, 0.0, -0.2}, 0.0),
                                          wobbly_convex(3)};
    double upper = -1e300, lower = 1e300;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const PotentialFn t = legendre_lewy(inputs[k], spec);
        for (const Vec& y : shell_points(3, 0.1, 4.0, 1000, 70 + k)) {
            const auto ev = eig_sym(t.hessian(y)).values;
            lower = std::min(lower, ev[0]);
            upper = std::max(upper, ev[2]);
        }
    }
    out.require(lower > -1.0 / spec.delta, "min eigenvalue " + sci(lower) + " > " + sci(-1.0 / spec.delta));
    out.require(upper < 0.0, "max eigenvalue " + sci(upper) + " < 0");
    return out;
}

Outcome solver_convergence() {
    Outcome out;
    std::vector<AnnulusGrid> grids{AnnulusGrid(1.0, 8.0, 33, 64)};
    grids.push_back(grids.back().refined());
    grids.push_back(grids.back().refined());
    struct Study {
        std::string name;
        EquationSpec spec;
        PotentialFn oracle;
    };
    const std::vector<Study> studies{{"MA", EquationSpec::ma(2), ma_radial(1.0)},
                                     {"SLE", EquationSpec::sle(2, kPi / 2), oracle_sle(coeffs(0.2, 0.0, 0.5), kPi / 4)}};
    for (const Study& s : studies) {
        const auto rows = convergence_study(s.spec, s.oracle, grids);
        std::string ratios;
        bool ok = rows.back().max_error <= 5e-4;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const double r = rows[k].ratio.value_or(0.0);
            ok = ok && r >= 3.0 && r <= 5.0;
            ratios += (k > 1 ? "," : "") + sci(r);
        }
        out.require(ok, s.name + " finest " + sci(rows.back().max_error) + " ratios " + ratios);
    }
    return out;
}

Outcome negative_control() {
    Outcome out;
    std::string kind = "none";
    try {
        (void)fit_profile(sin_exp(), EquationSpec::sle(2, 0.0), shells({5, 10, 20}));
    } catch (const LabError& e) {
        kind = std::string(to_string(e.kind()));
    }
    out.require(kind == "NoDecay", "sin-exp fit raised " + kind);
    return out;
}

Outcome uniqueness() {
    Outcome out;
    double worst = 0.0;
    for (const SleInstance& s : sle_instances()) {
        const PotentialFn u = oracle_sle(s.coeffs, s.vartheta);
        const EquationSpec spec = EquationSpec::sle(2, 2 * s.vartheta);
        const AsymptoticProfile p1 = fit_profile(u, spec, shells({50, 100, 200}));
        const AsymptoticProfile p2 = fit_profile(u, spec, shells({400, 800, 1600}));
        const double gap = (p1.A - p2.A).frobenius() + (p1.b - p2.b).norm() + std::abs(*p1.c - *p2.c) +
                           std::abs(p1.d - p2.d);
        worst = std::max(worst, gap);
    }
    out.require(worst <= 5e-3, "shells {50,100,200} vs {400,800,1600}: max gap " + sci(worst));
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "named-solution residuals", 4.0, named_residuals},
        {2, "rotation algebra", 1.0, rotation_algebra},
        {3, "transform round trips", 10.0, round_trips},
        {4, "SLE asymptotics on manufactured solutions", 30.0, sle_log_coefficient},
        {5, "Monge-Ampere log coefficient", 10.0, ma_log_coefficient},
        {6, "inverse harmonic Hessian log coefficient", 30.0, ihh_log_coefficient},
        {7, "Legendre-Lewy Hessian range", 5.0, legendre_lewy_range},
        {8, "annulus solver convergence", 120.0, solver_convergence},
        {9, "critical-phase negative control", 5.0, negative_control},
        {10, "uniqueness across shell families", 30.0, uniqueness},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw ") + e.what();
        }
        const double seconds = seconds_since(start);
        const bool in_time = seconds < c.limit_seconds;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::printf("%s %2d %s: %s (%.2f s, limit %g s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    seconds, c.limit_seconds, in_time ? "" : ", too slow");
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
