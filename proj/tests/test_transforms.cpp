// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>

#include "lab/error.hpp"
#include "lab/oracle2d.hpp"
#include "lab/transforms.hpp"
#include "oracles.hpp"

using namespace lab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const LabError& e) {
        return e.kind();
    }
    FAIL("no LabError thrown");
    return ErrorKind::ConfigError;
}

// 0.3|x|^2/2 - 0.05 sum cos(x_i): Hessian between 0.25 I and 0.35 I.
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

}  // namespace

TEST_CASE("rotation parameters") {
    const RotationParams p(kPi / 6);
    CHECK(p.c == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(p.s == doctest::Approx(0.5));
    CHECK(RotationParams::for_sle(EquationSpec::sle(2, kPi / 2)).vartheta == doctest::Approx(kPi / 4));
    CHECK(RotationParams::for_sle(EquationSpec::sle(3, 2.0)).vartheta == doctest::Approx((2.0 - kPi / 2) / 3));
}

TEST_CASE("rotate_hessian examples") {
    const SymMat out = rotate_hessian(SymMat::diag({std::tan(kPi / 3), std::tan(kPi / 6)}), kPi / 6);
    CHECK(out(0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::abs(out(1, 1)) <= 1e-15);
    CHECK(std::abs(out(0, 1)) <= 1e-15);

    const SymMat zero = rotate_hessian(SymMat::zero(3), kPi / 6);
    for (int i = 0; i < 3; ++i) CHECK(zero(i, i) == doctest::Approx(-std::tan(kPi / 6)));
    CHECK(rotate_hessian(SymMat::identity(2), kPi / 4).max_abs() <= 1e-15);

    CHECK(kind_of([] { (void)rotate_hessian(SymMat::diag({-2.0, 1.0}), kPi / 4); }) == ErrorKind::SingularRotation);
}

TEST_CASE("rotate_hessian shifts every eigen-angle") {
    oracle::Rng rng(31);
    for (int k = 0; k < 300; ++k) {
        const double vt = rng.uniform(0.05, 1.5);
        const double floor = -1.0 / std::tan(vt) + 0.05;
        const SymMat m = rng.with_eigenvalues({rng.uniform(floor, 4.0), rng.uniform(floor, 4.0)});
        const auto before = oracle::eig2(m);
        const auto after = oracle::eig2(rotate_hessian(m, vt));
        CHECK(after[0] == doctest::Approx(std::tan(std::atan(before[0]) - vt)).epsilon(1e-11));
        CHECK(after[1] == doctest::Approx(std::tan(std::atan(before[1]) - vt)).epsilon(1e-11));
    }
}

TEST_CASE("unrotate_hessian examples and round trip") {
    const SymMat id = unrotate_hessian(SymMat::zero(2), kPi / 4);
    CHECK(oracle::max_entry_diff(id, SymMat::identity(2)) <= 1e-15);

    // (s + 0.2 c) / (c - 0.2 s) and (s - 0.2 c) / (c + 0.2 s) with c = s
    const SymMat m = unrotate_hessian(SymMat::diag({0.2, -0.2}), kPi / 4);
    CHECK(m(0, 0) == doctest::Approx(1.2 / 0.8).epsilon(1e-14));
    CHECK(m(1, 1) == doctest::Approx(0.8 / 1.2).epsilon(1e-14));
    CHECK(phase(m) == doctest::Approx(kPi / 2).epsilon(1e-14));

    CHECK(kind_of([] { (void)unrotate_hessian(SymMat::diag({1.0, 0.0}), kPi / 4); }) == ErrorKind::StripViolation);

    oracle::Rng rng(12);
    for (int k = 0; k < 500; ++k) {
        const int n = 2 + k % 2;
        const double vt = rng.uniform(0.05, 1.5);
        const double cot = 1.0 / std::tan(vt);
        std::vector<double> ev;
        for (int i = 0; i < n; ++i) ev.push_back(rng.uniform(-3.0, cot - 0.1));
        const SymMat mt = rng.with_eigenvalues(ev);
        CHECK(oracle::max_entry_diff(rotate_hessian(unrotate_hessian(mt, vt), vt), mt) <= 1e-10);
    }
}

TEST_CASE("forward_point examples") {
    const auto q = forward_point({1.0, 0.0}, {0.0, 0.0}, kPi / 2);
    CHECK(q.x.norm() <= 1e-16);
    CHECK(q.y[0] == doctest::Approx(-1.0));
    CHECK(std::abs(q.y[1]) <= 1e-16);
    const auto id = forward_point({0.3, -2.0}, {5.0, 1.0}, 0.0);
    CHECK(oracle::max_diff(id.x, Vec{0.3, -2.0}) == 0.0);
    CHECK(oracle::max_diff(id.y, Vec{5.0, 1.0}) == 0.0);
    const auto r = forward_point({1.0, 1.0}, {1.0, 1.0}, kPi / 4);
    CHECK(r.x[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.x[1] == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.y.norm() <= 1e-15);
}

TEST_CASE("phase drops by dim * vartheta") {
    oracle::Rng rng(41);
    for (int k = 0; k < 1000; ++k) {
        const int n = 2 + k % 2;
        const double vt = rng.uniform(0.05, 1.5);
        const double floor = -1.0 / std::tan(vt) + 0.05;
        std::vector<double> ev;
        for (int i = 0; i < n; ++i) ev.push_back(rng.uniform(floor, 6.0));
        const SymMat m = rng.with_eigenvalues(ev);
        CHECK(std::abs(phase(rotate_hessian(m, vt)) - (phase(m) - n * vt)) <= 1e-10);
    }
}

TEST_CASE("conformality identity for matrices of phase 2 vartheta") {
    oracle::Rng rng(43);
    for (int k = 0; k < 1000; ++k) {
        const double vt = rng.uniform(0.05, 1.5);
        // theta_1 + theta_2 = 2 vartheta with both angles in (-pi/2, pi/2)
        const double lo = std::max(-kPi / 2, 2 * vt - kPi / 2) + 0.05;
        const double hi = std::min(kPi / 2, 2 * vt + kPi / 2) - 0.05;
        const double t1 = rng.uniform(lo, hi);
        const double t2 = 2 * vt - t1;
        if (std::abs(t2) >= kPi / 2 - 0.05) continue;
        const SymMat a = rng.with_eigenvalues({std::tan(t1), std::tan(t2)});
        const SymMat lhs = square(std::cos(vt) * SymMat::identity(2) + std::sin(vt) * a);
        const double factor = std::pow(std::cos((t1 - t2) / 2), 2);
        const SymMat rhs = factor * (SymMat::identity(2) + square(a));
        CHECK(oracle::max_entry_diff(lhs, rhs) <= 1e-10 * (1.0 + rhs.max_abs()));
    }
}

TEST_CASE("rotating a quadratic gives the rotated quadratic") {
    oracle::Rng rng(5);
    const double vt = 0.6;
    const SymMat m = rng.with_eigenvalues({-0.4, 2.5});
    const PotentialFn rotated = rotate_potential(make_quadratic(m, Vec::zero(2), 0.0), vt);
    const SymMat mt = rotate_hessian(m, vt);
    for (int k = 0; k < 50; ++k) {
        const Vec xt = rng.point(2, 0.1, 5.0);
        CHECK(rotated.value(xt) == doctest::Approx(0.5 * quad_form(mt, xt)).epsilon(1e-11).scale(1.0));
        CHECK(oracle::max_entry_diff(rotated.hessian(xt), mt) <= 1e-11);
    }
}

TEST_CASE("rotation by zero is the identity") {
    const PotentialFn p = ma_radial(1.0);
    const PotentialFn same = rotate_potential(p, 0.0);
    for (const Vec& x : {Vec{1.0, 2.0}, Vec{-3.0, 0.5}}) {
        CHECK(same.value(x) == doctest::Approx(p.value(x)).epsilon(1e-14));
        CHECK(oracle::max_diff(same.gradient(x), p.gradient(x)) <= 1e-14);
    }
}

TEST_CASE("the rotated coordinates increase distances by at least sin vartheta") {
    oracle::Rng rng(50);
    const double vt = kPi / 3;  // 1 - cot(vt) ~ 0.42
    const std::vector<PotentialFn> inputs{
        ma_radial(1.0), make_quadratic(rng.with_eigenvalues({0.5, 3.0}), Vec{0.2, 0.1}, 0.0), wobbly_convex(2).scaled(2.0)};
    for (const PotentialFn& p : inputs) {
        for (int k = 0; k < 500; ++k) {
            const Vec x1 = rng.point(2, 1.0, 6.0);
            const Vec x2 = rng.point(2, 1.0, 6.0);
            const auto r1 = forward_point(x1, p.gradient(x1), vt);
            const auto r2 = forward_point(x2, p.gradient(x2), vt);
            CHECK((r1.x - r2.x).norm() >= std::sin(vt) * (x1 - x2).norm() * (1.0 - 1e-14));
        }
    }
}

TEST_CASE("unrotating a harmonic quadratic") {
    const PotentialFn pt = make_quadratic(SymMat::diag({0.2, -0.2}), Vec::zero(2), 0.0);
    const PotentialFn u = unrotate_potential(pt, kPi / 4);
    const SymMat h = u.hessian({1.3, -0.4});
    CHECK(h(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(h(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(h(0, 1)) <= 1e-12);
}

TEST_CASE("rotate then unrotate reproduces the potential") {
    oracle::Rng rng(60);
    for (double vt : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
        for (const PotentialFn& p : {ma_radial(1.0), wobbly_convex(2), wobbly_convex(3)}) {
            const PotentialFn back = unrotate_potential(rotate_potential(p, vt), vt);
            for (double r : {2.0, 5.0, 10.0}) {
                for (int k = 0; k < 16; ++k) {
                    const Vec x = rng.point(p.dim(), r, r);
                    const Jet a = p.eval(x);
                    const Jet b = back.eval(x);
                    CHECK(std::abs(a.value - b.value) <= 1e-9 * (1.0 + std::abs(a.value)));
                    CHECK(oracle::max_diff(a.gradient, b.gradient) <= 1e-9 * (1.0 + a.gradient.norm()));
                    CHECK(oracle::max_entry_diff(a.hessian, b.hessian) <= 1e-9 * (1.0 + a.hessian.max_abs()));
                }
            }
        }
    }
}

TEST_CASE("Legendre examples") {
    const PotentialFn half = make_quadratic(SymMat::identity(2), Vec::zero(2), 0.0);
    const PotentialFn dual = legendre(half);
    CHECK(dual.value({0.6, -1.2}) == doctest::Approx(0.5 * (0.36 + 1.44)));

    const PotentialFn q = make_quadratic(SymMat::diag({2.0, 4.0}), Vec::zero(2), 0.0);
    const PotentialFn qd = legendre(q);
    const Vec y{1.0, 2.0};
    CHECK(qd.value(y) == doctest::Approx(0.5 * (0.5 * 1.0 + 0.25 * 4.0)));
    CHECK(qd.hessian(y)(0, 0) == doctest::Approx(0.5));
    CHECK(qd.hessian(y)(1, 1) == doctest::Approx(0.25));

    CHECK(kind_of([] {
              const PotentialFn saddle = make_quadratic(SymMat::diag({1.0, -1.0}), Vec::zero(2), 0.0);
              (void)legendre(saddle).value({0.1, 0.2});
          }) == ErrorKind::NotConvex);
}

TEST_CASE("Legendre is an involution with reciprocal Hessian spectra") {
    oracle::Rng rng(70);
    for (const PotentialFn& p : {ma_radial(1.0), wobbly_convex(2), wobbly_convex(3)}) {
        const PotentialFn dual = legendre(p);
        const PotentialFn twice = legendre(dual);
        for (int k = 0; k < 40; ++k) {
            // |x| >= 2 keeps the starting guess inside the range of Du for ma-radial
            const Vec x = rng.point(p.dim(), 2.0, 6.0);
            const Jet a = p.eval(x);
            const Jet b = twice.eval(x);
            CHECK(std::abs(a.value - b.value) <= 1e-9 * (1.0 + std::abs(a.value)));
            CHECK(oracle::max_diff(a.gradient, b.gradient) <= 1e-9 * (1.0 + a.gradient.norm()));
            CHECK(oracle::max_entry_diff(a.hessian, b.hessian) <= 1e-9);

            const Jet d = dual.eval(a.gradient);
            CHECK(oracle::max_diff(d.gradient, x) <= 1e-9 * (1.0 + x.norm()));
            const auto ev = eig_sym(a.hessian).values;
            const auto evd = eig_sym(d.hessian).values;
            for (int i = 0; i < p.dim(); ++i)
                CHECK(evd[i] == doctest::Approx(1.0 / ev[p.dim() - 1 - i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("Legendre transform is the quarter rotation up to sign") {
    oracle::Rng rng(71);
    const SymMat a = rng.with_eigenvalues({0.7, 2.2});
    const PotentialFn q = make_quadratic(a, Vec{0.3, -0.1}, 0.2);
    const PotentialFn dual = legendre(q);
    const PotentialFn quarter = rotate_potential(q, kPi / 2);
    for (int k = 0; k < 30; ++k) {
        const Vec y = rng.point(2, 0.1, 5.0);
        CHECK(-quarter.value(y) == doctest::Approx(dual.value(y)).epsilon(1e-12).scale(1.0));
        CHECK(oracle::max_entry_diff(-1.0 * quarter.hessian(y), dual.hessian(y)) <= 1e-12);
    }
}

TEST_CASE("Legendre-Lewy transform") {
    const EquationSpec spec = EquationSpec::sigma2(3, 0.1);
    const double k = sigma2_shift(3);
    CHECK(k == doctest::Approx(0.57735).epsilon(1e-5));

    const double lambda = 0.2;
    const PotentialFn q = make_quadratic(lambda * SymMat::identity(3), Vec::zero(3), 0.0);
    const SymMat h = legendre_lewy(q, spec).hessian({0.4, -0.3, 1.0});
    for (int i = 0; i < 3; ++i) CHECK(h(i, i) == doctest::Approx(-1.0 / (lambda + k)).epsilon(1e-12));
    CHECK(std::abs(h(0, 1)) <= 1e-14);

    CHECK(kind_of([&] {
              const PotentialFn low = make_quadratic(-0.6 * SymMat::identity(3), Vec::zero(3), 0.0);
              (void)legendre_lewy(low, spec).value({0.1, 0.1, 0.1});
          }) == ErrorKind::NotAdmissible);
}

TEST_CASE("Legendre-Lewy Hessians stay inside (-1/delta, 0)") {
    const EquationSpec spec = EquationSpec::sigma2(3, 0.1);
    oracle::Rng rng(80);
    const std::vector<PotentialFn> inputs{
        make_quadratic(SymMat::diag({-0.3, 1.0, 4.0}), Vec{0.1, 0.0, -0.2}, 0.0), wobbly_convex(3)};
    for (const PotentialFn& p : inputs) {
        const PotentialFn t = legendre_lewy(p, spec);
        for (int n = 0; n < 1000; ++n) {
            const auto ev = eig_sym(t.hessian(rng.point(3, 0.0, 4.0))).values;
            CHECK(ev[0] > -1.0 / spec.delta);
            CHECK(ev[2] < 0.0);
        }
    }
}
