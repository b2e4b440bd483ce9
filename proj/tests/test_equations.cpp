// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>

#include "lab/equations.hpp"
#include "lab/error.hpp"
#include "lab/oracle2d.hpp"
#include "oracles.hpp"

using namespace lab;

TEST_CASE("spec validation") {
    CHECK_NOTHROW(EquationSpec::sle(2, 1.0).validate());
    CHECK_THROWS_AS(EquationSpec::sle(2, 3.2).validate(), LabError);
    CHECK_THROWS_AS(EquationSpec::sigma2(2, 0.1).validate(), LabError);
    CHECK_THROWS_AS(EquationSpec::sigma2(3, 0.0).validate(), LabError);
    CHECK(EquationSpec::sle(2, 0.2).supercritical());
    CHECK_FALSE(EquationSpec::sle(2, 0.0).supercritical());
    CHECK_FALSE(EquationSpec::sle(3, 1.5).supercritical());
    CHECK(EquationSpec::sle(3, 1.6).supercritical());
    CHECK_FALSE(EquationSpec::ma(2).supercritical());
    CHECK(parse_equation_kind("ihh") == EquationKind::IHH);
    CHECK_THROWS_AS((void)parse_equation_kind("laplace"), LabError);
}

TEST_CASE("residuals of the named solutions") {
    SUBCASE("sin-exp at the critical phase") {
        const SymMat m = sin_exp().hessian({0.3, 0.7});
        CHECK(std::abs(residual(EquationSpec::sle(2, 0.0), m)) <= 1e-12);
        CHECK(std::abs(m.trace()) <= 1e-12);
    }
    SUBCASE("warren3d is a sigma_2 = 1 solution") {
        const SymMat m = warren3d().hessian({0.3, -0.5, 1.0});
        CHECK(std::abs(residual(EquationSpec::sigma2(3, 0.1), m)) <= 1e-10);
        CHECK(std::abs(oracle::sigma2_minors(m) - 1.0) <= 1e-10);
    }
    SUBCASE("identity solves Monge-Ampere") { CHECK(residual(EquationSpec::ma(2), SymMat::identity(2)) == 0.0); }
    SUBCASE("IHH at diag(2,2)") { CHECK(residual(EquationSpec::ihh(2), SymMat::diag({2.0, 2.0})) == doctest::Approx(0.0)); }
}

TEST_CASE("IHH residual needs an invertible Hessian") {
    try {
        (void)residual(EquationSpec::ihh(2), SymMat::diag({1.0, 0.0}));
        FAIL("expected SingularHessian");
    } catch (const LabError& e) {
        CHECK(e.kind() == ErrorKind::SingularHessian);
    }
}

TEST_CASE("sigma_2 from eigenvalues matches principal minors") {
    oracle::Rng rng(21);
    for (int k = 0; k < 500; ++k) {
        const SymMat m = rng.symmetric(3, 4.0);
        CHECK(sigma2(m) == doctest::Approx(oracle::sigma2_minors(m)).epsilon(1e-12).scale(1.0 + m.max_abs()));
    }
    CHECK(sigma2_shift(3) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("algebraic 2d forms") {
    CHECK(residual_algebraic_2d(EquationSpec::sle(2, kPi / 2), SymMat::diag({2.0, 0.5})) == doctest::Approx(0.0));
    oracle::Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        const SymMat m = sin_exp().hessian(rng.point(2, 0.1, 2.0));
        CHECK(std::abs(residual_algebraic_2d(EquationSpec::sle(2, 0.0), m)) <= 1e-12);
    }
    CHECK(residual_algebraic_2d(EquationSpec::ihh(2), SymMat::diag({2.0, 2.0})) == 0.0);
    CHECK_THROWS_AS((void)residual_algebraic_2d(EquationSpec::ma(3), SymMat::identity(3)), LabError);
}

TEST_CASE("forms_consistent picks the branch from the phase") {
    CHECK(forms_consistent(SymMat::identity(2), kPi / 2));
    const SymMat minus = SymMat::diag({-1.0, -1.0});
    CHECK(std::abs(residual_algebraic_2d(EquationSpec::sle(2, kPi / 2), minus)) <= 1e-15);
    CHECK_FALSE(forms_consistent(minus, kPi / 2));
    CHECK(forms_consistent(SymMat::diag({std::sqrt(3.0), 1.0 / std::sqrt(3.0)}), kPi / 2));
}

TEST_CASE("linearization examples") {
    CHECK(oracle::max_entry_diff(linearization(EquationSpec::sle(2, 0.5), SymMat::zero(2)).a, SymMat::identity(2)) ==
          0.0);
    const SymMat ma = linearization(EquationSpec::ma(2), SymMat::diag({2.0, 0.5})).a;
    CHECK(ma(0, 0) == doctest::Approx(0.5));
    CHECK(ma(1, 1) == doctest::Approx(2.0));
    CHECK(ma(0, 1) == 0.0);

    // at a matrix of phase theta the kernel is (I + A^2)^{-1}, and the
    // conformal rescaling sqrt(det(I + A^2)) (I + A^2)^{-1} has unit determinant
    const double theta = 1.1;
    const double l1 = 0.7;
    const double l2 = std::tan(theta - std::atan(l1));
    oracle::Rng rng(8);
    const SymMat a = rng.with_eigenvalues({l1, l2});
    const SymMat lin = linearization(EquationSpec::sle(2, theta), a).a;
    const SymMat kernel = SymMat::identity(2) + square(a);
    CHECK(oracle::max_entry_diff(lin, inverse(kernel)) <= 1e-14);
    const SymMat scaled = std::sqrt(kernel.det()) * lin;
    CHECK(scaled.det() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("admissibility examples") {
    CHECK_FALSE(admissible(EquationSpec::ma(2), SymMat::diag({1.0, -1.0})));
    CHECK(admissible(EquationSpec::sigma2(3, 0.1), SymMat::zero(3)));
    CHECK(admissible(EquationSpec::ihh(2), SymMat::diag({2.0, 2.0})));
    CHECK_FALSE(admissible(EquationSpec::ihh(2), SymMat::diag({2.0, 0.9})));
    CHECK(admissible(EquationSpec::sle(2, 0.4), SymMat::diag({-5.0, 3.0})));
    CHECK_FALSE(admissible(EquationSpec::sle(3, 0.4), SymMat::zero(3)));
}

TEST_CASE("non-admissible linearization raises NotAdmissible") {
    for (const auto& [spec, m] : {std::pair{EquationSpec::ma(2), SymMat::diag({1.0, -1.0})},
                                  std::pair{EquationSpec::ihh(2), SymMat::diag({0.5, 3.0})},
                                  std::pair{EquationSpec::sle(2, 0.0), SymMat::identity(2)}}) {
        try {
            (void)linearization(spec, m);
            FAIL("expected NotAdmissible");
        } catch (const LabError& e) {
            CHECK(e.kind() == ErrorKind::NotAdmissible);
        }
    }
}

namespace {

struct Sample {
    EquationSpec spec;
    SymMat m;
};

// Random admissible matrices for each kind. sigma_2 inputs are drawn on the
// level set sigma_2 = 1 inside the shifted cone.
std::vector<Sample> admissible_samples(oracle::Rng& rng, int count) {
    std::vector<Sample> out;
    const EquationSpec sigma = EquationSpec::sigma2(3, 0.1);
    while (static_cast<int>(out.size()) < 4 * count) {
        const int k = static_cast<int>(out.size()) % 4;
        if (k == 0) {
            const EquationSpec spec = EquationSpec::sle(2, rng.uniform(0.1, 3.0));
            out.push_back({spec, rng.symmetric(2, 5.0)});
        } else if (k == 1) {
            const int n = rng.integer(2, 3);
            std::vector<double> ev;
            for (int i = 0; i < n; ++i) ev.push_back(rng.uniform(0.05, 5.0));
            out.push_back({EquationSpec::ma(n), rng.with_eigenvalues(ev)});
        } else if (k == 2) {
            std::vector<double> ev{rng.uniform(-0.4, 3.0), rng.uniform(-0.4, 3.0), rng.uniform(0.0, 3.0)};
            double s2 = ev[0] * ev[1] + ev[0] * ev[2] + ev[1] * ev[2];
            if (s2 <= 0.0) continue;
            for (double& v : ev) v /= std::sqrt(s2);
            const SymMat m = rng.with_eigenvalues(ev);
            if (!admissible(sigma, m)) continue;
            out.push_back({sigma, m});
        } else {
            const int n = rng.integer(2, 3);
            std::vector<double> ev;
            for (int i = 0; i < n; ++i) ev.push_back(rng.uniform(1.01, 8.0));
            out.push_back({EquationSpec::ihh(n), rng.with_eigenvalues(ev)});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("linearizations are positive definite on admissible inputs") {
    oracle::Rng rng(99);
    for (const Sample& s : admissible_samples(rng, 1000)) {
        REQUIRE(admissible(s.spec, s.m));
        CHECK(lambda_min(linearization(s.spec, s.m).a) > 0.0);
    }
}

TEST_CASE("oriented residual has the linearization as derivative") {
    oracle::Rng rng(7);
    for (const Sample& s : admissible_samples(rng, 100)) {
        const SymMat e = rng.symmetric(s.m.dim(), 1.0);
        auto quotient = [&](double t) {
            return (oriented_residual(s.spec, s.m + t * e) - oriented_residual(s.spec, s.m)) / t;
        };
        const double richardson = 2.0 * quotient(5e-5) - quotient(1e-4);
        const double exact = linearization(s.spec, s.m).a.contract(e);
        CHECK(richardson == doctest::Approx(exact).epsilon(1e-6).scale(1.0));
    }
    CHECK(orientation(EquationSpec::ihh(2)) == -1.0);
    CHECK(orientation(EquationSpec::ma(2)) == 1.0);
}

TEST_CASE("trigonometric SLE implies the algebraic form") {
    oracle::Rng rng(4);
    for (int k = 0; k < 1000; ++k) {
        const double theta = rng.uniform(-3.0, 3.0);
        // both angles kept 0.1 away from +-pi/2
        const double lo = std::max(-kPi / 2 + 0.1, theta - kPi / 2 + 0.1);
        const double hi = std::min(kPi / 2 - 0.1, theta + kPi / 2 - 0.1);
        if (lo >= hi) continue;
        const double a1 = rng.uniform(lo, hi);
        const SymMat m = rng.with_eigenvalues({std::tan(a1), std::tan(theta - a1)});
        REQUIRE(std::abs(residual(EquationSpec::sle(2, theta), m)) <= 1e-12);
        CHECK(std::abs(residual_algebraic_2d(EquationSpec::sle(2, theta), m)) <= 1e-12);
    }
}
