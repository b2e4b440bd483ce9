// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lab/linalg.hpp"
#include "lab/potential.hpp"

namespace lab {

enum class RadialSpacing { Uniform, Logarithmic };

/// Polar grid on {r_inner <= |x| <= r_outer}. Radial nodes i = 0..nR-1 include
/// both boundary circles; theta_j = 2 pi j / nTheta is periodic.
class AnnulusGrid {
public:
    AnnulusGrid(double r_inner, double r_outer, int n_r, int n_theta,
                RadialSpacing spacing = RadialSpacing::Uniform);

    [[nodiscard]] double r_inner() const noexcept { return r_inner_; }
    [[nodiscard]] double r_outer() const noexcept { return r_outer_; }
    [[nodiscard]] int n_r() const noexcept { return n_r_; }
    [[nodiscard]] int n_theta() const noexcept { return n_theta_; }
    [[nodiscard]] RadialSpacing spacing() const noexcept { return spacing_; }

    [[nodiscard]] double r(int i) const noexcept;
    [[nodiscard]] double theta(int j) const noexcept;
    /// Step of the uniform radial coordinate: dr, or d(log r).
    [[nodiscard]] double radial_step() const noexcept { return h_; }
    [[nodiscard]] double theta_step() const noexcept;
    [[nodiscard]] Vec point(int i, int j) const noexcept;

    [[nodiscard]] std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_theta_) + static_cast<std::size_t>(j);
    }
    [[nodiscard]] std::size_t size() const noexcept { return index(n_r_, 0); }

    /// Same annulus with both counts doubled (radial intervals and angles).
    [[nodiscard]] AnnulusGrid refined() const;

private:
    double r_inner_, r_outer_;
    int n_r_, n_theta_;
    RadialSpacing spacing_;
    double h_;
};

/// Grid function with Dirichlet data on the two boundary circles. Row i = 0
/// always equals inner_bc and row nR-1 equals outer_bc.
class AnnulusField {
public:
    AnnulusField(AnnulusGrid grid, std::vector<double> values);  // BCs read from boundary rows
    AnnulusField(AnnulusGrid grid, std::vector<double> interior_and_boundary, std::vector<double> inner_bc,
                 std::vector<double> outer_bc);

    /// Nodal samples of an exact potential.
    [[nodiscard]] static AnnulusField sample(const AnnulusGrid& grid, const PotentialFn& p);
    /// Interpolates the two boundary arrays radially, affinely in r^2.
    [[nodiscard]] static AnnulusField affine_blend(const AnnulusGrid& grid, std::span<const double> inner_bc,
                                                   std::span<const double> outer_bc);

    [[nodiscard]] const AnnulusGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] double operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const double> inner_bc() const noexcept { return inner_bc_; }
    [[nodiscard]] std::span<const double> outer_bc() const noexcept { return outer_bc_; }

    /// Copy with the interior rows replaced; boundary rows are kept.
    [[nodiscard]] AnnulusField with_interior(std::span<const double> interior) const;
    /// Max |this - other| over all nodes.
    [[nodiscard]] double max_diff(const AnnulusField& other) const;

private:
    AnnulusGrid grid_;
    std::vector<double> values_;
    std::vector<double> inner_bc_;
    std::vector<double> outer_bc_;
};

}  // namespace lab
