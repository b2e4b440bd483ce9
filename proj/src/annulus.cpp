// SPDX-License-Identifier: MIT
#include "lab/annulus.hpp"

#include <algorithm>
#include <cmath>

#include "lab/error.hpp"

namespace lab {

AnnulusGrid::AnnulusGrid(double r_inner, double r_outer, int n_r, int n_theta, RadialSpacing spacing)
    : r_inner_(r_inner), r_outer_(r_outer), n_r_(n_r), n_theta_(n_theta), spacing_(spacing) {
    if (!(r_inner > 0.0 && r_outer > r_inner))
        throw LabError(ErrorKind::BadParams, "annulus needs 0 < r_inner < r_outer");
    if (n_r < 4) throw LabError(ErrorKind::BadParams, "annulus needs nR >= 4");
    if (n_theta < 8 || n_theta % 2 != 0) throw LabError(ErrorKind::BadParams, "annulus needs nTheta >= 8 and even");
    h_ = spacing == RadialSpacing::Uniform ? (r_outer - r_inner) / (n_r - 1)
                                           : std::log(r_outer / r_inner) / (n_r - 1);
}

double AnnulusGrid::r(int i) const noexcept {
    if (i == n_r_ - 1) return r_outer_;
    return spacing_ == RadialSpacing::Uniform ? r_inner_ + i * h_ : r_inner_ * std::exp(i * h_);
}

double AnnulusGrid::theta(int j) const noexcept { return 2.0 * kPi * j / n_theta_; }
double AnnulusGrid::theta_step() const noexcept { return 2.0 * kPi / n_theta_; }

Vec AnnulusGrid::point(int i, int j) const noexcept {
    const double ri = r(i), t = theta(j);
    return Vec{ri * std::cos(t), ri * std::sin(t)};
}

AnnulusGrid AnnulusGrid::refined() const { return {r_inner_, r_outer_, 2 * n_r_ - 1, 2 * n_theta_, spacing_}; }

AnnulusField::AnnulusField(AnnulusGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw LabError(ErrorKind::BadParams, "field size does not match grid");
    const auto nt = static_cast<std::size_t>(grid_.n_theta());
    inner_bc_.assign(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(nt));
    outer_bc_.assign(values_.end() - static_cast<std::ptrdiff_t>(nt), values_.end());
}

AnnulusField::AnnulusField(AnnulusGrid grid, std::vector<double> values, std::vector<double> inner_bc,
                           std::vector<double> outer_bc)
    : grid_(grid), values_(std::move(values)), inner_bc_(std::move(inner_bc)), outer_bc_(std::move(outer_bc)) {
    const auto nt = static_cast<std::size_t>(grid_.n_theta());
    if (values_.size() != grid_.size() || inner_bc_.size() != nt || outer_bc_.size() != nt)
        throw LabError(ErrorKind::BadParams, "field or boundary size does not match grid");
    std::copy(inner_bc_.begin(), inner_bc_.end(), values_.begin());
    std::copy(outer_bc_.begin(), outer_bc_.end(), values_.end() - static_cast<std::ptrdiff_t>(nt));
}

AnnulusField AnnulusField::sample(const AnnulusGrid& grid, const PotentialFn& p) {
    std::vector<double> v(grid.size());
    for (int i = 0; i < grid.n_r(); ++i)
        for (int j = 0; j < grid.n_theta(); ++j) v[grid.index(i, j)] = p.value(grid.point(i, j));
    return AnnulusField(grid, std::move(v));
}

AnnulusField AnnulusField::affine_blend(const AnnulusGrid& grid, std::span<const double> inner_bc,
                                        std::span<const double> outer_bc) {
    const auto nt = static_cast<std::size_t>(grid.n_theta());
    if (inner_bc.size() != nt || outer_bc.size() != nt)
        throw LabError(ErrorKind::BadParams, "boundary arrays must have nTheta entries");
    const double a2 = grid.r_inner() * grid.r_inner();
    const double b2 = grid.r_outer() * grid.r_outer();
    std::vector<double> v(grid.size());
    for (int i = 0; i < grid.n_r(); ++i) {
        const double ri = grid.r(i);
        const double t = (ri * ri - a2) / (b2 - a2);
        for (int j = 0; j < grid.n_theta(); ++j) {
            const auto jj = static_cast<std::size_t>(j);
            v[grid.index(i, j)] = (1.0 - t) * inner_bc[jj] + t * outer_bc[jj];
        }
    }
    return AnnulusField(grid, std::move(v), {inner_bc.begin(), inner_bc.end()}, {outer_bc.begin(), outer_bc.end()});
}

AnnulusField AnnulusField::with_interior(std::span<const double> interior) const {
    const std::size_t nt = static_cast<std::size_t>(grid_.n_theta());
    if (interior.size() != grid_.size() - 2 * nt)
        throw LabError(ErrorKind::BadParams, "interior vector has the wrong length");
    std::vector<double> v = values_;
    std::copy(interior.begin(), interior.end(), v.begin() + static_cast<std::ptrdiff_t>(nt));
    return AnnulusField(grid_, std::move(v), inner_bc_, outer_bc_);
}

double AnnulusField::max_diff(const AnnulusField& other) const {
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) m = std::max(m, std::abs(values_[k] - other.values_[k]));
    return m;
}

}  // namespace lab
