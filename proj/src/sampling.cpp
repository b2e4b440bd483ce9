// SPDX-License-Identifier: MIT
#include "lab/sampling.hpp"

#include <cmath>

#include "lab/error.hpp"

namespace lab {

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

}  // namespace

std::vector<Vec> sphere_points(int dim, double radius, int n, double offset) {
    require_dim(dim);
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(n));
    if (dim == 2) {
        for (int k = 0; k < n; ++k) {
            const double t = offset + 2.0 * kPi * k / n;
            pts.push_back(Vec{radius * std::cos(t), radius * std::sin(t)});
        }
        return pts;
    }
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double rho = std::sqrt(1.0 - z * z);
        const double t = offset + golden * k;
        pts.push_back(Vec{radius * rho * std::cos(t), radius * rho * std::sin(t), radius * z});
    }
    return pts;
}

std::vector<Vec> shell_points(int dim, double r_min, double r_max, int n, std::uint64_t seed) {
    require_dim(dim);
    if (!(r_min > 0.0 && r_max >= r_min)) throw LabError(ErrorKind::BadParams, "shell needs 0 < r_min <= r_max");
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double lr = std::log(r_max / r_min);
    for (int k = 0; k < n; ++k) {
        const std::uint64_t i = static_cast<std::uint64_t>(k) + 1 + seed * 7919;
        const double r = r_min * std::exp(lr * radical_inverse(i, 2));
        const double t = 2.0 * kPi * radical_inverse(i, 3);
        if (dim == 2) {
            pts.push_back(Vec{r * std::cos(t), r * std::sin(t)});
        } else {
            const double z = 2.0 * radical_inverse(i, 5) - 1.0;
            const double rho = std::sqrt(1.0 - z * z);
            pts.push_back(Vec{r * rho * std::cos(t), r * rho * std::sin(t), r * z});
        }
    }
    return pts;
}

}  // namespace lab
