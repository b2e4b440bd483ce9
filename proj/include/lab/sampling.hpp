// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "lab/linalg.hpp"

namespace lab {

/// n points on the sphere of the given radius: equiangular in 2D (starting at
/// angle `offset`), a Fibonacci lattice in 3D.
[[nodiscard]] std::vector<Vec> sphere_points(int dim, double radius, int n, double offset = 0.0);

/// Quasi-random points in the shell r_min <= |x| <= r_max (Halton sequence in
/// (log r, angles)); deterministic for a given seed.
[[nodiscard]] std::vector<Vec> shell_points(int dim, double r_min, double r_max, int n, std::uint64_t seed = 0);

}  // namespace lab
