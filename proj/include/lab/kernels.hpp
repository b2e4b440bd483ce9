// SPDX-License-Identifier: MIT
//
// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; both write per-item results into preallocated slots and
// reduce in a fixed order, so the two agree bit for bit.
#pragma once

#include <span>
#include <vector>

#include "lab/equations.hpp"
#include "lab/potential.hpp"

namespace lab {

enum class Exec { Serial, Parallel };

/// Jets of P at every point.
[[nodiscard]] std::vector<Jet> evaluate_points(const PotentialFn& p, std::span<const Vec> points,
                                               Exec exec = Exec::Parallel);

/// max_k |residual(spec, D^2 P(x_k))|.
[[nodiscard]] double max_abs_residual(const EquationSpec& spec, const PotentialFn& p, std::span<const Vec> points,
                                      Exec exec = Exec::Parallel);

/// Pairwise (cascade) summation; deterministic for a given input order.
[[nodiscard]] double pairwise_sum(std::span<const double> values);

}  // namespace lab
