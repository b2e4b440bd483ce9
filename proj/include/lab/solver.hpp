// SPDX-License-Identifier: MIT
//
// Damped Newton for F(D^2 u) = 0 on a polar annulus with Dirichlet data.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lab/annulus.hpp"
#include "lab/equations.hpp"
#include "lab/kernels.hpp"
#include "lab/potential.hpp"

namespace lab {

inline constexpr int kStencilReach = 3;  // angular half-width
inline constexpr int kStencilWidth = 2 * kStencilReach + 1;
inline constexpr std::size_t kStencilSize = 3 * kStencilWidth;

/// D^2 u at node (i, j) as sum_o weight[o] u(i + di, j + dj), with
/// o = kStencilWidth (di + 1) + (dj + kStencilReach), |di| <= 1, |dj| <= 3.
struct HessianStencil {
    std::array<SymMat, kStencilSize> weight;
};

[[nodiscard]] HessianStencil hessian_stencil(const AnnulusGrid& grid, int i, int j);

/// Centered differences in (r or log r, theta), second order radially and
/// sixth order in theta, mapped to Cartesian coordinates; needs 1 <= i <= nR - 2.
[[nodiscard]] SymMat grid_hessian(const AnnulusField& field, int i, int j);

enum class SolveStatus { Converged, DidNotConverge, InadmissibleIterate };
[[nodiscard]] std::string_view to_string(SolveStatus status) noexcept;

struct SolveOptions {
    double tolerance = 1e-10;
    int max_iterations = 50;
    int max_halvings = 20;  // damping floor 2^-20
    Exec exec = Exec::Parallel;
};

struct SolveReport {
    int iterations = 0;
    double final_residual_inf = 0.0;
    int damping_events = 0;  // step halvings over all iterations
    AnnulusField field;
    SolveStatus status = SolveStatus::DidNotConverge;
    std::vector<double> residual_trace;  // ||F||_inf of the initial and every accepted iterate
    std::string message;

    /// Throws DidNotConverge / InadmissibleIterate unless converged.
    void require_converged() const;
};

/// Nodal residuals (oriented so the Jacobian is the linearization) at the
/// interior nodes, row-major over i = 1..nR-2.
struct DiscreteResidual {
    std::vector<double> values;
    double inf_norm = 0.0;
    bool admissible = true;
};
[[nodiscard]] DiscreteResidual discrete_residual(const EquationSpec& spec, const AnnulusField& field,
                                                 Exec exec = Exec::Parallel);

/// Jacobian of discrete_residual as column-compressed triplets (row, col, value)
/// over interior unknowns.
struct JacobianEntries {
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<double> values;
};
[[nodiscard]] JacobianEntries assemble_jacobian(const EquationSpec& spec, const AnnulusField& field,
                                                Exec exec = Exec::Parallel);

/// Full (undamped) Newton correction of the interior unknowns.
[[nodiscard]] std::vector<double> newton_correction(const EquationSpec& spec, const AnnulusField& field,
                                                    Exec exec = Exec::Parallel);

/// Solve with `init` as starting field (its boundary rows are replaced by
/// the BCs), or with the affine-in-r^2 blend of the BCs when it is empty.
[[nodiscard]] SolveReport solve_annulus(const EquationSpec& spec, const AnnulusGrid& grid,
                                        const std::vector<double>& inner_bc, const std::vector<double>& outer_bc,
                                        const std::optional<AnnulusField>& init = std::nullopt,
                                        const SolveOptions& opts = {});

struct ConvergenceRow {
    double h = 0.0;  // radial step of the grid
    int n_r = 0;
    int n_theta = 0;
    double max_error = 0.0;
    std::optional<double> ratio;  // previous error / this error; empty at the floor
    int iterations = 0;
};

/// Annulus solves with boundary data sampled from `oracle`, errors against
/// the oracle at the nodes. Grids must be nested by factor-2 refinement.
[[nodiscard]] std::vector<ConvergenceRow> convergence_study(const EquationSpec& spec, const PotentialFn& oracle,
                                                            const std::vector<AnnulusGrid>& grids,
                                                            const SolveOptions& opts = {});

}  // namespace lab
