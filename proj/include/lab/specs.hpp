// SPDX-License-Identifier: MIT
//
// JSON descriptions of solutions, equations, shells, curves and solver runs,
// and the experiment configuration that chains them. Unknown keys are
// rejected everywhere with ConfigError.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>

#include "lab/asymptotics.hpp"
#include "lab/io.hpp"
#include "lab/oracle2d.hpp"
#include "lab/solver.hpp"

namespace lab {

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where);

struct Solution {
    PotentialFn potential;
    std::optional<AsymptoticProfile> expected;  // predicted profile when known
    std::optional<EquationSpec> equation;       // the equation it solves, when fixed
    Json source;
};

/// {"kind": "sle", "a1": [re, im], "a0": [re, im], "am1": r, "tail": [[re, im], ...], "vartheta": v}
/// or {"kind": "builtin", "name": ..., "params": {...}}.
[[nodiscard]] Solution solution_from_json(const Json& j);

/// Named closed forms: sin-exp, warren3d, log-radial {dim}, ma-radial {c},
/// quadratic {A, b, c}, ihh-oracle {a1, a0, am1, tail}. Throws UnknownName / BadParams.
[[nodiscard]] Solution builtin(const std::string& name, const Json& params = Json::object());

/// "builtin:NAME", inline JSON, or the path of a JSON file.
[[nodiscard]] Solution solution_from_flag(const std::string& flag, const Json& params = Json::object());

/// {"kind": "sle"|"ma"|"sigma2"|"ihh", "dim": 2, "theta": .., "delta": ..}
[[nodiscard]] EquationSpec equation_from_json(const Json& j);
[[nodiscard]] Json equation_to_json(const EquationSpec& spec);

/// {"radii": [...], "pointsPerShell": 64}; the seed turns into an angular offset.
[[nodiscard]] ShellSpec shells_from_json(const Json& j, std::uint64_t seed);
[[nodiscard]] double seed_angle_offset(std::uint64_t seed, int points_per_shell);

/// {"type": "circle", "radius": R | "inner", "center": [..], "order": 512} or
/// {"type": "ellipse", "semiAxes": [a, b], "angle": .., "center": [..], "order": 512}.
/// "inner" stands for the inner radius of the solution.
[[nodiscard]] BoundaryCurve curve_from_json(const Json& j, double inner_radius);

struct SolverConfig {
    double r_inner = 1.0;
    double r_outer = 8.0;
    int n_r = 33;
    int n_theta = 64;
    RadialSpacing spacing = RadialSpacing::Uniform;
    int refinements = 3;  // grids in the convergence study
    SolveOptions options;

    [[nodiscard]] std::vector<AnnulusGrid> grids() const;
};
[[nodiscard]] SolverConfig solver_from_json(const Json& j);

struct ExperimentConfig {
    EquationSpec equation;
    Json solution;
    Json shells;
    Json curve;
    std::optional<SolverConfig> solver;
    std::string outputs = "lab-output";
    std::uint64_t seed = 0;
};
[[nodiscard]] ExperimentConfig experiment_from_json(const Json& j);

/// Reads and parses a JSON file; ConfigError on failure.
[[nodiscard]] Json read_json_file(const std::string& path);

}  // namespace lab
