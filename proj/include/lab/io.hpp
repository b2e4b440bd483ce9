// SPDX-License-Identifier: MIT
//
// JSON and CSV serialisation of profiles, samples, fields and solve reports.
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "lab/annulus.hpp"
#include "lab/error.hpp"
#include "lab/potential.hpp"
#include "lab/profile.hpp"
#include "lab/solver.hpp"

namespace lab {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const Vec& v);
[[nodiscard]] Json to_json(const SymMat& m);  // nested rows
/// Non-finite numbers become null (decaySlope = -inf in particular).
[[nodiscard]] Json number_or_null(double x);

[[nodiscard]] Vec vec_from_json(const Json& j, const std::string& what);
[[nodiscard]] SymMat symmat_from_json(const Json& j, const std::string& what);

/// {"A", "b", "c", "d", "L", "decaySlope"}; c is null when not predicted.
[[nodiscard]] Json profile_to_json(const AsymptoticProfile& p);
[[nodiscard]] AsymptoticProfile profile_from_json(const Json& j);

[[nodiscard]] Json report_to_json(const SolveReport& r);
[[nodiscard]] Json convergence_to_json(const std::vector<ConvergenceRow>& rows);
[[nodiscard]] Json error_to_json(const LabError& e, int exit_code);

/// Fixed-precision rendering used by every CSV writer.
[[nodiscard]] std::string format_double(double x);

/// Header x1,x2[,x3],u,du1,du2[,du3],h11,h12,h22[,h13,h23,h33].
[[nodiscard]] std::string samples_header(int dim);
void write_samples_csv(std::ostream& out, int dim, std::span<const Vec> points, std::span<const Jet> jets);

/// Header i,j,r,theta,x1,x2,u.
inline constexpr const char* kFieldHeader = "i,j,r,theta,x1,x2,u";
void write_field_csv(std::ostream& out, const AnnulusField& field);

/// Pretty JSON with a trailing newline.
[[nodiscard]] std::string dump(const Json& j);

}  // namespace lab
