// SPDX-License-Identifier: MIT
#include "lab/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace lab {

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

Json to_json(const SymMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Vec vec_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3))
        throw LabError(ErrorKind::ConfigError, what + ": expected an array of 2 or 3 numbers");
    Vec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw LabError(ErrorKind::ConfigError, what + ": entries must be numbers");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
}

SymMat symmat_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3))
        throw LabError(ErrorKind::ConfigError, what + ": expected a 2x2 or 3x3 matrix");
    const int n = static_cast<int>(j.size());
    SymMat m(n);
    for (int i = 0; i < n; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw LabError(ErrorKind::ConfigError, what + ": rows must have " + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k)
            if (!row[static_cast<std::size_t>(k)].is_number())
                throw LabError(ErrorKind::ConfigError, what + ": entries must be numbers");
    }
    for (int i = 0; i < n; ++i) {
        for (int k = i; k < n; ++k) {
            const double a = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
            const double b = j[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].get<double>();
            if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a)))
                throw LabError(ErrorKind::ConfigError, what + ": matrix must be symmetric");
            m(i, k) = a;
        }
    }
    return m;
}

Json profile_to_json(const AsymptoticProfile& p) {
    Json j;
    j["A"] = to_json(p.A);
    j["b"] = to_json(p.b);
    j["c"] = p.c ? number_or_null(*p.c) : Json(nullptr);
    j["d"] = p.d;
    j["L"] = to_json(p.L);
    j["decaySlope"] = number_or_null(p.decay_slope);
    return j;
}

AsymptoticProfile profile_from_json(const Json& j) {
    if (!j.is_object()) throw LabError(ErrorKind::ConfigError, "profile must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "A" && key != "b" && key != "c" && key != "d" && key != "L" && key != "decaySlope")
            throw LabError(ErrorKind::ConfigError, "profile: unknown key '" + key + "'");
    }
    AsymptoticProfile p;
    p.A = symmat_from_json(j.at("A"), "profile.A");
    p.b = vec_from_json(j.at("b"), "profile.b");
    if (j.contains("c") && !j["c"].is_null()) p.c = j["c"].get<double>();
    p.d = j.at("d").get<double>();
    p.L = symmat_from_json(j.at("L"), "profile.L");
    p.decay_slope = j.contains("decaySlope") && !j["decaySlope"].is_null() ? j["decaySlope"].get<double>()
                                                                            : -std::numeric_limits<double>::infinity();
    return p;
}

Json report_to_json(const SolveReport& r) {
    Json j;
    j["status"] = std::string(to_string(r.status));
    j["iterations"] = r.iterations;
    j["finalResidualInf"] = number_or_null(r.final_residual_inf);
    j["dampingEvents"] = r.damping_events;
    Json trace = Json::array();
    for (double v : r.residual_trace) trace.push_back(number_or_null(v));
    j["residualTrace"] = trace;
    const AnnulusGrid& g = r.field.grid();
    j["grid"] = {{"rInner", g.r_inner()},
                 {"rOuter", g.r_outer()},
                 {"nR", g.n_r()},
                 {"nTheta", g.n_theta()},
                 {"spacing", g.spacing() == RadialSpacing::Uniform ? "uniform" : "log"}};
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

Json convergence_to_json(const std::vector<ConvergenceRow>& rows) {
    Json a = Json::array();
    for (const ConvergenceRow& row : rows) {
        a.push_back({{"h", row.h},
                     {"nR", row.n_r},
                     {"nTheta", row.n_theta},
                     {"maxError", row.max_error},
                     {"ratio", row.ratio ? Json(*row.ratio) : Json(nullptr)},
                     {"iterations", row.iterations}});
    }
    return a;
}

Json error_to_json(const LabError& e, int exit_code) {
    return {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.detail()}, {"exitCode", exit_code}}}};
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string samples_header(int dim) {
    return dim == 2 ? "x1,x2,u,du1,du2,h11,h12,h22" : "x1,x2,x3,u,du1,du2,du3,h11,h12,h22,h13,h23,h33";
}

void write_samples_csv(std::ostream& out, int dim, std::span<const Vec> points, std::span<const Jet> jets) {
    require_dim(dim);
    if (points.size() != jets.size()) throw LabError(ErrorKind::BadParams, "samples: points and jets differ in length");
    out << samples_header(dim) << '\n';
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Vec& x = points[k];
        const Jet& j = jets[k];
        std::string line;
        for (int i = 0; i < dim; ++i) line += format_double(x[i]) + ',';
        line += format_double(j.value);
        for (int i = 0; i < dim; ++i) line += ',' + format_double(j.gradient[i]);
        const SymMat& h = j.hessian;
        line += ',' + format_double(h(0, 0)) + ',' + format_double(h(0, 1)) + ',' + format_double(h(1, 1));
        if (dim == 3)
            line += ',' + format_double(h(0, 2)) + ',' + format_double(h(1, 2)) + ',' + format_double(h(2, 2));
        out << line << '\n';
    }
}

void write_field_csv(std::ostream& out, const AnnulusField& field) {
    const AnnulusGrid& g = field.grid();
    out << kFieldHeader << '\n';
    for (int i = 0; i < g.n_r(); ++i) {
        for (int j = 0; j < g.n_theta(); ++j) {
            const Vec x = g.point(i, j);
            out << i << ',' << j << ',' << format_double(g.r(i)) << ',' << format_double(g.theta(j)) << ','
                << format_double(x[0]) << ',' << format_double(x[1]) << ',' << format_double(field(i, j)) << '\n';
        }
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lab
