// SPDX-License-Identifier: MIT
#include "lab/specs.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "lab/transforms.hpp"

namespace lab {

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw LabError(ErrorKind::ConfigError, where + ": expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || item.key() == a;
        if (!known) throw LabError(ErrorKind::ConfigError, where + ": unknown key '" + item.key() + "'");
    }
}

namespace {

double number(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw LabError(ErrorKind::ConfigError, where + ": missing '" + key + "'");
    const Json& v = obj[key];
    if (!v.is_number()) throw LabError(ErrorKind::ConfigError, where + "." + key + " must be a number");
    return v.get<double>();
}

double number_or(const Json& obj, const char* key, const std::string& where, double fallback) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

int integer_or(const Json& obj, const char* key, const std::string& where, int fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj[key];
    if (!v.is_number_integer()) throw LabError(ErrorKind::ConfigError, where + "." + key + " must be an integer");
    return v.get<int>();
}

std::string string_of(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string())
        throw LabError(ErrorKind::ConfigError, where + ": '" + key + "' must be a string");
    return obj[key].get<std::string>();
}

Complex complex_of(const Json& v, const std::string& what) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw LabError(ErrorKind::ConfigError, what + " must be [re, im] or a number");
}

LaurentCoeffs laurent_from_json(const Json& j, const std::string& where) {
    LaurentCoeffs co;
    if (j.contains("a1")) co.a1 = complex_of(j["a1"], where + ".a1");
    if (j.contains("a0")) co.a0 = complex_of(j["a0"], where + ".a0");
    co.am1 = number_or(j, "am1", where, 0.0);
    if (j.contains("tail")) {
        if (!j["tail"].is_array()) throw LabError(ErrorKind::ConfigError, where + ".tail must be an array");
        for (const Json& t : j["tail"]) co.tail.push_back(complex_of(t, where + ".tail[]"));
    }
    co.validate();
    return co;
}

AsymptoticProfile exact_profile(const SymMat& a, const Vec& b, std::optional<double> c, double d, const SymMat& kernel,
                                double slope) {
    AsymptoticProfile p;
    p.A = a;
    p.b = b;
    p.c = c;
    p.d = d;
    p.L = kernel;
    p.decay_slope = slope;
    return p;
}

}  // namespace

Solution builtin(const std::string& name, const Json& params) {
    const std::string where = "builtin " + name;
    if (!params.is_object()) throw LabError(ErrorKind::BadParams, where + ": params must be an object");
    auto reject = [&](std::initializer_list<const char*> allowed) {
        try {
            reject_unknown_keys(params, allowed, where + " params");
        } catch (const LabError& e) {
            throw LabError(ErrorKind::BadParams, e.detail());
        }
    };
    const Json source = {{"kind", "builtin"}, {"name", name}, {"params", params}};
    if (name == "sin-exp") {
        reject({});
        return {sin_exp(), std::nullopt, EquationSpec::sle(2, 0.0), source};
    }
    if (name == "warren3d") {
        reject({});
        return {warren3d(), std::nullopt, std::nullopt, source};
    }
    if (name == "log-radial") {
        reject({"dim"});
        const int dim = integer_or(params, "dim", where, 2);
        if (dim != 2 && dim != 3) throw LabError(ErrorKind::BadParams, where + ": dim must be 2 or 3");
        return {log_radial(dim), std::nullopt, std::nullopt, source};
    }
    if (name == "ma-radial") {
        reject({"c"});
        const double c = number_or(params, "c", where, 1.0);
        if (!(c > 0.0)) throw LabError(ErrorKind::BadParams, where + ": c must be > 0");
        const SymMat id = SymMat::identity(2);
        return {ma_radial(c), exact_profile(id, Vec::zero(2), std::nullopt, 0.5 * c, id, -2.0), EquationSpec::ma(2),
                source};
    }
    if (name == "quadratic") {
        reject({"A", "b", "c"});
        if (!params.contains("A")) throw LabError(ErrorKind::BadParams, where + ": missing A");
        const SymMat a = symmat_from_json(params["A"], where + ".A");
        const Vec b = params.contains("b") ? vec_from_json(params["b"], where + ".b") : Vec::zero(a.dim());
        const double c = number_or(params, "c", where, 0.0);
        if (b.dim() != a.dim()) throw LabError(ErrorKind::BadParams, where + ": A and b dimensions differ");
        return {make_quadratic(a, b, c), exact_profile(a, b, c, 0.0, SymMat::zero(a.dim()), kNoDecaySlope),
                std::nullopt, source};
    }
    if (name == "ihh-oracle") {
        reject({"a1", "a0", "am1", "tail"});
        const LaurentCoeffs co = laurent_from_json(params, where);
        return {ihh_oracle(co), expected_ihh_profile(co), EquationSpec::ihh(2), source};
    }
    throw LabError(ErrorKind::UnknownName, "unknown builtin solution '" + name + "'");
}

Solution solution_from_json(const Json& j) {
    if (!j.is_object()) throw LabError(ErrorKind::ConfigError, "solution must be an object");
    const std::string kind = string_of(j, "kind", "solution");
    if (kind == "builtin") {
        reject_unknown_keys(j, {"kind", "name", "params"}, "solution");
        return builtin(string_of(j, "name", "solution"), j.contains("params") ? j["params"] : Json::object());
    }
    if (kind == "sle") {
        reject_unknown_keys(j, {"kind", "a1", "a0", "am1", "tail", "vartheta"}, "solution");
        const LaurentCoeffs co = laurent_from_json(j, "solution");
        const double vt = number(j, "vartheta", "solution");
        return {oracle_sle(co, vt), expected_profile(co, vt), EquationSpec::sle(2, 2.0 * vt), j};
    }
    throw LabError(ErrorKind::UnknownName, "unknown solution kind '" + kind + "'");
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LabError(ErrorKind::ConfigError, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw LabError(ErrorKind::ConfigError, "'" + path + "' is not valid JSON: " + e.what());
    }
}

Solution solution_from_flag(const std::string& flag, const Json& params) {
    const std::string prefix = "builtin:";
    if (flag.rfind(prefix, 0) == 0) return builtin(flag.substr(prefix.size()), params);
    if (!params.empty()) throw LabError(ErrorKind::ConfigError, "--params only applies to builtin solutions");
    if (!flag.empty() && flag.front() == '{') {
        try {
            return solution_from_json(Json::parse(flag));
        } catch (const Json::parse_error& e) {
            throw LabError(ErrorKind::ConfigError, std::string("inline solution is not valid JSON: ") + e.what());
        }
    }
    return solution_from_json(read_json_file(flag));
}

EquationSpec equation_from_json(const Json& j) {
    reject_unknown_keys(j, {"kind", "dim", "theta", "delta"}, "equation");
    EquationSpec spec;
    try {
        spec.kind = parse_equation_kind(string_of(j, "kind", "equation"));
    } catch (const LabError& e) {
        throw LabError(ErrorKind::UnknownName, e.detail());
    }
    spec.dim = integer_or(j, "dim", "equation", spec.kind == EquationKind::SIGMA2 ? 3 : 2);
    spec.theta = number_or(j, "theta", "equation", 0.0);
    spec.delta = number_or(j, "delta", "equation", 0.0);
    try {
        spec.validate();
    } catch (const LabError& e) {
        throw LabError(ErrorKind::ConfigError, e.detail());
    }
    return spec;
}

Json equation_to_json(const EquationSpec& spec) {
    Json j = {{"kind", std::string(to_string(spec.kind))}, {"dim", spec.dim}};
    if (spec.kind == EquationKind::SLE) j["theta"] = spec.theta;
    if (spec.kind == EquationKind::SIGMA2) j["delta"] = spec.delta;
    return j;
}

double seed_angle_offset(std::uint64_t seed, int points_per_shell) {
    if (seed == 0) return 0.0;
    std::mt19937_64 rng(seed);
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return unit * 2.0 * kPi / points_per_shell;
}

ShellSpec shells_from_json(const Json& j, std::uint64_t seed) {
    reject_unknown_keys(j, {"radii", "pointsPerShell"}, "shells");
    ShellSpec s;
    if (!j.contains("radii") || !j["radii"].is_array()) throw LabError(ErrorKind::ConfigError, "shells.radii must be an array");
    for (const Json& r : j["radii"]) {
        if (!r.is_number()) throw LabError(ErrorKind::ConfigError, "shells.radii entries must be numbers");
        s.radii.push_back(r.get<double>());
    }
    s.points_per_shell = integer_or(j, "pointsPerShell", "shells", 64);
    s.angle_offset = seed_angle_offset(seed, s.points_per_shell);
    try {
        s.validate(0.0);
    } catch (const LabError& e) {
        throw LabError(ErrorKind::ConfigError, e.detail());
    }
    return s;
}

BoundaryCurve curve_from_json(const Json& j, double inner_radius) {
    if (!j.is_object()) throw LabError(ErrorKind::ConfigError, "curve must be an object");
    const std::string type = string_of(j, "type", "curve");
    const Vec center = j.contains("center") ? vec_from_json(j["center"], "curve.center") : Vec::zero(2);
    const int order = integer_or(j, "order", "curve", 512);
    try {
        if (type == "circle") {
            reject_unknown_keys(j, {"type", "radius", "center", "order"}, "curve");
            double radius = 0.0;
            if (j.contains("radius") && j["radius"].is_string()) {
                if (j["radius"].get<std::string>() != "inner")
                    throw LabError(ErrorKind::ConfigError, "curve.radius must be a number or \"inner\"");
                radius = inner_radius;
            } else {
                radius = number(j, "radius", "curve");
            }
            return BoundaryCurve::circle(radius, center, order);
        }
        if (type == "ellipse") {
            reject_unknown_keys(j, {"type", "semiAxes", "angle", "center", "order"}, "curve");
            if (!j.contains("semiAxes")) throw LabError(ErrorKind::ConfigError, "curve: missing 'semiAxes'");
            const Vec axes = vec_from_json(j["semiAxes"], "curve.semiAxes");
            if (axes.dim() != 2) throw LabError(ErrorKind::ConfigError, "curve.semiAxes needs two numbers");
            return BoundaryCurve::ellipse(axes[0], axes[1], number_or(j, "angle", "curve", 0.0), center, order);
        }
    } catch (const LabError& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        throw LabError(ErrorKind::ConfigError, e.detail());
    }
    throw LabError(ErrorKind::UnknownName, "unknown curve type '" + type + "'");
}

std::vector<AnnulusGrid> SolverConfig::grids() const {
    std::vector<AnnulusGrid> out{AnnulusGrid(r_inner, r_outer, n_r, n_theta, spacing)};
    for (int k = 1; k < refinements; ++k) out.push_back(out.back().refined());
    return out;
}

SolverConfig solver_from_json(const Json& j) {
    reject_unknown_keys(j, {"rInner", "rOuter", "nR", "nTheta", "spacing", "refinements", "tolerance", "maxIterations"},
                        "solver");
    SolverConfig c;
    c.r_inner = number_or(j, "rInner", "solver", c.r_inner);
    c.r_outer = number_or(j, "rOuter", "solver", c.r_outer);
    c.n_r = integer_or(j, "nR", "solver", c.n_r);
    c.n_theta = integer_or(j, "nTheta", "solver", c.n_theta);
    c.refinements = integer_or(j, "refinements", "solver", c.refinements);
    c.options.tolerance = number_or(j, "tolerance", "solver", c.options.tolerance);
    c.options.max_iterations = integer_or(j, "maxIterations", "solver", c.options.max_iterations);
    if (j.contains("spacing")) {
        const std::string s = string_of(j, "spacing", "solver");
        if (s == "uniform")
            c.spacing = RadialSpacing::Uniform;
        else if (s == "log")
            c.spacing = RadialSpacing::Logarithmic;
        else
            throw LabError(ErrorKind::ConfigError, "solver.spacing must be \"uniform\" or \"log\"");
    }
    if (c.refinements < 1 || c.refinements > 4) throw LabError(ErrorKind::ConfigError, "solver.refinements must be 1..4");
    if (!(c.options.tolerance > 0.0) || c.options.max_iterations < 1)
        throw LabError(ErrorKind::ConfigError, "solver tolerance and maxIterations must be positive");
    try {
        (void)c.grids();
    } catch (const LabError& e) {
        throw LabError(ErrorKind::ConfigError, e.detail());
    }
    return c;
}

ExperimentConfig experiment_from_json(const Json& j) {
    reject_unknown_keys(j, {"equation", "solution", "shells", "curve", "solver", "outputs", "seed"}, "config");
    for (const char* key : {"equation", "solution", "shells", "curve"})
        if (!j.contains(key)) throw LabError(ErrorKind::ConfigError, std::string("config: missing '") + key + "'");
    ExperimentConfig c;
    c.equation = equation_from_json(j["equation"]);
    c.solution = j["solution"];
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw LabError(ErrorKind::ConfigError, "config.seed must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    c.shells = j["shells"];
    (void)shells_from_json(c.shells, c.seed);
    c.curve = j["curve"];
    if (!c.curve.is_object()) throw LabError(ErrorKind::ConfigError, "config.curve must be an object");
    if (j.contains("solver")) c.solver = solver_from_json(j["solver"]);
    if (j.contains("outputs")) {
        if (!j["outputs"].is_string()) throw LabError(ErrorKind::ConfigError, "config.outputs must be a string");
        c.outputs = j["outputs"].get<std::string>();
    }
    return c;
}

}  // namespace lab
