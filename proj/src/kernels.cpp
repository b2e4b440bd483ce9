// SPDX-License-Identifier: MIT
#include "lab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace lab {

namespace {

// Runs body(k) for k in [0, n); exceptions thrown inside the parallel region
// are captured and rethrown after it (first index wins, as in the serial path).
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
    if (exec == Exec::Serial) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        try {
            body(static_cast<std::size_t>(k));
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<Jet> evaluate_points(const PotentialFn& p, std::span<const Vec> points, Exec exec) {
    std::vector<Jet> out(points.size());
    for_each_index(points.size(), exec, [&](std::size_t k) { out[k] = p.eval(points[k]); });
    return out;
}

double max_abs_residual(const EquationSpec& spec, const PotentialFn& p, std::span<const Vec> points, Exec exec) {
    std::vector<double> res(points.size());
    for_each_index(points.size(), exec,
                   [&](std::size_t k) { res[k] = std::abs(residual(spec, p.hessian(points[k]))); });
    double m = 0.0;
    for (double r : res) m = std::max(m, r);
    return m;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace lab
