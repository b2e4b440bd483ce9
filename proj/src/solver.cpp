// SPDX-License-Identifier: MIT
#include "lab/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "lab/error.hpp"

namespace lab {

namespace {

constexpr int offset_index(int di, int dj) { return kStencilWidth * (di + 1) + (dj + kStencilReach); }

int wrap(int j, int n) { return ((j % n) + n) % n; }

bool node_admissible(const EquationSpec& spec, const SymMat& h) {
    switch (spec.kind) {
        case EquationKind::MA: return lambda_min(h) > 0.0;
        case EquationKind::IHH: return lambda_min(h) > 1.0;
        case EquationKind::SLE: return std::abs(phase(h) - spec.theta) < kPi / 2.0;
        case EquationKind::SIGMA2: break;
    }
    return false;
}

void check_solvable(const EquationSpec& spec) {
    spec.validate();
    if (spec.dim != 2) throw LabError(ErrorKind::WrongDimension, "the annulus solver is two-dimensional");
    if (spec.kind == EquationKind::SIGMA2) throw LabError(ErrorKind::WrongDimension, "sigma_2 needs dim >= 3");
    if (spec.kind == EquationKind::SLE && !spec.supercritical())
        throw LabError(ErrorKind::NotAdmissible, "SLE phase must be supercritical for the solver");
}

// Runs body(i) over interior rows i = 1..nR-2.
template <class Body>
void for_each_row(const AnnulusGrid& grid, Exec exec, Body&& body) {
    const int last = grid.n_r() - 2;
    if (exec == Exec::Serial) {
        for (int i = 1; i <= last; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(last + 1));
#pragma omp parallel for schedule(static)
    for (int i = 1; i <= last; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

SymMat apply_stencil(const HessianStencil& st, const AnnulusField& f, int i, int j) {
    const int nt = f.grid().n_theta();
    SymMat h = SymMat::zero(2);
    for (int di = -1; di <= 1; ++di)
        for (int dj = -kStencilReach; dj <= kStencilReach; ++dj)
            h += f(i + di, wrap(j + dj, nt)) * st.weight[static_cast<std::size_t>(offset_index(di, dj))];
    return h;
}

}  // namespace

std::string_view to_string(SolveStatus status) noexcept {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::DidNotConverge: return "did-not-converge";
        case SolveStatus::InadmissibleIterate: return "inadmissible-iterate";
    }
    return "?";
}

void SolveReport::require_converged() const {
    if (status == SolveStatus::DidNotConverge) throw LabError(ErrorKind::DidNotConverge, message);
    if (status == SolveStatus::InadmissibleIterate) throw LabError(ErrorKind::InadmissibleIterate, message);
}

HessianStencil hessian_stencil(const AnnulusGrid& grid, int i, int j) {
    const double h = grid.radial_step(), k = grid.theta_step();
    const double r = grid.r(i), t = grid.theta(j);
    // weights of the (radial coordinate, theta) differences; second order in
    // the radial coordinate, sixth order in theta
    std::array<double, kStencilSize> ws{}, wss{}, wt{}, wtt{}, wst{};
    auto at = [](int di, int dj) { return static_cast<std::size_t>(offset_index(di, dj)); };
    ws[at(1, 0)] = 0.5 / h;
    ws[at(-1, 0)] = -0.5 / h;
    wss[at(1, 0)] = wss[at(-1, 0)] = 1.0 / (h * h);
    wss[at(0, 0)] = -2.0 / (h * h);
    constexpr std::array<double, kStencilWidth> d1{-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0,
                                                  3.0 / 4.0,   -3.0 / 20.0, 1.0 / 60.0};
    constexpr std::array<double, kStencilWidth> d2{1.0 / 90.0, -3.0 / 20.0, 3.0 / 2.0, -49.0 / 18.0,
                                                  3.0 / 2.0,  -3.0 / 20.0, 1.0 / 90.0};
    for (int dj = -kStencilReach; dj <= kStencilReach; ++dj) {
        const auto m = static_cast<std::size_t>(dj + kStencilReach);
        wt[at(0, dj)] = d1[m] / k;
        wtt[at(0, dj)] = d2[m] / (k * k);
        wst[at(1, dj)] = 0.5 * d1[m] / (h * k);
        wst[at(-1, dj)] = -0.5 * d1[m] / (h * k);
    }

    const Vec radial{std::cos(t), std::sin(t)}, tangential{-std::sin(t), std::cos(t)};
    const SymMat rr = SymMat::outer(radial), tt = SymMat::outer(tangential);
    const SymMat rt = SymMat::outer(radial + tangential) - rr - tt;  // x^ t^T + t^ x^T
    const bool log_spacing = grid.spacing() == RadialSpacing::Logarithmic;

    HessianStencil st;
    for (std::size_t o = 0; o < kStencilSize; ++o) {
        // u_rr, u_r, u_rtheta in terms of the radial coordinate s (= r or log r)
        const double u_rr = log_spacing ? (wss[o] - ws[o]) / (r * r) : wss[o];
        const double u_r = log_spacing ? ws[o] / r : ws[o];
        const double u_rt = log_spacing ? wst[o] / r : wst[o];
        const double a = u_rr;
        const double b = u_r / r + wtt[o] / (r * r);
        const double c = u_rt / r - wt[o] / (r * r);
        st.weight[o] = a * rr + b * tt + c * rt;
    }
    return st;
}

SymMat grid_hessian(const AnnulusField& field, int i, int j) {
    const AnnulusGrid& g = field.grid();
    if (i < 1 || i > g.n_r() - 2) throw LabError(ErrorKind::BadParams, "grid_hessian needs an interior radial index");
    return apply_stencil(hessian_stencil(g, i, wrap(j, g.n_theta())), field, i, wrap(j, g.n_theta()));
}

DiscreteResidual discrete_residual(const EquationSpec& spec, const AnnulusField& field, Exec exec) {
    const AnnulusGrid& g = field.grid();
    const int nt = g.n_theta();
    const auto n = static_cast<std::size_t>((g.n_r() - 2) * nt);
    DiscreteResidual out;
    out.values.assign(n, 0.0);
    std::vector<char> ok(n, 1);
    for_each_row(g, exec, [&](int i) {
        for (int j = 0; j < nt; ++j) {
            const std::size_t k = static_cast<std::size_t>((i - 1) * nt + j);
            const SymMat h = apply_stencil(hessian_stencil(g, i, j), field, i, j);
            if (node_admissible(spec, h)) {
                out.values[k] = oriented_residual(spec, h);
            } else {
                ok[k] = 0;
                out.values[k] = std::numeric_limits<double>::quiet_NaN();
            }
        }
    });
    for (std::size_t k = 0; k < n; ++k) {
        if (!ok[k]) {
            out.admissible = false;
            out.inf_norm = std::numeric_limits<double>::infinity();
        } else if (out.admissible) {
            out.inf_norm = std::max(out.inf_norm, std::abs(out.values[k]));
        }
    }
    return out;
}

JacobianEntries assemble_jacobian(const EquationSpec& spec, const AnnulusField& field, Exec exec) {
    const AnnulusGrid& g = field.grid();
    const int nt = g.n_theta(), last = g.n_r() - 2;
    const auto n = static_cast<std::size_t>((g.n_r() - 2) * nt);
    constexpr std::size_t width = kStencilSize;
    std::vector<int> cols(width * n, -1);
    std::vector<double> vals(width * n, 0.0);
    for_each_row(g, exec, [&](int i) {
        for (int j = 0; j < nt; ++j) {
            const std::size_t k = static_cast<std::size_t>((i - 1) * nt + j);
            const HessianStencil st = hessian_stencil(g, i, j);
            const SymMat lin = linearization(spec, apply_stencil(st, field, i, j)).a;
            for (int di = -1; di <= 1; ++di) {
                const int ii = i + di;
                if (ii < 1 || ii > last) continue;
                for (int dj = -kStencilReach; dj <= kStencilReach; ++dj) {
                    const auto o = static_cast<std::size_t>(offset_index(di, dj));
                    const double w = lin.contract(st.weight[o]);
                    if (w == 0.0) continue;
                    cols[width * k + o] = (ii - 1) * nt + wrap(j + dj, nt);
                    vals[width * k + o] = w;
                }
            }
        }
    });
    JacobianEntries out;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t o = 0; o < width; ++o) {
            if (cols[width * k + o] < 0) continue;
            out.rows.push_back(static_cast<int>(k));
            out.cols.push_back(cols[width * k + o]);
            out.values.push_back(vals[width * k + o]);
        }
    }
    return out;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

class NewtonLinearSolver {
public:
    std::vector<double> solve(const JacobianEntries& jac, const std::vector<double>& rhs) {
        const auto n = static_cast<Eigen::Index>(rhs.size());
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(jac.values.size());
        for (std::size_t e = 0; e < jac.values.size(); ++e) triplets.emplace_back(jac.rows[e], jac.cols[e], jac.values[e]);
        SparseMatrix m(n, n);
        m.setFromTriplets(triplets.begin(), triplets.end());
        m.makeCompressed();
        if (!analyzed_) {
            lu_.analyzePattern(m);
            analyzed_ = true;
        }
        lu_.factorize(m);
        if (lu_.info() != Eigen::Success)
            throw LabError(ErrorKind::DidNotConverge, "Jacobian factorization failed: " + lu_.lastErrorMessage());
        Eigen::VectorXd b(n);
        for (Eigen::Index k = 0; k < n; ++k) b(k) = rhs[static_cast<std::size_t>(k)];
        const Eigen::VectorXd x = lu_.solve(b);
        return {x.data(), x.data() + n};
    }

private:
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
    bool analyzed_ = false;
};

std::vector<double> interior_of(const AnnulusField& f) {
    const auto nt = static_cast<std::size_t>(f.grid().n_theta());
    const auto v = f.values();
    return {v.begin() + static_cast<std::ptrdiff_t>(nt), v.end() - static_cast<std::ptrdiff_t>(nt)};
}

std::vector<double> negated(std::vector<double> v) {
    for (double& x : v) x = -x;
    return v;
}

}  // namespace

std::vector<double> newton_correction(const EquationSpec& spec, const AnnulusField& field, Exec exec) {
    check_solvable(spec);
    const DiscreteResidual res = discrete_residual(spec, field, exec);
    if (!res.admissible) throw LabError(ErrorKind::NotAdmissible, "field is not admissible at every interior node");
    NewtonLinearSolver solver;
    return solver.solve(assemble_jacobian(spec, field, exec), negated(res.values));
}

SolveReport solve_annulus(const EquationSpec& spec, const AnnulusGrid& grid, const std::vector<double>& inner_bc,
                          const std::vector<double>& outer_bc, const std::optional<AnnulusField>& init,
                          const SolveOptions& opts) {
    check_solvable(spec);
    const auto nt = static_cast<std::size_t>(grid.n_theta());
    if (inner_bc.size() != nt || outer_bc.size() != nt)
        throw LabError(ErrorKind::BadParams, "boundary arrays must have nTheta entries");
    AnnulusField field = AnnulusField::affine_blend(grid, inner_bc, outer_bc);
    if (init) {
        const AnnulusGrid& g = init->grid();
        if (g.n_r() != grid.n_r() || g.n_theta() != grid.n_theta() || g.r_inner() != grid.r_inner() ||
            g.r_outer() != grid.r_outer() || g.spacing() != grid.spacing())
            throw LabError(ErrorKind::BadParams, "initial field lives on a different grid");
        field = AnnulusField(grid, {init->values().begin(), init->values().end()}, inner_bc, outer_bc);
    }

    DiscreteResidual res = discrete_residual(spec, field, opts.exec);
    if (!res.admissible) throw LabError(ErrorKind::NotAdmissible, "initial field is not admissible at every interior node");

    SolveReport report{.field = field, .residual_trace = {}, .message = {}};
    report.residual_trace.push_back(res.inf_norm);
    NewtonLinearSolver linear;
    report.status = SolveStatus::DidNotConverge;
    while (true) {
        if (res.inf_norm <= opts.tolerance) {
            report.status = SolveStatus::Converged;
            break;
        }
        if (report.iterations >= opts.max_iterations) {
            report.message = "no convergence after " + std::to_string(opts.max_iterations) +
                             " Newton iterations, residual " + std::to_string(res.inf_norm);
            break;
        }
        const std::vector<double> step =
            linear.solve(assemble_jacobian(spec, report.field, opts.exec), negated(res.values));
        const std::vector<double> base = interior_of(report.field);
        double t = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= opts.max_halvings; ++halving) {
            std::vector<double> trial = base;
            for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += t * step[k];
            AnnulusField candidate = report.field.with_interior(trial);
            DiscreteResidual cres = discrete_residual(spec, candidate, opts.exec);
            if (cres.admissible && cres.inf_norm < res.inf_norm) {
                report.field = std::move(candidate);
                res = std::move(cres);
                accepted = true;
                break;
            }
            t *= 0.5;
            ++report.damping_events;
        }
        if (!accepted) {
            report.status = SolveStatus::InadmissibleIterate;
            report.message = "line search reached the damping floor 2^-" + std::to_string(opts.max_halvings) +
                             " at residual " + std::to_string(res.inf_norm);
            break;
        }
        ++report.iterations;
        report.residual_trace.push_back(res.inf_norm);
    }
    report.final_residual_inf = res.inf_norm;
    return report;
}

std::vector<ConvergenceRow> convergence_study(const EquationSpec& spec, const PotentialFn& oracle,
                                              const std::vector<AnnulusGrid>& grids, const SolveOptions& opts) {
    if (grids.empty()) throw LabError(ErrorKind::BadParams, "convergence study needs at least one grid");
    for (std::size_t k = 1; k < grids.size(); ++k) {
        const AnnulusGrid& a = grids[k - 1];
        const AnnulusGrid& b = grids[k];
        if (b.n_r() != 2 * a.n_r() - 1 || b.n_theta() != 2 * a.n_theta() || a.r_inner() != b.r_inner() ||
            a.r_outer() != b.r_outer() || a.spacing() != b.spacing())
            throw LabError(ErrorKind::BadParams, "grids must be nested by factor-2 refinement");
    }
    std::vector<ConvergenceRow> rows;
    for (const AnnulusGrid& grid : grids) {
        const AnnulusField exact = AnnulusField::sample(grid, oracle);
        const SolveReport rep = solve_annulus(spec, grid, {exact.inner_bc().begin(), exact.inner_bc().end()},
                                              {exact.outer_bc().begin(), exact.outer_bc().end()}, std::nullopt, opts);
        rep.require_converged();
        double scale = 0.0;
        for (double v : exact.values()) scale = std::max(scale, std::abs(v));
        const double floor = std::max(1e-12, 256.0 * std::numeric_limits<double>::epsilon() * scale);
        ConvergenceRow row{grid.radial_step(), grid.n_r(), grid.n_theta(), rep.field.max_diff(exact), std::nullopt,
                           rep.iterations};
        if (!rows.empty() && rows.back().max_error > floor && row.max_error > floor)
            row.ratio = rows.back().max_error / row.max_error;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lab
