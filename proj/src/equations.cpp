// SPDX-License-Identifier: MIT
#include "lab/equations.hpp"

#include <cmath>

#include "lab/error.hpp"

namespace lab {

std::string_view to_string(EquationKind kind) noexcept {
    switch (kind) {
        case EquationKind::SLE: return "sle";
        case EquationKind::MA: return "ma";
        case EquationKind::SIGMA2: return "sigma2";
        case EquationKind::IHH: return "ihh";
    }
    return "?";
}

EquationKind parse_equation_kind(std::string_view name) {
    if (name == "sle") return EquationKind::SLE;
    if (name == "ma") return EquationKind::MA;
    if (name == "sigma2") return EquationKind::SIGMA2;
    if (name == "ihh") return EquationKind::IHH;
    throw LabError(ErrorKind::UnknownName, "unknown equation '" + std::string(name) + "'");
}

EquationSpec EquationSpec::sle(int dim, double theta) {
    EquationSpec s{EquationKind::SLE, dim, theta, 0.0};
    s.validate();
    return s;
}

EquationSpec EquationSpec::ma(int dim) {
    EquationSpec s{EquationKind::MA, dim, 0.0, 0.0};
    s.validate();
    return s;
}

EquationSpec EquationSpec::sigma2(int dim, double delta) {
    EquationSpec s{EquationKind::SIGMA2, dim, 0.0, delta};
    s.validate();
    return s;
}

EquationSpec EquationSpec::ihh(int dim) {
    EquationSpec s{EquationKind::IHH, dim, 0.0, 0.0};
    s.validate();
    return s;
}

bool EquationSpec::supercritical() const noexcept {
    return kind == EquationKind::SLE && std::abs(theta) > (dim - 2) * kPi / 2.0;
}

void EquationSpec::validate() const {
    require_dim(dim);
    switch (kind) {
        case EquationKind::SLE:
            if (!(std::abs(theta) < dim * kPi / 2.0))
                throw LabError(ErrorKind::BadParams, "SLE phase must satisfy |theta| < dim*pi/2");
            break;
        case EquationKind::SIGMA2:
            if (!(delta > 0.0)) throw LabError(ErrorKind::BadParams, "sigma2 needs delta > 0");
            if (dim < 3) throw LabError(ErrorKind::BadParams, "sigma2 needs dim >= 3");
            break;
        default: break;
    }
}

double sigma2_shift(int dim) { return std::sqrt(2.0 / (dim * (dim - 1.0))); }

double sigma2(const SymMat& m) {
    const Vec l = eig_sym(m).values;
    double s = 0.0;
    for (int i = 0; i < l.dim(); ++i)
        for (int j = i + 1; j < l.dim(); ++j) s += l[i] * l[j];
    return s;
}

double residual(const EquationSpec& spec, const SymMat& m) {
    if (m.dim() != spec.dim) throw LabError(ErrorKind::WrongDimension, "Hessian dimension differs from equation");
    switch (spec.kind) {
        case EquationKind::SLE: return phase(m) - spec.theta;
        case EquationKind::MA: return m.det() - 1.0;
        case EquationKind::SIGMA2: return sigma2(m) - 1.0;
        case EquationKind::IHH: {
            const Vec l = eig_sym(m).values;
            double s = 0.0;
            for (int i = 0; i < l.dim(); ++i) {
                if (std::abs(l[i]) < 1e-14) throw LabError(ErrorKind::SingularHessian, "IHH needs nonzero eigenvalues");
                s += 1.0 / l[i];
            }
            return s - 1.0;
        }
    }
    return 0.0;
}

double orientation(const EquationSpec& spec) noexcept { return spec.kind == EquationKind::IHH ? -1.0 : 1.0; }

double oriented_residual(const EquationSpec& spec, const SymMat& m) { return orientation(spec) * residual(spec, m); }

double residual_algebraic_2d(const EquationSpec& spec, const SymMat& m) {
    if (spec.dim != 2 || m.dim() != 2) throw LabError(ErrorKind::WrongDimension, "algebraic form is 2D only");
    switch (spec.kind) {
        case EquationKind::SLE: return std::cos(spec.theta) * m.trace() + std::sin(spec.theta) * (m.det() - 1.0);
        case EquationKind::IHH: return m.trace() - m.det();
        default: throw LabError(ErrorKind::BadParams, "algebraic form exists for SLE and IHH only");
    }
}

bool forms_consistent(const SymMat& m, double theta, double tol) {
    if (m.dim() != 2) throw LabError(ErrorKind::WrongDimension, "forms_consistent is 2D only");
    const EquationSpec spec{EquationKind::SLE, 2, theta, 0.0};
    return std::abs(residual(spec, m)) <= tol && std::abs(residual_algebraic_2d(spec, m)) <= tol;
}

bool admissible(const EquationSpec& spec, const SymMat& m) {
    switch (spec.kind) {
        case EquationKind::SLE: return spec.supercritical();
        case EquationKind::MA: return lambda_min(m) > 0.0;
        case EquationKind::SIGMA2: return lambda_min(m) > spec.delta - sigma2_shift(spec.dim);
        case EquationKind::IHH: return lambda_min(m) > 1.0;
    }
    return false;
}

LinearizedCoeffs linearization(const EquationSpec& spec, const SymMat& m) {
    if (!admissible(spec, m)) throw LabError(ErrorKind::NotAdmissible, "matrix outside the admissible set");
    switch (spec.kind) {
        case EquationKind::SLE: return {apply_spectral(m, [](double l) { return 1.0 / (1.0 + l * l); })};
        case EquationKind::MA: return {m.det() * inverse(m)};
        case EquationKind::SIGMA2: return {m.trace() * SymMat::identity(m.dim()) - m};
        case EquationKind::IHH: return {square(inverse(m))};
    }
    return {};
}

}  // namespace lab
