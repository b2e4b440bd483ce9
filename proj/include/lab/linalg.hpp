// SPDX-License-Identifier: MIT
//
// Small fixed-capacity linear algebra for dimensions 2 and 3: vectors,
// symmetric matrices with a closed-form eigensolver, and the spectral
// functions the rest of the lab builds on (phase, matrix functions).
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>

namespace lab {

inline constexpr double kPi = 3.14159265358979323846;

void require_dim(int dim);  // throws WrongDimension unless dim is 2 or 3

class Vec {
public:
    Vec() = default;
    explicit Vec(int dim);
    Vec(std::initializer_list<double> values);

    [[nodiscard]] static Vec zero(int dim) { return Vec(dim); }

    [[nodiscard]] int dim() const noexcept { return dim_; }
    double& operator[](int i) noexcept { return v_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const noexcept { return v_[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) noexcept;
    Vec& operator-=(const Vec& o) noexcept;
    Vec& operator*=(double s) noexcept;

    [[nodiscard]] double norm() const noexcept;
    [[nodiscard]] double norm_sq() const noexcept;

private:
    int dim_ = 0;
    std::array<double, 3> v_{};
};

[[nodiscard]] Vec operator+(Vec a, const Vec& b) noexcept;
[[nodiscard]] Vec operator-(Vec a, const Vec& b) noexcept;
[[nodiscard]] Vec operator-(Vec a) noexcept;
[[nodiscard]] Vec operator*(double s, Vec a) noexcept;
[[nodiscard]] Vec operator*(Vec a, double s) noexcept;
[[nodiscard]] double dot(const Vec& a, const Vec& b) noexcept;
[[nodiscard]] Vec cross(const Vec& a, const Vec& b) noexcept;  // dim 3 only

/// General (not necessarily symmetric) square matrix; used for eigenvector
/// frames and rotations.
class Mat {
public:
    Mat() = default;
    explicit Mat(int dim);
    [[nodiscard]] static Mat identity(int dim);
    [[nodiscard]] static Mat from_columns(const std::array<Vec, 3>& cols, int dim);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    double& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(3 * i + j)]; }

    [[nodiscard]] Vec column(int j) const;
    [[nodiscard]] Mat transpose() const;

private:
    int dim_ = 0;
    std::array<double, 9> a_{};
};

[[nodiscard]] Mat operator*(const Mat& a, const Mat& b);
[[nodiscard]] Vec operator*(const Mat& a, const Vec& x);

/// Symmetric matrix; only the upper triangle is stored, so entries(i,j) and
/// entries(j,i) are the same number.
class SymMat {
public:
    SymMat() = default;
    explicit SymMat(int dim);  // zero matrix

    [[nodiscard]] static SymMat zero(int dim) { return SymMat(dim); }
    [[nodiscard]] static SymMat identity(int dim);
    [[nodiscard]] static SymMat diag(const Vec& d);
    [[nodiscard]] static SymMat diag(std::initializer_list<double> d);
    /// Row-major upper triangle: (a00, a01, a11) or (a00, a01, a02, a11, a12, a22).
    [[nodiscard]] static SymMat from_upper(int dim, std::initializer_list<double> upper);
    /// Symmetric part of a general matrix.
    [[nodiscard]] static SymMat symmetric_part(const Mat& m);
    /// v v^T
    [[nodiscard]] static SymMat outer(const Vec& v);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    double& operator()(int i, int j) noexcept { return e_[index(i, j)]; }
    double operator()(int i, int j) const noexcept { return e_[index(i, j)]; }

    SymMat& operator+=(const SymMat& o) noexcept;
    SymMat& operator-=(const SymMat& o) noexcept;
    SymMat& operator*=(double s) noexcept;

    [[nodiscard]] double trace() const noexcept;
    [[nodiscard]] double det() const noexcept;
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] double frobenius() const noexcept;
    /// Frobenius inner product tr(A B).
    [[nodiscard]] double contract(const SymMat& o) const noexcept;
    [[nodiscard]] Mat to_mat() const;

private:
    [[nodiscard]] std::size_t index(int i, int j) const noexcept {
        if (i > j) std::swap(i, j);
        // upper triangle, row-major, packed by dimension
        return dim_ == 2 ? static_cast<std::size_t>(i + j)
                         : static_cast<std::size_t>(i == 0 ? j : (i == 1 ? 2 + j : 5));
    }

    int dim_ = 0;
    std::array<double, 6> e_{};
};

[[nodiscard]] SymMat operator+(SymMat a, const SymMat& b) noexcept;
[[nodiscard]] SymMat operator-(SymMat a, const SymMat& b) noexcept;
[[nodiscard]] SymMat operator*(double s, SymMat a) noexcept;
[[nodiscard]] Vec operator*(const SymMat& a, const Vec& x) noexcept;
[[nodiscard]] double quad_form(const SymMat& a, const Vec& x) noexcept;
/// R M R^T
[[nodiscard]] SymMat congruence(const SymMat& m, const Mat& r);

struct EigenDecomposition {
    Vec values;                  // ascending
    std::array<Vec, 3> vectors;  // vectors[k] pairs with values[k]; orthonormal

    [[nodiscard]] Mat frame() const;  // eigenvectors as columns
    [[nodiscard]] SymMat reconstruct() const;
};

/// Closed-form symmetric eigensolver for dim 2 and 3 with a cyclic Jacobi
/// fallback near repeated eigenvalues. Each eigenvector is sign-normalised so
/// its largest-magnitude component is positive.
[[nodiscard]] EigenDecomposition eig_sym(const SymMat& m);

/// Cyclic Jacobi; exposed so tests can compare the two routes.
[[nodiscard]] EigenDecomposition eig_sym_jacobi(const SymMat& m);

[[nodiscard]] double lambda_min(const SymMat& m);
[[nodiscard]] double lambda_max(const SymMat& m);

/// Lagrangian angle: sum of arctan of the eigenvalues.
[[nodiscard]] double phase(const SymMat& m);

/// f(M) = V f(Lambda) V^T.
[[nodiscard]] SymMat apply_spectral(const SymMat& m, const std::function<double(double)>& f);

[[nodiscard]] SymMat inverse(const SymMat& m);  // adjugate / det; throws SingularHessian
[[nodiscard]] SymMat square(const SymMat& m) noexcept;

[[nodiscard]] std::string to_string(const SymMat& m);
[[nodiscard]] std::string to_string(const Vec& v);

}  // namespace lab
