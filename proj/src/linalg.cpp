// SPDX-License-Identifier: MIT
#include "lab/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "lab/error.hpp"

namespace lab {

void require_dim(int dim) {
    if (dim != 2 && dim != 3) {
        throw LabError(ErrorKind::WrongDimension, "dimension must be 2 or 3, got " + std::to_string(dim));
    }
}

// ---------------------------------------------------------------------------
// Vec

Vec::Vec(int dim) : dim_(dim) {}

Vec::Vec(std::initializer_list<double> values) : dim_(static_cast<int>(values.size())) {
    require_dim(dim_);
    std::copy(values.begin(), values.end(), v_.begin());
}

Vec& Vec::operator+=(const Vec& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
}

Vec& Vec::operator*=(double s) noexcept {
    for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
    return *this;
}

double Vec::norm_sq() const noexcept { return dot(*this, *this); }
double Vec::norm() const noexcept { return std::sqrt(norm_sq()); }

Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
Vec operator-(Vec a) noexcept { return a *= -1.0; }
Vec operator*(double s, Vec a) noexcept { return a *= s; }
Vec operator*(Vec a, double s) noexcept { return a *= s; }

double dot(const Vec& a, const Vec& b) noexcept {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

Vec cross(const Vec& a, const Vec& b) noexcept {
    return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(int dim) : dim_(dim) {}

Mat Mat::identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::from_columns(const std::array<Vec, 3>& cols, int dim) {
    Mat m(dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][i];
    return m;
}

Vec Mat::column(int j) const {
    Vec v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = (*this)(i, j);
    return v;
}

Mat Mat::transpose() const {
    Mat t(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat operator*(const Mat& a, const Mat& b) {
    Mat c(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            double s = 0.0;
            for (int k = 0; k < a.dim(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

Vec operator*(const Mat& a, const Vec& x) {
    Vec y(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        double s = 0.0;
        for (int k = 0; k < a.dim(); ++k) s += a(i, k) * x[k];
        y[i] = s;
    }
    return y;
}

// ---------------------------------------------------------------------------
// SymMat

SymMat::SymMat(int dim) : dim_(dim) { require_dim(dim); }

SymMat SymMat::identity(int dim) {
    SymMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

SymMat SymMat::diag(const Vec& d) {
    SymMat m(d.dim());
    for (int i = 0; i < d.dim(); ++i) m(i, i) = d[i];
    return m;
}

SymMat SymMat::diag(std::initializer_list<double> d) { return diag(Vec(d)); }

SymMat SymMat::from_upper(int dim, std::initializer_list<double> upper) {
    SymMat m(dim);
    if (upper.size() != static_cast<std::size_t>(dim * (dim + 1) / 2)) {
        throw LabError(ErrorKind::BadParams, "upper-triangle length does not match dimension");
    }
    auto it = upper.begin();
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) m(i, j) = *it++;
    return m;
}

SymMat SymMat::symmetric_part(const Mat& a) {
    SymMat m(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j) m(i, j) = 0.5 * (a(i, j) + a(j, i));
    return m;
}

SymMat SymMat::outer(const Vec& v) {
    SymMat m(v.dim());
    for (int i = 0; i < v.dim(); ++i)
        for (int j = i; j < v.dim(); ++j) m(i, j) = v[i] * v[j];
    return m;
}

SymMat& SymMat::operator+=(const SymMat& o) noexcept {
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
}

SymMat& SymMat::operator-=(const SymMat& o) noexcept {
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
}

SymMat& SymMat::operator*=(double s) noexcept {
    for (double& x : e_) x *= s;
    return *this;
}

double SymMat::trace() const noexcept {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymMat::det() const noexcept {
    const auto& m = *this;
    if (dim_ == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2)) - m(0, 1) * (m(0, 1) * m(2, 2) - m(1, 2) * m(0, 2)) +
           m(0, 2) * (m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2));
}

double SymMat::max_abs() const noexcept {
    double a = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j) a = std::max(a, std::abs((*this)(i, j)));
    return a;
}

double SymMat::frobenius() const noexcept { return std::sqrt(contract(*this)); }

double SymMat::contract(const SymMat& o) const noexcept {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * o(i, j);
    return s;
}

Mat SymMat::to_mat() const {
    Mat a(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) a(i, j) = (*this)(i, j);
    return a;
}

SymMat operator+(SymMat a, const SymMat& b) noexcept { return a += b; }
SymMat operator-(SymMat a, const SymMat& b) noexcept { return a -= b; }
SymMat operator*(double s, SymMat a) noexcept { return a *= s; }

Vec operator*(const SymMat& a, const Vec& x) noexcept {
    Vec y(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        double s = 0.0;
        for (int k = 0; k < a.dim(); ++k) s += a(i, k) * x[k];
        y[i] = s;
    }
    return y;
}

double quad_form(const SymMat& a, const Vec& x) noexcept { return dot(x, a * x); }

SymMat congruence(const SymMat& m, const Mat& r) {
    return SymMat::symmetric_part(r * m.to_mat() * r.transpose());
}

// ---------------------------------------------------------------------------
// Eigen decomposition

Mat EigenDecomposition::frame() const { return Mat::from_columns(vectors, values.dim()); }

SymMat EigenDecomposition::reconstruct() const {
    SymMat m(values.dim());
    for (int k = 0; k < values.dim(); ++k) m += values[k] * SymMat::outer(vectors[static_cast<std::size_t>(k)]);
    return m;
}

namespace {

void normalise_sign(Vec& v) {
    int best = 0;
    for (int i = 1; i < v.dim(); ++i)
        if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
    if (v[best] < 0.0) v *= -1.0;
}

void sort_ascending(EigenDecomposition& e) {
    const int n = e.values.dim();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (e.values[b] < e.values[a]) {
                std::swap(e.values[a], e.values[b]);
                std::swap(e.vectors[static_cast<std::size_t>(a)], e.vectors[static_cast<std::size_t>(b)]);
            }
    for (int k = 0; k < n; ++k) normalise_sign(e.vectors[static_cast<std::size_t>(k)]);
}

double scale_of(const SymMat& m) { return 1.0 + m.max_abs(); }

bool decomposition_ok(const SymMat& m, const EigenDecomposition& e) {
    const int n = m.dim();
    const double tol = 1e-13 * scale_of(m);
    if ((e.reconstruct() - m).max_abs() > tol) return false;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            double g = dot(e.vectors[static_cast<std::size_t>(a)], e.vectors[static_cast<std::size_t>(b)]);
            if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-13) return false;
        }
    return true;
}

// 2x2 closed form with eigenvalues ordered (min, max). Returns false when the
// discriminant is below the fallback threshold.
bool eig2_closed(double a, double b, double d, double scale, double& lo, double& hi, Vec& vlo, Vec& vhi) {
    const double mean = 0.5 * (a + d);
    const double half = 0.5 * (a - d);
    const double rad = std::hypot(half, b);
    lo = mean - rad;
    hi = mean + rad;
    if (rad < 1e-14 * scale) return false;
    Vec v = half >= 0.0 ? Vec{half + rad, b} : Vec{b, rad - half};
    v *= 1.0 / v.norm();
    vhi = v;
    vlo = Vec{-v[1], v[0]};
    return true;
}

EigenDecomposition eig3_closed(const SymMat& m, bool& ok) {
    ok = false;
    EigenDecomposition e{Vec(3), {Vec(3), Vec(3), Vec(3)}};
    const double scale = scale_of(m);
    const double off = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
    const double q = m.trace() / 3.0;
    const double d0 = m(0, 0) - q, d1 = m(1, 1) - q, d2 = m(2, 2) - q;
    const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off;
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-14 * scale) return e;

    SymMat b = m - q * SymMat::identity(3);
    b *= 1.0 / p;
    const double r = std::clamp(0.5 * b.det(), -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double l_max = q + 2.0 * p * std::cos(phi);
    const double l_min = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    const double l_mid = 3.0 * q - l_max - l_min;

    // Resolve the best-separated eigenvalue by cross products, then reduce the
    // complementary plane to a 2x2 problem.
    const bool max_isolated = (l_max - l_mid) >= (l_mid - l_min);
    const double l_iso = max_isolated ? l_max : l_min;
    if (std::abs(l_max - l_min) < 1e-14 * scale) return e;

    SymMat shifted = m - l_iso * SymMat::identity(3);
    Vec r0{shifted(0, 0), shifted(0, 1), shifted(0, 2)};
    Vec r1{shifted(1, 0), shifted(1, 1), shifted(1, 2)};
    Vec r2{shifted(2, 0), shifted(2, 1), shifted(2, 2)};
    std::array<Vec, 3> cands{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k)
        if (cands[k].norm_sq() > cands[best].norm_sq()) best = k;
    Vec v_iso = cands[best];
    const double nv = v_iso.norm();
    if (nv < 1e-150) return e;
    v_iso *= 1.0 / nv;

    Vec u = std::abs(v_iso[0]) > std::abs(v_iso[1]) ? Vec{-v_iso[2], 0.0, v_iso[0]} : Vec{0.0, v_iso[2], -v_iso[1]};
    u *= 1.0 / u.norm();
    Vec w = cross(v_iso, u);

    const double a = quad_form(m, u);
    const double bb = dot(u, m * w);
    const double d = quad_form(m, w);
    double lo = 0, hi = 0;
    Vec plo(2), phi_(2);
    if (!eig2_closed(a, bb, d, scale, lo, hi, plo, phi_)) {
        // repeated pair: any orthonormal basis of the plane works
        const double lam = 0.5 * (a + d);
        lo = hi = lam;
        plo = Vec{1.0, 0.0};
        phi_ = Vec{0.0, 1.0};
    }
    Vec vlo = plo[0] * u + plo[1] * w;
    Vec vhi = phi_[0] * u + phi_[1] * w;

    e.values = Vec{quad_form(m, v_iso), lo, hi};
    e.vectors = {v_iso, vlo, vhi};
    sort_ascending(e);
    ok = true;
    return e;
}

}  // namespace

EigenDecomposition eig_sym_jacobi(const SymMat& m) {
    const int n = m.dim();
    Mat a = m.to_mat();
    Mat v = Mat::identity(n);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off == 0.0) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    EigenDecomposition e{Vec(n), {Vec(n), Vec(n), Vec(n)}};
    for (int k = 0; k < n; ++k) {
        e.values[k] = a(k, k);
        e.vectors[static_cast<std::size_t>(k)] = v.column(k);
    }
    sort_ascending(e);
    return e;
}

EigenDecomposition eig_sym(const SymMat& m) {
    require_dim(m.dim());
    if (m.dim() == 2) {
        double lo = 0, hi = 0;
        Vec vlo(2), vhi(2);
        if (eig2_closed(m(0, 0), m(0, 1), m(1, 1), scale_of(m), lo, hi, vlo, vhi)) {
            EigenDecomposition e{Vec{lo, hi}, {vlo, vhi, Vec(2)}};
            sort_ascending(e);
            if (decomposition_ok(m, e)) return e;
        }
        return eig_sym_jacobi(m);
    }
    bool ok = false;
    EigenDecomposition e = eig3_closed(m, ok);
    if (ok && decomposition_ok(m, e)) return e;
    return eig_sym_jacobi(m);
}

double lambda_min(const SymMat& m) { return eig_sym(m).values[0]; }
double lambda_max(const SymMat& m) { return eig_sym(m).values[m.dim() - 1]; }

double phase(const SymMat& m) {
    const Vec l = eig_sym(m).values;
    double s = 0.0;
    for (int i = 0; i < l.dim(); ++i) s += std::atan(l[i]);
    return s;
}

SymMat apply_spectral(const SymMat& m, const std::function<double(double)>& f) {
    const EigenDecomposition e = eig_sym(m);
    SymMat out(m.dim());
    for (int k = 0; k < m.dim(); ++k) out += f(e.values[k]) * SymMat::outer(e.vectors[static_cast<std::size_t>(k)]);
    return out;
}

SymMat inverse(const SymMat& m) {
    const double det = m.det();
    const double scale = std::pow(m.max_abs(), m.dim());
    if (!(std::abs(det) > 1e-300) || std::abs(det) < 1e-15 * scale) {
        throw LabError(ErrorKind::SingularHessian, "matrix is numerically singular");
    }
    SymMat inv(m.dim());
    if (m.dim() == 2) {
        inv(0, 0) = m(1, 1) / det;
        inv(1, 1) = m(0, 0) / det;
        inv(0, 1) = -m(0, 1) / det;
        return inv;
    }
    inv(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2)) / det;
    inv(0, 1) = (m(0, 2) * m(1, 2) - m(0, 1) * m(2, 2)) / det;
    inv(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / det;
    inv(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(0, 2)) / det;
    inv(1, 2) = (m(0, 1) * m(0, 2) - m(0, 0) * m(1, 2)) / det;
    inv(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1)) / det;
    return inv;
}

SymMat square(const SymMat& m) noexcept {
    SymMat out(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i; j < m.dim(); ++j) {
            double s = 0.0;
            for (int k = 0; k < m.dim(); ++k) s += m(i, k) * m(k, j);
            out(i, j) = s;
        }
    return out;
}

std::string to_string(const Vec& v) {
    std::string s = "(";
    char buf[32];
    for (int i = 0; i < v.dim(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", v[i]);
        s += buf;
    }
    return s + ")";
}

std::string to_string(const SymMat& m) {
    std::string s = "[";
    for (int i = 0; i < m.dim(); ++i) {
        Vec row(m.dim());
        for (int j = 0; j < m.dim(); ++j) row[j] = m(i, j);
        s += (i ? ", " : "") + to_string(row);
    }
    return s + "]";
}

}  // namespace lab
