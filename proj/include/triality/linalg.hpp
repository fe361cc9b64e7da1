// linalg.hpp — Minimal complex dense linear algebra for 2- and 4-dimensional
// state spaces: tensor products, adjoints, partial trace, Hermitian eigensolve.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace triality {

using cx = std::complex<double>;

inline bool is_finite(cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// --------------------------- CVector ----------------------------------------

// Complex amplitude vector with dimension fixed at construction.
class CVector {
public:
    explicit CVector(std::size_t dim) : e_(dim, cx(0.0, 0.0)) {
        if (dim == 0) throw std::invalid_argument("CVector: dimension must be > 0");
    }

    CVector(std::initializer_list<cx> entries) : e_(entries) {
        if (e_.empty()) throw std::invalid_argument("CVector: dimension must be > 0");
        check_finite();
    }

    explicit CVector(std::vector<cx> entries) : e_(std::move(entries)) {
        if (e_.empty()) throw std::invalid_argument("CVector: dimension must be > 0");
        check_finite();
    }

    // |k⟩ in a dim-dimensional space
    static CVector basis(std::size_t dim, std::size_t k) {
        CVector v(dim);
        if (k >= dim) throw std::out_of_range("CVector::basis: index out of range");
        v[k] = cx(1.0, 0.0);
        return v;
    }

    std::size_t dim() const { return e_.size(); }

    cx& operator[](std::size_t i) { return e_[i]; }
    const cx& operator[](std::size_t i) const { return e_[i]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& z : e_) s += std::norm(z);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    friend CVector operator*(cx a, const CVector& v) {
        CVector r = v;
        for (auto& z : r.e_) z *= a;
        return r;
    }
    friend CVector operator+(const CVector& a, const CVector& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("CVector: dimension mismatch");
        CVector r = a;
        for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
        return r;
    }
    friend CVector operator-(const CVector& a, const CVector& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("CVector: dimension mismatch");
        CVector r = a;
        for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
        return r;
    }

private:
    void check_finite() const {
        for (const auto& z : e_)
            if (!is_finite(z)) throw std::invalid_argument("CVector: entries must be finite");
    }

    std::vector<cx> e_;
};

// ⟨a|b⟩ with the conjugate on the first argument
inline cx inner(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// --------------------------- CMatrix ----------------------------------------

// Row-major complex matrix.
class CMatrix {
public:
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, cx(0.0, 0.0)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("CMatrix: dimensions must be > 0");
    }

    CMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("CMatrix: dimensions must be > 0");
        if (e_.size() != rows * cols) throw std::invalid_argument("CMatrix: entry count mismatch");
        for (const auto& z : e_)
            if (!is_finite(z)) throw std::invalid_argument("CMatrix: entries must be finite");
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = cx(1.0, 0.0);
        return m;
    }

    // |i⟩⟨j| in an n-dimensional space
    static CMatrix basis_op(std::size_t n, std::size_t i, std::size_t j) {
        if (i >= n || j >= n) throw std::out_of_range("CMatrix::basis_op: index out of range");
        CMatrix m(n, n);
        m(i, j) = cx(1.0, 0.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cx& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const cx& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    CMatrix adjoint() const {
        CMatrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    cx trace() const {
        if (rows_ != cols_) throw std::invalid_argument("CMatrix::trace: matrix not square");
        cx s(0.0, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : e_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& z : e_) s += std::norm(z);
        return std::sqrt(s);
    }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("CMatrix: product dimension mismatch");
        CMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cx aik = a(i, k);
                if (aik == cx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend CVector operator*(const CMatrix& a, const CVector& v) {
        if (a.cols_ != v.dim()) throw std::invalid_argument("CMatrix: apply dimension mismatch");
        CVector r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            cx s(0.0, 0.0);
            for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }
    friend CMatrix operator*(cx s, const CMatrix& a) {
        CMatrix r = a;
        for (auto& z : r.e_) z *= s;
        return r;
    }
    friend CMatrix operator+(const CMatrix& a, const CMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("CMatrix: sum dimension mismatch");
        CMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("CMatrix: difference dimension mismatch");
        CMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }

private:
    std::size_t rows_, cols_;
    std::vector<cx> e_;
};

// tr(AB) without forming the product
inline cx trace_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw std::invalid_argument("trace_product: dimension mismatch");
    cx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
    return s;
}

// |ψ⟩⟨φ|
inline CMatrix outer(const CVector& psi, const CVector& phi) {
    CMatrix m(psi.dim(), phi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i)
        for (std::size_t j = 0; j < phi.dim(); ++j) m(i, j) = psi[i] * std::conj(phi[j]);
    return m;
}

// max |A - A†| entry
inline double hermiticity_defect(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermiticity_defect: matrix not square");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

// --------------------------- Tensor products ---------------------------------

// Canonical basis order throughout: path ⊗ polarization, i.e.
// |a,h⟩, |a,v⟩, |b,h⟩, |b,v⟩. Operands must be 2-dimensional.
inline CVector tensor(const CVector& a, const CVector& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw std::invalid_argument("tensor: operands must be 2-dimensional");
    CVector r(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[2 * i + j] = a[i] * b[j];
    return r;
}

inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
        throw std::invalid_argument("tensor: operands must be 2x2");
    CMatrix r(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

// --------------------------- Partial trace -----------------------------------

enum class Subsystem { path, polarization };

// Reduced operator over the kept subsystem of a 4x4 path⊗polarization operator.
inline CMatrix partial_trace(const CMatrix& rho, Subsystem keep) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("partial_trace: input must be 4x4");
    CMatrix r(2, 2);
    if (keep == Subsystem::path) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k) r(i, j) += rho(2 * i + k, 2 * j + k);
    } else {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k) r(i, j) += rho(2 * k + i, 2 * k + j);
    }
    return r;
}

// --------------------------- Hermitian eigensolve -----------------------------

struct EigResult {
    std::vector<double> eigenvalues;   // descending
    std::vector<CVector> eigenvectors; // matching order, orthonormal
};

// Cyclic Jacobi rotations on a Hermitian matrix. Dimensions here never exceed
// 4, so convergence takes a handful of sweeps. Input must be Hermitian within
// 1e-10; the iteration stops at off-diagonal Frobenius norm 1e-12 (relative).
inline EigResult hermitian_eig(const CMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    const double defect = hermiticity_defect(m);
    if (defect > 1e-10)
        throw std::invalid_argument("hermitian_eig: input not Hermitian, asymmetry " +
                                    std::to_string(defect));
    const std::size_t n = m.rows();

    // symmetrize away the sub-tolerance defect
    CMatrix a = cx(0.5, 0.0) * (m + m.adjoint());
    CMatrix v = CMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                if (p != q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-12 * scale) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx z = a(p, q);
                const double r = std::abs(z);
                if (r <= 1e-300) continue;
                const double phi = std::arg(z);
                // Absorb the phase, then a real Jacobi rotation on [[app,r],[r,aqq]].
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                CMatrix j = CMatrix::identity(n);
                j(p, p) = cx(c, 0.0);
                j(p, q) = cx(s, 0.0);
                j(q, p) = -s * std::polar(1.0, -phi);
                j(q, q) = c * std::polar(1.0, -phi);
                a = j.adjoint() * a * j;
                v = v * j;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return lam[x] > lam[y]; });

    EigResult res;
    for (std::size_t k : order) {
        res.eigenvalues.push_back(lam[k]);
        CVector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
        res.eigenvectors.push_back(col);
    }
    return res;
}

// Hermitian PSD square root via eigendecomposition; negative tail clipped.
inline CMatrix sqrt_psd(const CMatrix& m) {
    const EigResult eig = hermitian_eig(m);
    const std::size_t n = m.rows();
    CMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = std::max(eig.eigenvalues[k], 0.0);
        const double s = std::sqrt(lam);
        const CVector& u = eig.eigenvectors[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) += s * u[i] * std::conj(u[j]);
    }
    return r;
}

namespace detail {

// Cholesky A = L L† for a Hermitian positive-definite matrix; L lower.
inline CMatrix cholesky_lower(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("cholesky_lower: matrix not square");
    const std::size_t n = a.rows();
    CMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            if (i == j) {
                if (s.real() <= 0.0)
                    throw std::invalid_argument("cholesky_lower: matrix not positive definite");
                l(i, j) = cx(std::sqrt(s.real()), 0.0);
            } else {
                l(i, j) = s / l(j, j).real();
            }
        }
    }
    return l;
}

// Gaussian elimination with partial pivoting for a small real system Ax = b.
inline std::vector<double> solve_real_linear(std::vector<std::vector<double>> a,
                                             std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300)
            throw std::invalid_argument("solve_real_linear: singular system");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace detail

} // namespace triality
