/*
 * matrix.hpp
 *
 * Small dense matrices over exact (GMP) or floating scalars, plus the handful
 * of numerical kernels the rest of the library leans on: exact rational
 * solves, Hilbert projective metric on positive columns, and Euclidean
 * operator norms via symmetric power iteration.  Dimensions here are alphabet
 * sizes, so everything is O(d^3) with tiny d.
 */

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "sadic/core.hpp"

namespace sadic {

template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, T init = T())
        : rows_(rows), cols_(cols), data_(rows * cols, init) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw precondition_error("matrix: dimension mismatch in product");
        Matrix c(a.rows_, b.cols_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    T col_sum(std::size_t j) const {
        T s(0);
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
        return s;
    }

    bool positive() const {
        for (const T& x : data_)
            if (!(x > T(0))) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using RealMatrix = Matrix<double>;

inline std::vector<mpz_class> operator*(const IntMatrix& m, const std::vector<mpz_class>& v) {
    if (m.cols() != v.size()) throw precondition_error("matrix: vector dimension mismatch");
    std::vector<mpz_class> out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

inline RealMatrix to_real(const IntMatrix& m) {
    RealMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
    return r;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = mpq_class(m(i, j));
    return r;
}

/* log of a big positive integer without overflowing double */
inline double log_mpz(const mpz_class& z) {
    if (z <= 0) throw precondition_error("log_mpz: non-positive argument");
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

inline mpz_class determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("determinant: matrix not square");
    // fraction-free elimination over mpq; exact for these tiny dimensions
    std::size_t n = m.rows();
    RatMatrix a = to_rational(m);
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a(pivot, c) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            mpq_class f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    det.canonicalize();
    if (det.get_den() != 1) throw error("determinant: internal non-integer result");
    return det.get_num();
}

/* Exact solve m*y = x over the rationals; nullopt when m is singular. */
inline std::optional<std::vector<mpq_class>> solve_exact(const IntMatrix& m,
                                                         const std::vector<mpq_class>& x) {
    if (m.rows() != m.cols() || m.rows() != x.size())
        throw precondition_error("solve_exact: dimension mismatch");
    std::size_t n = m.rows();
    RatMatrix a = to_rational(m);
    std::vector<mpq_class> b = x;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a(pivot, c) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(c, j));
            std::swap(b[pivot], b[c]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            mpq_class f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
            b[r] -= f * b[c];
        }
    }
    std::vector<mpq_class> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = b[i] / a(i, i);
        y[i].canonicalize();
    }
    return y;
}

/*
 * Hilbert projective distance between positive vectors:
 *   d(x, y) = log max_i(x_i/y_i) + log max_i(y_i/x_i).
 * Vectors whose supports differ are at infinite distance.  Computed via exact
 * rational ratios so astronomically large cone columns stay representable.
 */
template <typename Vec>
inline double hilbert_distance(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw precondition_error("hilbert_distance: dimension mismatch");
    mpq_class max_xy(0), max_yx(0);
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        bool zx = (x[i] == 0), zy = (y[i] == 0);
        if (zx && zy) continue;
        if (zx != zy) return std::numeric_limits<double>::infinity();
        mpq_class rxy = mpq_class(x[i]) / mpq_class(y[i]);
        mpq_class ryx = mpq_class(y[i]) / mpq_class(x[i]);
        if (first || rxy > max_xy) max_xy = rxy;
        if (first || ryx > max_yx) max_yx = ryx;
        first = false;
    }
    if (first) return 0.0;  // both zero vectors
    mpq_class prod = max_xy * max_yx;
    prod.canonicalize();
    return log_mpz(prod.get_num()) - log_mpz(prod.get_den());
}

/* max over column pairs of the Hilbert distance; the cone contraction gauge */
inline double projective_diameter(const IntMatrix& m) {
    double diam = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t k = j + 1; k < m.cols(); ++k) {
            double d = hilbert_distance(m.col(j), m.col(k));
            if (d > diam) diam = d;
            if (std::isinf(diam)) return diam;
        }
    return diam;
}

namespace detail {

/* Largest eigenvalue of a symmetric PSD matrix by power iteration. */
inline double symmetric_top_eigenvalue(const RealMatrix& s) {
    std::size_t n = s.rows();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i + 1);
    double lambda = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w[i] += s(i, j) * v[j];
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        double next = norm;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (iter > 4 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda;
}

}  // namespace detail

/* Euclidean operator norm ||m||_2 = sqrt(lambda_max(m^T m)). */
inline double spectral_norm(const RealMatrix& m) {
    std::size_t n = m.cols();
    RealMatrix s(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m.rows(); ++k) acc += m(k, i) * m(k, j);
            s(i, j) = acc;
        }
    double lam = detail::symmetric_top_eigenvalue(s);
    return lam > 0.0 ? std::sqrt(lam) : 0.0;
}

/*
 * Spectral norm of an exact rational matrix.  The cancellation-prone part
 * (forming the matrix) has already happened exactly; here we only scale by
 * the largest entry so the remaining double computation is well conditioned.
 */
inline double spectral_norm(const RatMatrix& m) {
    mpq_class maxabs(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpq_class a = abs(m(i, j));
            if (a > maxabs) maxabs = a;
        }
    if (maxabs == 0) return 0.0;
    RealMatrix scaled(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpq_class r = m(i, j) / maxabs;
            scaled(i, j) = r.get_d();
        }
    double scale_log = log_mpz(maxabs.get_num()) - log_mpz(maxabs.get_den());
    return std::exp(scale_log) * spectral_norm(scaled);
}

/* max column sum; the l1-induced operator norm for non-negative matrices */
inline mpz_class l1_norm(const IntMatrix& m) {
    mpz_class best = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        mpz_class s = m.col_sum(j);
        if (s > best) best = s;
    }
    return best;
}

}  // namespace sadic
