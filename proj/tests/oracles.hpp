#pragma once

// Test-only reference computations. Nothing here calls into the library's
// SVD/eigen paths, so these can serve as independent oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ckg/matrix.hpp"

namespace oracle {

using ckg::ComplexMatrix;
using ckg::cplx;
using ckg::CVector;

inline ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s{};
            for (std::size_t p = 0; p < a.cols(); ++p) s += a(i, p) * b(p, j);
            c(i, j) = s;
        }
    return c;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

inline cplx naive_inner(const CVector& a, const CVector& b) {
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

inline CVector naive_apply(const ComplexMatrix& a, const CVector& v) {
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline double max_abs_diff(const CVector& a, const CVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Gauss-Jordan with partial pivoting.
inline ComplexMatrix inverse(ComplexMatrix a) {
    const std::size_t n = a.rows();
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) == 0.0) throw std::runtime_error("oracle::inverse: singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        const cplx d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Column rank by modified Gram-Schmidt with column pivoting; a residual column
// counts when its norm exceeds rel_cutoff times the largest original column norm.
inline std::size_t rank(const ComplexMatrix& a, double rel_cutoff) {
    std::vector<CVector> cols;
    double max_norm = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        cols.push_back(a.col(j));
        double s = 0;
        for (auto z : cols.back()) s += std::norm(z);
        max_norm = std::max(max_norm, std::sqrt(s));
    }
    if (max_norm == 0.0) return 0;
    std::size_t r = 0;
    std::vector<bool> used(cols.size(), false);
    for (;;) {
        std::size_t best = cols.size();
        double best_norm = 0.0;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (used[j]) continue;
            double s = 0;
            for (auto z : cols[j]) s += std::norm(z);
            if (std::sqrt(s) > best_norm) {
                best_norm = std::sqrt(s);
                best = j;
            }
        }
        if (best == cols.size() || best_norm <= rel_cutoff * max_norm) return r;
        used[best] = true;
        ++r;
        CVector q = cols[best];
        for (auto& z : q) z /= best_norm;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (used[j]) continue;
                const cplx c = naive_inner(cols[j], q);
                for (std::size_t i = 0; i < q.size(); ++i) cols[j][i] -= c * q[i];
            }
        }
    }
}

// Leading principal minors of a 2x2 Hermitian matrix.
inline bool psd_2x2(const ComplexMatrix& h, double eps = 1e-14) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double det = a * d - std::norm(h(0, 1));
    return a >= -eps && d >= -eps && det >= -eps;
}

inline CVector random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(n);
    for (auto& z : v) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {re, im};
    }
    return v;
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(r, c);
    for (auto& z : m.entries()) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {re, im};
    }
    return m;
}

// Random n x n matrix of rank at most r.
inline ComplexMatrix random_rank(std::size_t n, std::size_t r, std::mt19937_64& rng) {
    return naive_product(random_matrix(n, r, rng), random_matrix(r, n, rng));
}

// Quadratic form <H f, f> (real part).
inline double quadratic(const ComplexMatrix& h, const CVector& f) {
    return naive_inner(naive_apply(h, f), f).real();
}

inline double vec_norm(const CVector& v) {
    double s = 0;
    for (auto z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace oracle
