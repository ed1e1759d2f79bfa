#include "ckg/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "ckg/errors.hpp"

namespace ckg {

namespace {

using EigenMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMatrix to_eigen(const ComplexMatrix& m) {
    EigenMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    std::copy(m.entries().begin(), m.entries().end(), out.data());
    return out;
}

template <typename Derived>
ComplexMatrix from_eigen(const Eigen::MatrixBase<Derived>& m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
        }
    }
    return out;
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square()) {
        throw DimensionMismatch(std::string(what) + ": expected a square matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

double spectral_radius(const HermitianEigen& e) {
    if (e.eigenvalues.empty()) return 0.0;
    return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

// Columns idx of m.
ComplexMatrix select_columns(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
    ComplexMatrix out(m.rows(), idx.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(i, idx[j]);
    }
    return out;
}

}  // namespace

void TolerancePolicy::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0)) {
            throw InvalidArgument(std::string("tolerance ") + name + " must lie in (0, 1)");
        }
    };
    check(rel_rank_cutoff, "rel_rank_cutoff");
    check(psd_slack, "psd_slack");
    check(residual_tol, "residual_tol");
}

SingularValueDecomposition svd(const ComplexMatrix& m) {
    const std::size_t p = std::min(m.rows(), m.cols());
    if (p == 0) return {ComplexMatrix(m.rows(), 0), {}, ComplexMatrix(m.cols(), 0)};
    // Jacobi SVD: fixed sweep order, no randomization.
    const Eigen::JacobiSVD<EigenMatrix> solver(to_eigen(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
    SingularValueDecomposition out;
    out.u = from_eigen(solver.matrixU());
    out.v = from_eigen(solver.matrixV());
    const auto& s = solver.singularValues();
    out.singular_values.assign(s.data(), s.data() + s.size());
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (std::min(m.rows(), m.cols()) == 0) return {};
    const Eigen::JacobiSVD<EigenMatrix> solver(to_eigen(m));
    const auto& s = solver.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::size_t numerical_rank(const ComplexMatrix& m, const TolerancePolicy& tol) {
    const auto s = singular_values(m);
    if (s.empty() || s.front() == 0.0) return 0;
    const double cutoff = tol.rel_rank_cutoff * s.front();
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double x) { return x > cutoff; }));
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& m, const TolerancePolicy& tol) {
    ComplexMatrix out(m.cols(), m.rows());
    const auto d = svd(m);
    if (d.singular_values.empty() || d.singular_values.front() == 0.0) return out;
    const double cutoff = tol.rel_rank_cutoff * d.singular_values.front();
    for (std::size_t k = 0; k < d.singular_values.size(); ++k) {
        const double s = d.singular_values[k];
        if (s <= cutoff) break;
        const double inv = 1.0 / s;
        for (std::size_t i = 0; i < m.cols(); ++i) {
            const cplx vik = d.v(i, k) * inv;
            for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) += vik * std::conj(d.u(j, k));
        }
    }
    return out;
}

double operator_norm(const ComplexMatrix& m) {
    const auto s = singular_values(m);
    return s.empty() ? 0.0 : s.front();
}

bool is_hermitian(const ComplexMatrix& h, const TolerancePolicy& tol) {
    require_square(h, "is_hermitian");
    return frobenius_norm(h - adjoint(h)) <= tol.residual_tol * frobenius_norm(h);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h, const TolerancePolicy& tol) {
    if (!is_hermitian(h, tol)) throw NotHermitian("hermitian_eigen: matrix is not Hermitian");
    if (h.rows() == 0) return {};
    const Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(to_eigen(hermitian_part(h)));
    HermitianEigen out;
    const auto& ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    out.eigenvectors = from_eigen(solver.eigenvectors());
    return out;
}

bool is_psd(const ComplexMatrix& h, const TolerancePolicy& tol) {
    const auto e = hermitian_eigen(h, tol);
    if (e.eigenvalues.empty()) return true;
    return e.eigenvalues.front() >= -tol.psd_slack * std::max(1.0, spectral_radius(e));
}

// Douglas-type characterization: S >= A M holds iff R(M) lies in R(S) and
// A * lambda_max(S^{+1/2} M S^{+1/2}) <= 1. Compressing M onto the
// eigenbasis of R(S) gives the optimal constant directly.
double loewner_gap(const ComplexMatrix& s, const ComplexMatrix& m, const TolerancePolicy& tol) {
    require_square(s, "loewner_gap");
    require_square(m, "loewner_gap");
    if (s.rows() != m.rows()) throw DimensionMismatch("loewner_gap: S and M differ in size");

    const auto es = hermitian_eigen(s, tol);
    const auto em = hermitian_eigen(m, tol);
    const double s_norm = spectral_radius(es);
    const double m_norm = spectral_radius(em);
    if (!es.eigenvalues.empty() && es.eigenvalues.front() < -tol.psd_slack * std::max(1.0, s_norm)) {
        throw NotPsd("loewner_gap: S is not positive semidefinite");
    }
    if (!em.eigenvalues.empty() && em.eigenvalues.front() < -tol.psd_slack * std::max(1.0, m_norm)) {
        throw NotPsd("loewner_gap: M is not positive semidefinite");
    }
    if (m_norm <= tol.rel_rank_cutoff * std::max(1.0, s_norm)) return kInfinity;
    if (s_norm == 0.0) return 0.0;

    const double cutoff = tol.rel_rank_cutoff * s_norm;
    std::vector<std::size_t> range_idx;
    std::vector<std::size_t> kernel_idx;
    for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
        (es.eigenvalues[k] > cutoff ? range_idx : kernel_idx).push_back(k);
    }
    if (range_idx.empty()) return 0.0;

    // Any weight of M on ker(S) forces A = 0.
    if (!kernel_idx.empty()) {
        const ComplexMatrix v0 = select_columns(es.eigenvectors, kernel_idx);
        const ComplexMatrix load = hermitian_part(adjoint(v0) * m * v0);
        const double kernel_load = hermitian_eigen(load, tol).eigenvalues.back();
        if (kernel_load > tol.psd_slack * std::max(1.0, m_norm)) return 0.0;
    }

    ComplexMatrix vr = select_columns(es.eigenvectors, range_idx);
    for (std::size_t j = 0; j < range_idx.size(); ++j) {
        const double scale = 1.0 / std::sqrt(es.eigenvalues[range_idx[j]]);
        for (std::size_t i = 0; i < vr.rows(); ++i) vr(i, j) *= scale;
    }
    const ComplexMatrix compressed = hermitian_part(adjoint(vr) * m * vr);
    const double nu = hermitian_eigen(compressed, tol).eigenvalues.back();
    if (nu <= 0.0) return kInfinity;
    return 1.0 / nu;
}

ComplexMatrix range_projector(const ComplexMatrix& m, const TolerancePolicy& tol) {
    return m * pseudo_inverse(m, tol);
}

bool range_inclusion(const ComplexMatrix& b, const ComplexMatrix& a, const TolerancePolicy& tol) {
    if (b.rows() != a.rows()) {
        throw DimensionMismatch("range_inclusion: row counts differ (" + std::to_string(b.rows()) +
                                " vs " + std::to_string(a.rows()) + ")");
    }
    const ComplexMatrix residual = b - range_projector(a, tol) * b;
    return operator_norm(residual) <= tol.residual_tol * std::max(1.0, operator_norm(b));
}

}  // namespace ckg
