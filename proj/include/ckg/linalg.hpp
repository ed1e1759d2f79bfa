#pragma once

#include <limits>
#include <vector>

#include "ckg/matrix.hpp"

namespace ckg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct TolerancePolicy {
    // Singular values below rel_rank_cutoff * sigma_max count as zero.
    double rel_rank_cutoff = 1e-12;
    // Eigenvalues down to -psd_slack * max(1, |H|) still count as nonnegative.
    double psd_slack = 1e-10;
    // Relative tolerance for residual-style identities.
    double residual_tol = 1e-9;

    // Throws InvalidArgument unless every field lies in (0, 1).
    void validate() const;
};

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary; column k pairs with eigenvalues[k]
};

struct SingularValueDecomposition {
    ComplexMatrix u;                     // rows x p, p = min(rows, cols)
    std::vector<double> singular_values;  // descending, length p
    ComplexMatrix v;                     // cols x p
};

// Thin SVD, M = U diag(s) V*.
SingularValueDecomposition svd(const ComplexMatrix& m);

std::vector<double> singular_values(const ComplexMatrix& m);

// Number of singular values above rel_rank_cutoff * sigma_max.
std::size_t numerical_rank(const ComplexMatrix& m, const TolerancePolicy& tol = {});

// Moore-Penrose inverse through the SVD with the relative rank cutoff.
ComplexMatrix pseudo_inverse(const ComplexMatrix& m, const TolerancePolicy& tol = {});

// Largest singular value.
double operator_norm(const ComplexMatrix& m);

// Throws NotHermitian when |H - H*|_F > residual_tol * |H|_F. The input is
// symmetrized before decomposing.
HermitianEigen hermitian_eigen(const ComplexMatrix& h, const TolerancePolicy& tol = {});

bool is_hermitian(const ComplexMatrix& h, const TolerancePolicy& tol = {});

// lambda_min(H) >= -psd_slack * max(1, |H|).
bool is_psd(const ComplexMatrix& h, const TolerancePolicy& tol = {});

// Largest A >= 0 with S - A*M positive semidefinite, +inf when M is
// numerically zero. Both inputs must be Hermitian PSD.
double loewner_gap(const ComplexMatrix& s, const ComplexMatrix& m, const TolerancePolicy& tol = {});

// R(b) is contained in R(a): |(I - a a^+) b| <= residual_tol * max(1, |b|).
bool range_inclusion(const ComplexMatrix& b, const ComplexMatrix& a, const TolerancePolicy& tol = {});

// Orthogonal projector onto R(m), i.e. m m^+.
ComplexMatrix range_projector(const ComplexMatrix& m, const TolerancePolicy& tol = {});

}  // namespace ckg
