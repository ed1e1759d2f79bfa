#include "ckg/duality.hpp"

#include <algorithm>
#include <cmath>

#include "ckg/errors.hpp"

namespace ckg {

namespace {

void require_square_ambient(const OperatorFamily& fam, const ComplexMatrix& m, const char* what) {
    if (m.rows() != fam.ambient_dim() || m.cols() != fam.ambient_dim()) {
        throw DimensionMismatch(std::string(what) + ": operator must be " +
                                std::to_string(fam.ambient_dim()) + "x" + std::to_string(fam.ambient_dim()));
    }
}

}  // namespace

DualPair douglas_gamma(const OperatorFamily& lam, const ComplexMatrix& k, const TolerancePolicy& tol) {
    require_square_ambient(lam, k, "douglas_gamma");
    const ComplexMatrix t = synthesis_matrix(lam);
    if (!range_inclusion(k, t, tol)) {
        throw NotAFrame("douglas_gamma: R(K) is not contained in the range of the synthesis operator");
    }
    const ComplexMatrix packed = pseudo_inverse(t, tol) * k;

    std::vector<ComplexMatrix> ops;
    ops.reserve(lam.size());
    std::size_t offset = 0;
    for (const auto& atom : lam.space().atoms) {
        ComplexMatrix block = packed.row_block(offset, atom.fiber_dim);
        block *= 1.0 / std::sqrt(atom.weight);
        ops.push_back(std::move(block));
        offset += atom.fiber_dim;
    }
    DualPair pair{lam, OperatorFamily{lam.space(), std::move(ops), lam.ambient_dim()}, k, 0.0};
    pair.residual = operator_norm(mixed_operator(pair.primary, pair.dual) - k);
    if (pair.residual > tol.residual_tol * std::max(1.0, operator_norm(k))) {
        throw NotAFrame("douglas_gamma: factorization residual " + std::to_string(pair.residual) +
                        " exceeds tolerance");
    }
    return pair;
}

double lower_bound_from_dual(const DualPair& pair) {
    const double b = bessel_bound(pair.dual);
    if (!(b > 0.0)) throw DegenerateDual("lower_bound_from_dual: dual family has Bessel bound 0");
    return 1.0 / b;
}

OperatorFamily theta_dual(const DualPair& pair, const TolerancePolicy& tol) {
    if (pair.primary.space() != pair.dual.space() ||
        pair.primary.ambient_dim() != pair.dual.ambient_dim() ||
        pair.reproduced.rows() != pair.primary.ambient_dim() ||
        pair.reproduced.cols() != pair.primary.ambient_dim()) {
        throw InvalidPair("theta_dual: pair members do not conform");
    }
    const double residual = operator_norm(mixed_operator(pair.primary, pair.dual) - pair.reproduced);
    if (residual > tol.residual_tol * std::max(1.0, operator_norm(pair.reproduced))) {
        throw InvalidPair("theta_dual: pair does not reproduce K within tolerance");
    }
    return compose_right(pair.dual, pseudo_inverse(pair.reproduced, tol));
}

OperatorFamily canonical_dual(const OperatorFamily& fam, const TolerancePolicy& tol) {
    const ComplexMatrix s = frame_operator(fam);
    const auto e = hermitian_eigen(s, tol);
    const double s_max = e.eigenvalues.back();
    if (!(s_max > 0.0) || e.eigenvalues.front() <= tol.rel_rank_cutoff * s_max) {
        throw NotAFrame("canonical_dual: frame operator is singular");
    }
    return compose_right(fam, pseudo_inverse(s, tol));
}

OperatorFamily pullback_by(const OperatorFamily& fam, const ComplexMatrix& t) {
    require_square_ambient(fam, t, "pullback_by");
    return compose_right(fam, adjoint(t));
}

FrameBounds pullback_bounds(const FrameBounds& bounds, const ComplexMatrix& t) {
    const double t_norm = operator_norm(t);
    return {bounds.lower, bounds.upper * t_norm * t_norm};
}

ComplexMatrix matrix_power(const ComplexMatrix& m, std::size_t n) {
    if (!m.is_square()) throw DimensionMismatch("matrix_power: matrix is not square");
    ComplexMatrix out = ComplexMatrix::identity(m.rows());
    for (std::size_t i = 0; i < n; ++i) out = out * m;
    return out;
}

OperatorFamily k_power_family(const OperatorFamily& fam, const ComplexMatrix& k, std::size_t n,
                              const TolerancePolicy& tol) {
    require_square_ambient(fam, k, "k_power_family");
    if (n == 0) throw InvalidArgument("k_power_family: N must be at least 1");
    if (!check_synthesis_range(fam, k, tol)) {
        throw NotAFrame("k_power_family: family is not a c-K-g-frame");
    }
    OperatorFamily out = fam;
    for (std::size_t i = 0; i < n; ++i) out = pullback_by(out, k);
    return out;
}

}  // namespace ckg
