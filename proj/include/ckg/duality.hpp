#pragma once

#include <cstddef>

#include "ckg/frame.hpp"

namespace ckg {

// A family paired with a second family on the same space such that
// T_primary * analysis_dual reproduces `reproduced`.
struct DualPair {
    OperatorFamily primary;
    OperatorFamily dual;
    ComplexMatrix reproduced;
    // |T_primary T_dual^* - reproduced|
    double residual = 0.0;
};

// Minimal-norm factor Gamma with K = T_Lambda Gamma: the packed operator is
// T^+ K, split per atom and divided by sqrt(w_k).
// Throws NotAFrame when R(K) is not contained in R(T).
DualPair douglas_gamma(const OperatorFamily& lam, const ComplexMatrix& k, const TolerancePolicy& tol = {});

// 1 / B_Gamma, a lower c-K-g-frame bound for the primary family.
// Throws DegenerateDual when B_Gamma = 0.
double lower_bound_from_dual(const DualPair& pair);

// Theta_k = Gamma_k K^+. Reconstructs every f in R(K) in either order:
// T_Lambda T_Theta^* f = f and T_Theta T_Lambda^* f = f.
// Throws InvalidPair when the pair's residual is out of tolerance.
OperatorFamily theta_dual(const DualPair& pair, const TolerancePolicy& tol = {});

// Lambda_k S^{-1}. Throws NotAFrame when S is singular.
OperatorFamily canonical_dual(const OperatorFamily& fam, const TolerancePolicy& tol = {});

// Lambda_k T^*. Its frame operator is T S T^*.
OperatorFamily pullback_by(const OperatorFamily& fam, const ComplexMatrix& t);

// Bounds (A, B |T|^2) that a c-K-g-frame with bounds (A, B) passes to its pullback by T.
FrameBounds pullback_bounds(const FrameBounds& bounds, const ComplexMatrix& t);

// Lambda_k (K^*)^N, a c-K^{N+1}-g-frame. Throws NotAFrame if fam is not a
// c-K-g-frame and InvalidArgument for N = 0.
OperatorFamily k_power_family(const OperatorFamily& fam, const ComplexMatrix& k, std::size_t n,
                              const TolerancePolicy& tol = {});

ComplexMatrix matrix_power(const ComplexMatrix& m, std::size_t n);

}  // namespace ckg
