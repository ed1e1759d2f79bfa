#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ckg/frame.hpp"

namespace ckg {

struct PerturbationParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double gamma = 0.0;

    // max(lambda2, gamma / A + lambda1) < 1, all parameters finite and nonnegative.
    bool admissible(double lower_bound) const noexcept;
};

struct PerturbationReport {
    FrameBounds predicted;
    FrameBounds empirical;
    double max_condition_slack = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool success = false;
    std::vector<std::string> diagnostics;
};

// Bounds guaranteed for the perturbed family:
//   lower = ((1 - l1) A - g) / (1 + l2),  upper = ((1 + l1) B + g |K|^2) / (1 - l2).
// Throws InadmissibleParams when p is not admissible for A, InvalidArgument unless 0 < A <= B.
FrameBounds predicted_bounds(double a, double b, const ComplexMatrix& k, const PerturbationParams& p);

// Largest sampled value of
//   int |<(L*L - G*G) f, g>| - l1 int |<L*L f, g>| - l2 int |<G*G f, g>| - g |K* f|^2
// over n_samples seeded unit pairs plus all pairs of eigenvectors of S_lam, S_gam and KK*.
// A positive value disproves the perturbation condition; a nonpositive one is evidence only.
double sample_condition(const OperatorFamily& lam, const OperatorFamily& gam, const ComplexMatrix& k,
                        const PerturbationParams& p, std::size_t n_samples, std::uint64_t seed);

// Compares predicted bounds (from the optimal bounds of lam) with the optimal
// bounds of gam and samples the condition. Throws NotAFrame when lam has no
// finite positive lower bound, InadmissibleParams when p is not admissible.
PerturbationReport verify_perturbation(const OperatorFamily& lam, const OperatorFamily& gam,
                                       const ComplexMatrix& k, const PerturbationParams& p,
                                       std::size_t n_samples, std::uint64_t seed,
                                       const TolerancePolicy& tol = {});

// (1 - (1 - delta)^2, 0, 0): exact parameters for gam = (1 - delta) lam.
// Throws InvalidDelta unless 0 <= delta < 1.
PerturbationParams scalar_perturbation_params(double delta);

}  // namespace ckg
