#include "ckg/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ckg/errors.hpp"

namespace ckg {

namespace {

bool nonneg_finite(double x) { return std::isfinite(x) && x >= 0.0; }

CVector random_unit_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(n);
    for (;;) {
        for (cplx& z : v) {
            const double re = normal(rng);
            const double im = normal(rng);
            z = {re, im};
        }
        const double len = norm(v);
        if (len > 0.0) {
            for (cplx& z : v) z /= len;
            return v;
        }
    }
}

struct ConditionTerms {
    const OperatorFamily& lam;
    const OperatorFamily& gam;
    const ComplexMatrix& k_adjoint;
    const PerturbationParams& p;

    double slack(std::span<const cplx> f, std::span<const cplx> g) const {
        double diff = 0.0, lam_term = 0.0, gam_term = 0.0;
        const auto& atoms = lam.space().atoms;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const CVector lf = lam.op(k) * f;
            const CVector lg = lam.op(k) * g;
            const CVector gf = gam.op(k) * f;
            const CVector gg = gam.op(k) * g;
            const cplx a = inner(lf, lg);
            const cplx b = inner(gf, gg);
            diff += atoms[k].weight * std::abs(a - b);
            lam_term += atoms[k].weight * std::abs(a);
            gam_term += atoms[k].weight * std::abs(b);
        }
        const double kf = norm(k_adjoint * f);
        return diff - (p.lambda1 * lam_term + p.lambda2 * gam_term + p.gamma * kf * kf);
    }
};

}  // namespace

bool PerturbationParams::admissible(double lower_bound) const noexcept {
    if (!nonneg_finite(lambda1) || !nonneg_finite(lambda2) || !nonneg_finite(gamma)) return false;
    if (!(lower_bound > 0.0)) return false;
    return std::max(lambda2, gamma / lower_bound + lambda1) < 1.0;
}

FrameBounds predicted_bounds(double a, double b, const ComplexMatrix& k, const PerturbationParams& p) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b) || b < a) {
        throw InvalidArgument("predicted_bounds: requires 0 < A <= B < inf");
    }
    if (!p.admissible(a)) {
        throw InadmissibleParams("predicted_bounds: max(lambda2, gamma/A + lambda1) must be < 1");
    }
    const double k_norm = operator_norm(k);
    return {((1.0 - p.lambda1) * a - p.gamma) / (1.0 + p.lambda2),
            ((1.0 + p.lambda1) * b + p.gamma * k_norm * k_norm) / (1.0 - p.lambda2)};
}

double sample_condition(const OperatorFamily& lam, const OperatorFamily& gam, const ComplexMatrix& k,
                        const PerturbationParams& p, std::size_t n_samples, std::uint64_t seed) {
    if (lam.space() != gam.space() || lam.ambient_dim() != gam.ambient_dim()) {
        throw DimensionMismatch("sample_condition: families live on different spaces");
    }
    if (k.rows() != lam.ambient_dim()) throw DimensionMismatch("sample_condition: K does not act on H");

    const ComplexMatrix k_adjoint = adjoint(k);
    const ConditionTerms terms{lam, gam, k_adjoint, p};
    const std::size_t n = lam.ambient_dim();

    double worst = -kInfinity;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const CVector f = random_unit_vector(n, rng);
        const CVector g = random_unit_vector(n, rng);
        worst = std::max(worst, terms.slack(f, g));
    }

    std::vector<CVector> candidates;
    for (const ComplexMatrix& h : {frame_operator(lam), frame_operator(gam),
                                   hermitian_part(k * k_adjoint)}) {
        const auto e = hermitian_eigen(h);
        for (std::size_t j = 0; j < n; ++j) candidates.push_back(e.eigenvectors.col(j));
    }
    for (const auto& f : candidates) {
        for (const auto& g : candidates) worst = std::max(worst, terms.slack(f, g));
    }
    return worst;
}

PerturbationReport verify_perturbation(const OperatorFamily& lam, const OperatorFamily& gam,
                                       const ComplexMatrix& k, const PerturbationParams& p,
                                       std::size_t n_samples, std::uint64_t seed,
                                       const TolerancePolicy& tol) {
    if (lam.space() != gam.space() || lam.ambient_dim() != gam.ambient_dim()) {
        throw DimensionMismatch("verify_perturbation: families live on different spaces");
    }
    PerturbationReport report;
    report.samples = n_samples;
    report.seed = seed;

    const FrameBounds base = optimal_bounds(lam, k, tol);
    if (!std::isfinite(base.lower) || !(base.lower > tol.rel_rank_cutoff)) {
        throw NotAFrame("verify_perturbation: unperturbed family has no finite positive lower bound");
    }
    double a = base.lower;
    if (a > base.upper) {
        a = base.upper;
        report.diagnostics.push_back("optimal lower bound exceeds the upper bound; using A = B");
    }
    report.predicted = predicted_bounds(a, base.upper, k, p);
    report.empirical = optimal_bounds(gam, k, tol);
    report.max_condition_slack = sample_condition(lam, gam, k, p, n_samples, seed);

    const double scale = std::max(1.0, base.upper);
    const bool condition_ok = report.max_condition_slack <= tol.psd_slack * scale;
    const bool lower_ok = report.predicted.lower <= report.empirical.lower + tol.residual_tol * scale;
    const bool upper_ok = report.empirical.upper <= report.predicted.upper + tol.residual_tol * scale;
    if (!condition_ok) report.diagnostics.push_back("perturbation condition violated by a sampled pair");
    if (!lower_ok) report.diagnostics.push_back("empirical lower bound is below the predicted lower bound");
    if (!upper_ok) report.diagnostics.push_back("empirical upper bound exceeds the predicted upper bound");
    report.success = condition_ok && lower_ok && upper_ok;
    return report;
}

PerturbationParams scalar_perturbation_params(double delta) {
    if (!(delta >= 0.0 && delta < 1.0)) throw InvalidDelta("scalar_perturbation_params: delta must lie in [0, 1)");
    const double keep = 1.0 - delta;
    return {1.0 - keep * keep, 0.0, 0.0};
}

}  // namespace ckg
