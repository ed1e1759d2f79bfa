#include "ckg/frame.hpp"

#include <cmath>
#include <sstream>

#include "ckg/errors.hpp"
#include "ckg/kernels.hpp"

namespace ckg {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

void require_ambient_rows(const OperatorFamily& fam, const ComplexMatrix& k, const char* what) {
    if (k.rows() != fam.ambient_dim()) {
        throw DimensionMismatch(std::string(what) + ": K has " + std::to_string(k.rows()) +
                                " rows, ambient dimension is " + std::to_string(fam.ambient_dim()));
    }
}

bool is_zero(const ComplexMatrix& m) {
    for (const cplx& z : m.entries()) {
        if (z != cplx{}) return false;
    }
    return true;
}

}  // namespace

OperatorFamily::OperatorFamily(DiscreteMeasureSpace space, std::vector<ComplexMatrix> ops,
                               std::size_t ambient_dim)
    : space_(std::move(space)), ops_(std::move(ops)), ambient_dim_(ambient_dim) {
    require_valid(space_);
    if (ambient_dim_ == 0) throw InvalidArgument("operator family: ambient dimension must be >= 1");
    if (ops_.size() != space_.size()) {
        throw DimensionMismatch("operator family: " + std::to_string(ops_.size()) + " operators for " +
                                std::to_string(space_.size()) + " atoms");
    }
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        if (ops_[k].rows() != space_.atoms[k].fiber_dim || ops_[k].cols() != ambient_dim_) {
            throw DimensionMismatch("operator family: operator " + std::to_string(k) + " is " +
                                    std::to_string(ops_[k].rows()) + "x" +
                                    std::to_string(ops_[k].cols()) + ", expected " +
                                    std::to_string(space_.atoms[k].fiber_dim) + "x" +
                                    std::to_string(ambient_dim_));
        }
        if (!ops_[k].all_finite()) {
            throw InvalidArgument("operator family: operator " + std::to_string(k) +
                                  " has non-finite entries");
        }
    }
}

OperatorFamily zero_family(const DiscreteMeasureSpace& space, std::size_t ambient_dim) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(space.size());
    for (const auto& a : space.atoms) ops.emplace_back(a.fiber_dim, ambient_dim);
    return {space, std::move(ops), ambient_dim};
}

OperatorFamily scaled(const OperatorFamily& fam, cplx s) {
    std::vector<ComplexMatrix> ops = fam.ops();
    for (auto& op : ops) op *= s;
    return {fam.space(), std::move(ops), fam.ambient_dim()};
}

OperatorFamily compose_right(const OperatorFamily& fam, const ComplexMatrix& m) {
    if (m.rows() != fam.ambient_dim() || m.cols() != fam.ambient_dim()) {
        throw DimensionMismatch("compose_right: operator must be " + std::to_string(fam.ambient_dim()) +
                                "x" + std::to_string(fam.ambient_dim()));
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(fam.size());
    for (const auto& op : fam.ops()) ops.push_back(op * m);
    return {fam.space(), std::move(ops), fam.ambient_dim()};
}

OperatorFamily refine(const OperatorFamily& fam, std::size_t parts) {
    DiscreteMeasureSpace sp = refine(fam.space(), parts);
    std::vector<ComplexMatrix> ops;
    ops.reserve(sp.size());
    for (const auto& op : fam.ops()) {
        for (std::size_t p = 0; p < parts; ++p) ops.push_back(op);
    }
    return {std::move(sp), std::move(ops), fam.ambient_dim()};
}

BlockVector analysis(const OperatorFamily& fam, std::span<const cplx> f) {
    if (f.size() != fam.ambient_dim()) {
        throw DimensionMismatch("analysis: vector has length " + std::to_string(f.size()) +
                                ", ambient dimension is " + std::to_string(fam.ambient_dim()));
    }
    BlockVector out;
    out.blocks.reserve(fam.size());
    for (const auto& op : fam.ops()) out.blocks.push_back(op * f);
    return out;
}

CVector synthesis(const OperatorFamily& fam, const BlockVector& blocks) {
    require_conforms(blocks, fam.space());
    CVector out(fam.ambient_dim());
    for (std::size_t k = 0; k < fam.size(); ++k) {
        const CVector contribution = adjoint(fam.op(k)) * blocks.blocks[k];
        kernels::axpy(fam.space().atoms[k].weight, contribution, out);
    }
    return out;
}

ComplexMatrix mixed_operator(const OperatorFamily& lam, const OperatorFamily& gam) {
    if (lam.space() != gam.space() || lam.ambient_dim() != gam.ambient_dim()) {
        throw DimensionMismatch("mixed_operator: families live on different spaces");
    }
    const std::size_t n = lam.ambient_dim();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < lam.size(); ++k) {
        ComplexMatrix adj = adjoint(lam.op(k));
        adj *= lam.space().atoms[k].weight;
        kernels::active().gemm_acc(adj.entries().data(), gam.op(k).entries().data(),
                                   out.entries().data(), n, adj.cols(), n);
    }
    return out;
}

ComplexMatrix frame_operator(const OperatorFamily& fam) {
    return hermitian_part(mixed_operator(fam, fam));
}

ComplexMatrix synthesis_matrix(const OperatorFamily& fam) {
    const std::size_t n = fam.ambient_dim();
    ComplexMatrix t(n, fam.space().total_fiber_dim());
    std::size_t offset = 0;
    for (std::size_t k = 0; k < fam.size(); ++k) {
        const ComplexMatrix& op = fam.op(k);
        const double root_w = std::sqrt(fam.space().atoms[k].weight);
        for (std::size_t r = 0; r < op.rows(); ++r) {
            for (std::size_t i = 0; i < n; ++i) t(i, offset + r) = root_w * std::conj(op(r, i));
        }
        offset += op.rows();
    }
    return t;
}

double bessel_bound(const OperatorFamily& fam) {
    const auto e = hermitian_eigen(frame_operator(fam));
    return std::max(0.0, e.eigenvalues.back());
}

FrameBounds optimal_bounds(const OperatorFamily& fam, const ComplexMatrix& k, const TolerancePolicy& tol) {
    require_ambient_rows(fam, k, "optimal_bounds");
    const ComplexMatrix s = frame_operator(fam);
    const ComplexMatrix kk = hermitian_part(k * adjoint(k));
    const auto e = hermitian_eigen(s, tol);
    return {loewner_gap(s, kk, tol), std::max(0.0, e.eigenvalues.back())};
}

FrameReport verify_frame(const OperatorFamily& fam, const std::optional<ComplexMatrix>& k,
                         const FrameBounds& claimed, const TolerancePolicy& tol) {
    if (!std::isfinite(claimed.upper)) throw InvalidArgument("verify_frame: claimed upper bound must be finite");
    if (k) {
        require_ambient_rows(fam, *k, "verify_frame");
        if (!(claimed.lower > 0.0)) throw InvalidArgument("verify_frame: claimed lower bound must be positive");
    }

    FrameReport report;
    report.claimed = claimed;
    const ComplexMatrix s = frame_operator(fam);
    const auto es = hermitian_eigen(s, tol);
    const double s_max = std::max(0.0, es.eigenvalues.back());
    const double slack = tol.psd_slack * std::max(1.0, s_max);

    report.is_bessel = s_max <= claimed.upper + slack;
    if (!report.is_bessel) {
        report.diagnostics.push_back("claimed upper bound " + fmt(claimed.upper) +
                                     " is below the optimal Bessel bound " + fmt(s_max));
    }

    if (!k) {
        report.bounds = {0.0, s_max};
        report.diagnostics.push_back("no K given: only the Bessel inequality was checked");
        return report;
    }

    const ComplexMatrix kk = hermitian_part(*k * adjoint(*k));
    report.bounds = {loewner_gap(s, kk, tol), s_max};
    const bool k_zero = is_zero(*k);
    if (k_zero) report.diagnostics.push_back("K = 0: the lower inequality is vacuous, optimal lower bound is +inf");

    const bool lower_ok = is_psd(s - claimed.lower * kk, tol);
    if (!lower_ok) {
        report.diagnostics.push_back("claimed lower bound " + fmt(claimed.lower) +
                                     " exceeds the optimal lower bound " + fmt(report.bounds.lower));
    }
    report.is_ckg_frame = report.is_bessel && lower_ok;

    const double a = report.bounds.lower;
    if (report.is_ckg_frame && !k_zero && std::isfinite(a) && a > 0.0) {
        const double defect = operator_norm(s - a * kk);
        report.is_tight = defect <= tol.residual_tol * std::max(1.0, s_max);
        report.is_parseval = report.is_tight && std::abs(a - 1.0) <= tol.residual_tol;
    }
    return report;
}

bool check_synthesis_range(const OperatorFamily& fam, const ComplexMatrix& k, const TolerancePolicy& tol) {
    require_ambient_rows(fam, k, "check_synthesis_range");
    return range_inclusion(k, synthesis_matrix(fam), tol);
}

}  // namespace ckg
