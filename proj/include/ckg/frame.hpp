#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ckg/linalg.hpp"
#include "ckg/measure_space.hpp"

namespace ckg {

// One operator Lambda_k : C^n -> C^{fiber_dim(k)} per atom of the space.
class OperatorFamily {
public:
    // Throws InvalidConfig for an invalid space, InvalidArgument for ambient_dim == 0
    // or non-finite entries, DimensionMismatch when ops do not match the space.
    OperatorFamily(DiscreteMeasureSpace space, std::vector<ComplexMatrix> ops, std::size_t ambient_dim);

    const DiscreteMeasureSpace& space() const noexcept { return space_; }
    const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
    const ComplexMatrix& op(std::size_t k) const { return ops_.at(k); }
    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t size() const noexcept { return ops_.size(); }

    friend bool operator==(const OperatorFamily&, const OperatorFamily&) = default;

private:
    DiscreteMeasureSpace space_;
    std::vector<ComplexMatrix> ops_;
    std::size_t ambient_dim_;
};

OperatorFamily zero_family(const DiscreteMeasureSpace& space, std::size_t ambient_dim);

// Every operator multiplied by s.
OperatorFamily scaled(const OperatorFamily& fam, cplx s);

// Every operator multiplied on the right by m (n x n): Lambda_k -> Lambda_k m.
OperatorFamily compose_right(const OperatorFamily& fam, const ComplexMatrix& m);

// Each atom split into `parts` sub-atoms of weight w / parts carrying the same operator.
OperatorFamily refine(const OperatorFamily& fam, std::size_t parts);

struct FrameBounds {
    double lower = 0.0;  // may be +inf (K = 0)
    double upper = 0.0;
};

struct FrameReport {
    FrameBounds bounds;   // optimal constants
    FrameBounds claimed;  // constants under test
    bool is_bessel = false;
    bool is_ckg_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
    std::vector<std::string> diagnostics;
};

// Analysis T*: block k = Lambda_k f.
BlockVector analysis(const OperatorFamily& fam, std::span<const cplx> f);

// Synthesis T: sum_k w_k Lambda_k^* F_k, the adjoint of analysis in the weighted L2 product.
CVector synthesis(const OperatorFamily& fam, const BlockVector& blocks);

// S = sum_k w_k Lambda_k^* Lambda_k, reduced in atom order.
ComplexMatrix frame_operator(const OperatorFamily& fam);

// sum_k w_k Lambda_k^* Gamma_k = T_Lambda T_Gamma^*. Families must share space and ambient_dim.
ComplexMatrix mixed_operator(const OperatorFamily& lam, const OperatorFamily& gam);

// n x (sum of fiber dims); block column k is sqrt(w_k) Lambda_k^*, so T T^* = S.
ComplexMatrix synthesis_matrix(const OperatorFamily& fam);

// Smallest B with int |Lambda f|^2 <= B |f|^2, i.e. lambda_max(S).
double bessel_bound(const OperatorFamily& fam);

// Extremal constants in A |K^* f|^2 <= int |Lambda f|^2 <= B |f|^2.
// K must have ambient_dim rows. lower is +inf when K = 0.
FrameBounds optimal_bounds(const OperatorFamily& fam, const ComplexMatrix& k,
                           const TolerancePolicy& tol = {});

// Checks claimed bounds. Without K only the Bessel inequality is checked.
FrameReport verify_frame(const OperatorFamily& fam, const std::optional<ComplexMatrix>& k,
                         const FrameBounds& claimed, const TolerancePolicy& tol = {});

// R(K) contained in R(T).
bool check_synthesis_range(const OperatorFamily& fam, const ComplexMatrix& k,
                           const TolerancePolicy& tol = {});

}  // namespace ckg
