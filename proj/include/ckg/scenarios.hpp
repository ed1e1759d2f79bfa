#pragma once

#include <cstdint>
#include <vector>

#include "ckg/frame.hpp"

namespace ckg {

struct Scenario {
    OperatorFamily family;
    ComplexMatrix k;
};

// Truncation of the K-frame example {e_2n + e_2n-1} to C^{2m}:
//   K e_{2n} = e_{2n} + e_{2n-1},  K e_{2n-1} = 0,
// lifted to a measure space of m cells. Cell k carries `atoms_per_cell`
// equal-weight atoms with one-dimensional fibers and
//   Lambda_w f = <f, f_k> / sqrt(mu(cell k)),
// so that int |Lambda_w f|^2 dmu = sum_k |<f, f_k>|^2 for any cell measures.
// partition_measures defaults to all ones. Throws InvalidConfig.
Scenario build_paper_example(std::size_t m, std::vector<double> partition_measures = {},
                             std::size_t atoms_per_cell = 1);

ComplexMatrix paper_example_k(std::size_t m);

// f_k = e_{2k} + e_{2k-1} in C^{2m}, k = 1..m.
CVector paper_example_vector(std::size_t m, std::size_t k);

// Midpoint discretization of [0, 2pi) with n_atoms atoms of weight 2pi / n_atoms and
// Lambda_t f = <f, e(t)>, e(t)_j = exp(i j t) / sqrt(2pi), j = 0..n-1. K = identity.
// The continuous family is Parseval; the rule is exact once n_atoms >= n.
// Requires n >= 1 and n_atoms >= max(1, 2n - 1). Throws InvalidConfig.
Scenario build_continuous_fourier(std::size_t n, std::size_t n_atoms);

// Seeded complex-Gaussian operators. fiber_dims is empty (all 1) or one entry per atom;
// weights likewise (default 1). Throws InvalidConfig.
OperatorFamily build_random_frame(std::size_t n, std::size_t atoms, std::vector<std::size_t> fiber_dims,
                                  std::uint64_t seed, std::vector<double> weights = {});

// Seeded complex-Gaussian matrix with entries of unit variance.
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace ckg
