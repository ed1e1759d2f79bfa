#include "ckg/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ckg/errors.hpp"

namespace ckg {

namespace {

cplx gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

}  // namespace

ComplexMatrix paper_example_k(std::size_t m) {
    if (m == 0) throw InvalidConfig("paper example: m must be at least 1");
    const std::size_t dim = 2 * m;
    ComplexMatrix k(dim, dim);
    // zero-based: e_{2n} is index 2n - 1, e_{2n-1} is index 2n - 2
    for (std::size_t n = 1; n <= m; ++n) {
        k(2 * n - 2, 2 * n - 1) = 1.0;
        k(2 * n - 1, 2 * n - 1) = 1.0;
    }
    return k;
}

CVector paper_example_vector(std::size_t m, std::size_t k) {
    if (k == 0 || k > m) throw InvalidArgument("paper_example_vector: index out of range");
    CVector f(2 * m);
    f[2 * k - 2] = 1.0;
    f[2 * k - 1] = 1.0;
    return f;
}

Scenario build_paper_example(std::size_t m, std::vector<double> partition_measures,
                             std::size_t atoms_per_cell) {
    if (m == 0) throw InvalidConfig("paper example: m must be at least 1");
    if (atoms_per_cell == 0) throw InvalidConfig("paper example: atoms_per_cell must be at least 1");
    if (partition_measures.empty()) partition_measures.assign(m, 1.0);
    if (partition_measures.size() != m) {
        throw InvalidConfig("paper example: expected " + std::to_string(m) + " partition measures, got " +
                            std::to_string(partition_measures.size()));
    }
    const std::size_t dim = 2 * m;
    DiscreteMeasureSpace sp;
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 1; k <= m; ++k) {
        const double mu = partition_measures[k - 1];
        if (!std::isfinite(mu) || mu <= 0.0) {
            throw InvalidConfig("paper example: partition measures must be positive and finite");
        }
        ComplexMatrix op(1, dim);
        const double coeff = 1.0 / std::sqrt(mu);
        op(0, 2 * k - 2) = coeff;
        op(0, 2 * k - 1) = coeff;
        const std::string cell = "cell" + std::to_string(k);
        for (std::size_t j = 0; j < atoms_per_cell; ++j) {
            sp.atoms.push_back({cell + ".a" + std::to_string(j), mu / static_cast<double>(atoms_per_cell), 1, cell});
            ops.push_back(op);
        }
    }
    return {OperatorFamily{std::move(sp), std::move(ops), dim}, paper_example_k(m)};
}

Scenario build_continuous_fourier(std::size_t n, std::size_t n_atoms) {
    if (n == 0) throw InvalidConfig("continuous fourier: n must be at least 1");
    const std::size_t min_atoms = 2 * n - 1;
    if (n_atoms < min_atoms) {
        throw InvalidConfig("continuous fourier: n_atoms must be at least 2n - 1 = " + std::to_string(min_atoms));
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double weight = two_pi / static_cast<double>(n_atoms);
    const double amplitude = 1.0 / std::sqrt(two_pi);
    DiscreteMeasureSpace sp;
    std::vector<ComplexMatrix> ops;
    sp.atoms.reserve(n_atoms);
    ops.reserve(n_atoms);
    for (std::size_t j = 0; j < n_atoms; ++j) {
        sp.atoms.push_back({"theta" + std::to_string(j), weight, 1, {}});
        ComplexMatrix op(1, n);
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce the phase exactly in integer arithmetic: k (j + 1/2) 2pi / N = pi (k (2j + 1) mod 2N) / N.
            const std::size_t num = (k * (2 * j + 1)) % (2 * n_atoms);
            const double phase = std::numbers::pi * static_cast<double>(num) / static_cast<double>(n_atoms);
            op(0, k) = std::polar(amplitude, -phase);
        }
        ops.push_back(std::move(op));
    }
    return {OperatorFamily{std::move(sp), std::move(ops), n}, ComplexMatrix::identity(n)};
}

OperatorFamily build_random_frame(std::size_t n, std::size_t atoms, std::vector<std::size_t> fiber_dims,
                                  std::uint64_t seed, std::vector<double> weights) {
    if (n == 0) throw InvalidConfig("random frame: n must be at least 1");
    if (atoms == 0) throw InvalidConfig("random frame: at least one atom is required");
    if (fiber_dims.empty()) fiber_dims.assign(atoms, 1);
    if (weights.empty()) weights.assign(atoms, 1.0);
    if (fiber_dims.size() != atoms || weights.size() != atoms) {
        throw InvalidConfig("random frame: fiber_dims and weights need one entry per atom");
    }
    std::mt19937_64 rng(seed);
    DiscreteMeasureSpace sp;
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < atoms; ++k) {
        sp.atoms.push_back({"w" + std::to_string(k), weights[k], fiber_dims[k], {}});
        ComplexMatrix op(fiber_dims[k], n);
        for (cplx& z : op.entries()) z = gaussian(rng);
        ops.push_back(std::move(op));
    }
    try {
        return {std::move(sp), std::move(ops), n};
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InvalidConfig(std::string("random frame: ") + e.what());
    }
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ComplexMatrix m(rows, cols);
    for (cplx& z : m.entries()) z = gaussian(rng);
    return m;
}

}  // namespace ckg
