#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ckg/matrix.hpp"

namespace ckg {

struct Atom {
    std::string id;
    double weight = 1.0;
    std::size_t fiber_dim = 1;
    // Cell of a disjoint decomposition of the space; empty when unused.
    std::string partition;

    friend bool operator==(const Atom&, const Atom&) = default;
};

// A finite measure space: ordered weighted atoms, each carrying a fiber C^fiber_dim.
// Atom order is canonical; every reduction over the space runs in that order.
struct DiscreteMeasureSpace {
    std::vector<Atom> atoms;

    std::size_t size() const noexcept { return atoms.size(); }
    std::size_t total_fiber_dim() const noexcept;
    // Sum of the weights of atoms tagged with the given partition label.
    double partition_measure(const std::string& label) const;

    friend bool operator==(const DiscreteMeasureSpace&, const DiscreteMeasureSpace&) = default;
};

// Human-readable violations: nonpositive or non-finite weights, duplicate ids,
// zero fiber dimensions. Empty when the space is well formed.
std::vector<std::string> validate(const DiscreteMeasureSpace& sp);

// Throws InvalidConfig with the joined diagnostics if validate() is not empty.
void require_valid(const DiscreteMeasureSpace& sp);

// Splits every atom into `parts` atoms of weight w / parts with the same fiber and partition.
DiscreteMeasureSpace refine(const DiscreteMeasureSpace& sp, std::size_t parts);

// Element of the weighted direct sum: one block per atom.
struct BlockVector {
    std::vector<CVector> blocks;
};

BlockVector zero_block_vector(const DiscreteMeasureSpace& sp);

// Throws DimensionMismatch unless F has one block per atom with matching lengths.
void require_conforms(const BlockVector& f, const DiscreteMeasureSpace& sp);

// sum_k w_k <F_k, G_k>, linear in F, conjugate-linear in G.
cplx l2_inner(const BlockVector& f, const BlockVector& g, const DiscreteMeasureSpace& sp);

double l2_norm(const BlockVector& f, const DiscreteMeasureSpace& sp);

}  // namespace ckg
