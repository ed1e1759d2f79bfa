#include "ckg/measure_space.hpp"

#include <cmath>
#include <set>

#include "ckg/errors.hpp"

namespace ckg {

std::size_t DiscreteMeasureSpace::total_fiber_dim() const noexcept {
    std::size_t total = 0;
    for (const auto& a : atoms) total += a.fiber_dim;
    return total;
}

double DiscreteMeasureSpace::partition_measure(const std::string& label) const {
    double total = 0.0;
    for (const auto& a : atoms) {
        if (a.partition == label) total += a.weight;
    }
    return total;
}

std::vector<std::string> validate(const DiscreteMeasureSpace& sp) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t k = 0; k < sp.atoms.size(); ++k) {
        const Atom& a = sp.atoms[k];
        const std::string where = "atom " + std::to_string(k) + " ('" + a.id + "')";
        if (!std::isfinite(a.weight) || a.weight <= 0.0) {
            out.push_back(where + ": weight must be positive and finite");
        }
        if (a.fiber_dim == 0) out.push_back(where + ": fiber dimension is zero");
        if (!seen.insert(a.id).second) out.push_back(where + ": duplicate atom id");
    }
    return out;
}

void require_valid(const DiscreteMeasureSpace& sp) {
    const auto diagnostics = validate(sp);
    if (diagnostics.empty()) return;
    std::string msg = "invalid measure space:";
    for (const auto& d : diagnostics) msg += " " + d + ";";
    throw InvalidConfig(msg);
}

DiscreteMeasureSpace refine(const DiscreteMeasureSpace& sp, std::size_t parts) {
    if (parts == 0) throw InvalidArgument("refine: parts must be at least 1");
    DiscreteMeasureSpace out;
    out.atoms.reserve(sp.atoms.size() * parts);
    for (const auto& a : sp.atoms) {
        for (std::size_t p = 0; p < parts; ++p) {
            Atom sub = a;
            if (parts > 1) sub.id = a.id + "/" + std::to_string(p);
            sub.weight = a.weight / static_cast<double>(parts);
            out.atoms.push_back(std::move(sub));
        }
    }
    return out;
}

BlockVector zero_block_vector(const DiscreteMeasureSpace& sp) {
    BlockVector f;
    f.blocks.reserve(sp.atoms.size());
    for (const auto& a : sp.atoms) f.blocks.emplace_back(a.fiber_dim);
    return f;
}

void require_conforms(const BlockVector& f, const DiscreteMeasureSpace& sp) {
    if (f.blocks.size() != sp.atoms.size()) {
        throw DimensionMismatch("block vector has " + std::to_string(f.blocks.size()) +
                                " blocks, space has " + std::to_string(sp.atoms.size()) + " atoms");
    }
    for (std::size_t k = 0; k < f.blocks.size(); ++k) {
        if (f.blocks[k].size() != sp.atoms[k].fiber_dim) {
            throw DimensionMismatch("block " + std::to_string(k) + " has length " +
                                    std::to_string(f.blocks[k].size()) + ", fiber dimension is " +
                                    std::to_string(sp.atoms[k].fiber_dim));
        }
    }
}

cplx l2_inner(const BlockVector& f, const BlockVector& g, const DiscreteMeasureSpace& sp) {
    require_conforms(f, sp);
    require_conforms(g, sp);
    cplx total{};
    for (std::size_t k = 0; k < sp.atoms.size(); ++k) {
        total += sp.atoms[k].weight * inner(f.blocks[k], g.blocks[k]);
    }
    return total;
}

double l2_norm(const BlockVector& f, const DiscreteMeasureSpace& sp) {
    require_conforms(f, sp);
    double total = 0.0;
    for (std::size_t k = 0; k < sp.atoms.size(); ++k) {
        double block = 0.0;
        for (const cplx& z : f.blocks[k]) block += std::norm(z);
        total += sp.atoms[k].weight * block;
    }
    return std::sqrt(total);
}

}  // namespace ckg
