#include <random>

#include "doctest.h"

#include "ckg/errors.hpp"
#include "ckg/measure_space.hpp"
#include "oracles.hpp"

using namespace ckg;

namespace {

DiscreteMeasureSpace space(std::vector<double> weights, std::vector<std::size_t> dims) {
    DiscreteMeasureSpace sp;
    for (std::size_t i = 0; i < weights.size(); ++i)
        sp.atoms.push_back({"a" + std::to_string(i), weights[i], dims[i], ""});
    return sp;
}

BlockVector random_blocks(const DiscreteMeasureSpace& sp, std::mt19937_64& rng) {
    BlockVector f;
    for (const auto& a : sp.atoms) f.blocks.push_back(oracle::random_vector(a.fiber_dim, rng));
    return f;
}

}  // namespace

TEST_CASE("l2_inner examples") {
    auto one = space({1.0}, {1});
    BlockVector e{{{1.0}}};
    CHECK(l2_inner(e, e, one) == cplx(1.0));

    auto two = space({1.0, 1.0}, {1, 1});
    BlockVector f{{{1.0}, {0.0}}}, g{{{0.0}, {1.0}}};
    CHECK(l2_inner(f, g, two) == cplx(0.0));

    auto w23 = space({2.0, 3.0}, {1, 1});
    BlockVector ones{{{1.0}, {1.0}}};
    CHECK(l2_inner(ones, ones, w23) == cplx(5.0));
}

TEST_CASE("l2_norm examples") {
    auto sp = space({4.0}, {2});
    CHECK(l2_norm(zero_block_vector(sp), sp) == 0.0);
    BlockVector f{{{1.0, 0.0}}};
    CHECK(l2_norm(f, sp) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("validate reports violations") {
    CHECK(validate(space({1.0, 2.0}, {1, 3})).empty());

    auto zero_w = space({0.0}, {1});
    auto d = validate(zero_w);
    REQUIRE(d.size() == 1);
    CHECK(d[0].find("weight") != std::string::npos);

    auto dup = space({1.0, 1.0}, {1, 1});
    dup.atoms[1].id = dup.atoms[0].id;
    d = validate(dup);
    REQUIRE(d.size() == 1);
    CHECK(d[0].find("duplicate") != std::string::npos);

    CHECK_FALSE(validate(space({1.0}, {0})).empty());
    CHECK_FALSE(validate(space({std::nan("")}, {1})).empty());
    CHECK_FALSE(validate(space({-1.0}, {1})).empty());
    CHECK_THROWS_AS(require_valid(zero_w), InvalidConfig);
}

TEST_CASE("conformance is enforced") {
    auto sp = space({1.0, 1.0}, {1, 2});
    BlockVector bad{{{1.0}, {1.0}}};
    CHECK_THROWS_AS(require_conforms(bad, sp), DimensionMismatch);
    CHECK_THROWS_AS(l2_inner(bad, bad, sp), DimensionMismatch);
    BlockVector short_{{{1.0}}};
    CHECK_THROWS_AS(require_conforms(short_, sp), DimensionMismatch);
}

TEST_CASE("partition measure sums tagged atoms") {
    auto sp = space({1.0, 2.0, 4.0}, {1, 1, 1});
    sp.atoms[0].partition = "x";
    sp.atoms[2].partition = "x";
    sp.atoms[1].partition = "y";
    CHECK(sp.partition_measure("x") == 5.0);
    CHECK(sp.partition_measure("y") == 2.0);
    CHECK(sp.partition_measure("z") == 0.0);
    CHECK(sp.total_fiber_dim() == 3);
}

TEST_CASE("l2_inner is conjugate-symmetric and linear in the first slot") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    for (int t = 0; t < 100; ++t) {
        const std::size_t atoms = 1 + t % 7;
        std::vector<double> ws;
        std::vector<std::size_t> ds;
        for (std::size_t i = 0; i < atoms; ++i) {
            ws.push_back(w(rng));
            ds.push_back(1 + (i + t) % 3);
        }
        auto sp = space(ws, ds);
        auto f = random_blocks(sp, rng), g = random_blocks(sp, rng), h = random_blocks(sp, rng);
        const cplx a{0.3, -1.7}, b{-2.0, 0.5};

        const cplx fg = l2_inner(f, g, sp);
        CHECK(std::abs(fg - std::conj(l2_inner(g, f, sp))) <= 1e-12 * (1 + std::abs(fg)));

        BlockVector comb = f;
        for (std::size_t k = 0; k < atoms; ++k)
            for (std::size_t i = 0; i < comb.blocks[k].size(); ++i) comb.blocks[k][i] = a * f.blocks[k][i] + b * h.blocks[k][i];
        const cplx lhs = l2_inner(comb, g, sp);
        const cplx rhs = a * fg + b * l2_inner(h, g, sp);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));

        const double n = l2_norm(f, sp);
        CHECK(n >= 0.0);
        CHECK(std::abs(n * n - l2_inner(f, f, sp).real()) <= 1e-12 * (1 + n * n));
    }
}

TEST_CASE("refinement preserves l2_inner") {
    std::mt19937_64 rng(22);
    for (std::size_t parts : {1u, 2u, 3u, 5u}) {
        auto sp = space({0.5, 2.0, 3.0}, {2, 1, 3});
        auto r = refine(sp, parts);
        CHECK(validate(r).empty());
        REQUIRE(r.size() == sp.size() * parts);
        auto f = random_blocks(sp, rng), g = random_blocks(sp, rng);
        BlockVector fr, gr;
        for (std::size_t k = 0; k < sp.size(); ++k)
            for (std::size_t p = 0; p < parts; ++p) {
                fr.blocks.push_back(f.blocks[k]);
                gr.blocks.push_back(g.blocks[k]);
            }
        const cplx want = l2_inner(f, g, sp);
        CHECK(std::abs(l2_inner(fr, gr, r) - want) <= 1e-12 * (1 + std::abs(want)));
    }
    CHECK_THROWS_AS(refine(space({1.0}, {1}), 0), InvalidArgument);
}
