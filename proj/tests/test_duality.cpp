#include <random>

#include "doctest.h"

#include "ckg/duality.hpp"
#include "ckg/errors.hpp"
#include "ckg/scenarios.hpp"
#include "oracles.hpp"

using namespace ckg;

namespace {

DiscreteMeasureSpace single_atom(double weight, std::size_t fiber) { return {{{"w", weight, fiber, ""}}}; }

OperatorFamily identity_family(std::size_t n, double weight = 1.0) {
    return OperatorFamily(single_atom(weight, n), {ComplexMatrix::identity(n)}, n);
}

OperatorFamily coordinate_family() {
    DiscreteMeasureSpace sp{{{"a", 1.0, 1, ""}, {"b", 1.0, 1, ""}}};
    return OperatorFamily(sp, {ComplexMatrix::from_rows({{1.0, 0.0}}), ComplexMatrix::from_rows({{0.0, 1.0}})}, 2);
}

// Random frame whose frame operator is invertible, with a K of random rank.
struct Instance {
    OperatorFamily fam;
    ComplexMatrix k;
};

Instance random_instance(int t, std::mt19937_64& rng) {
    const std::size_t n = 2 + t % 7;
    const std::size_t atoms = n + t % 3;
    std::vector<std::size_t> dims(atoms, 1);
    if (t % 4 == 0) dims[0] = 2;
    auto fam = build_random_frame(n, atoms, dims, 4000 + t, {});
    return {fam, oracle::random_rank(n, 1 + t % n, rng)};
}

CVector project_onto_range(const ComplexMatrix& k, const CVector& v) { return k * (pseudo_inverse(k) * v); }

}  // namespace

TEST_CASE("douglas_gamma examples") {
    auto pair = douglas_gamma(identity_family(3), ComplexMatrix::identity(3));
    CHECK(oracle::max_abs_diff(pair.dual.op(0), ComplexMatrix::identity(3)) <= 1e-14);
    CHECK(pair.residual <= 1e-14);

    auto sc = build_paper_example(8);
    pair = douglas_gamma(sc.family, sc.k);
    CHECK(pair.residual <= 1e-10);
    CHECK(std::isfinite(bessel_bound(pair.dual)));
    // Direct residual evaluation against the oracle product.
    auto direct = oracle::naive_product(synthesis_matrix(sc.family), oracle::naive_adjoint(synthesis_matrix(pair.dual)));
    CHECK(oracle::max_abs_diff(direct, sc.k) <= 1e-10);
    CHECK(oracle::max_abs_diff(mixed_operator(sc.family, pair.dual), sc.k) <= 1e-10);

    pair = douglas_gamma(coordinate_family(), ComplexMatrix(2, 2));
    CHECK(pair.dual == zero_family(coordinate_family().space(), 2));

    OperatorFamily e1(single_atom(1.0, 1), {ComplexMatrix::from_rows({{1.0, 0.0}})}, 2);
    CHECK_THROWS_AS(douglas_gamma(e1, ComplexMatrix::identity(2)), NotAFrame);
    CHECK_THROWS_AS(douglas_gamma(e1, ComplexMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("lower_bound_from_dual examples") {
    CHECK(lower_bound_from_dual(douglas_gamma(identity_family(2), ComplexMatrix::identity(2))) ==
          doctest::Approx(1.0).epsilon(1e-14));

    auto sc = build_paper_example(8);
    const double lb = lower_bound_from_dual(douglas_gamma(sc.family, sc.k));
    CHECK(lb > 0.0);
    CHECK(lb <= 1.0 + 1e-9);

    auto two = scaled(identity_family(2), 2.0);
    auto pair = douglas_gamma(two, ComplexMatrix::identity(2));
    CHECK(oracle::max_abs_diff(pair.dual.op(0), 0.5 * ComplexMatrix::identity(2)) <= 1e-14);
    CHECK(lower_bound_from_dual(pair) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(optimal_bounds(two, ComplexMatrix::identity(2)).lower == doctest::Approx(4.0).epsilon(1e-13));

    CHECK_THROWS_AS(lower_bound_from_dual(douglas_gamma(coordinate_family(), ComplexMatrix(2, 2))), DegenerateDual);
}

TEST_CASE("Douglas factor residual and dual-derived bound on random frames") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
        auto inst = random_instance(t, rng);
        auto pair = douglas_gamma(inst.fam, inst.k);
        CHECK(pair.residual <= 1e-10 * std::max(1.0, operator_norm(inst.k)));
        const double opt = optimal_bounds(inst.fam, inst.k).lower;
        const double lb = lower_bound_from_dual(pair);
        CHECK(lb <= opt + 1e-9);
        // The minimal-norm factor saturates the bound.
        CHECK(std::abs(lb - opt) <= 1e-8 * std::max(1.0, opt));
    }
}

TEST_CASE("theta_dual examples") {
    auto pair = douglas_gamma(identity_family(2), ComplexMatrix::identity(2));
    auto theta = theta_dual(pair);
    CHECK(oracle::max_abs_diff(theta.op(0), ComplexMatrix::identity(2)) <= 1e-14);

    auto sc = build_paper_example(8);
    pair = douglas_gamma(sc.family, sc.k);
    theta = theta_dual(pair);
    CVector f(16), e1(16);
    f[0] = f[1] = 1.0;
    e1[0] = 1.0;
    CHECK(oracle::max_abs_diff(synthesis(sc.family, analysis(theta, f)), f) <= 1e-9);
    CHECK(oracle::max_abs_diff(synthesis(theta, analysis(sc.family, f)), f) <= 1e-9);
    CHECK(norm(subtract(synthesis(sc.family, analysis(theta, e1)), e1)) >= 0.5);

    auto k = ComplexMatrix::diagonal({1.0, 0.0});
    pair = douglas_gamma(coordinate_family(), k);
    theta = theta_dual(pair);
    CVector x{{2.0, 1.0}, {0.0, 0.0}}, y{{0.0, 0.0}, {1.0, 0.0}};
    CHECK(oracle::max_abs_diff(synthesis(coordinate_family(), analysis(theta, x)), x) <= 1e-12);
    CHECK(norm(subtract(synthesis(coordinate_family(), analysis(theta, y)), y)) >= 0.5);

    // The stored residual is not trusted; the pair itself is rechecked.
    auto broken = pair;
    broken.dual = scaled(pair.dual, 2.0);
    CHECK_THROWS_AS(theta_dual(broken), InvalidPair);
    broken = pair;
    broken.reproduced = ComplexMatrix::identity(3);
    CHECK_THROWS_AS(theta_dual(broken), InvalidPair);
}

TEST_CASE("both reconstruction orders agree on R(K)") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 40; ++t) {
        auto inst = random_instance(t, rng);
        auto theta = theta_dual(douglas_gamma(inst.fam, inst.k));
        for (int s = 0; s < 10; ++s) {
            auto f = project_onto_range(inst.k, oracle::random_vector(inst.k.rows(), rng));
            const double nf = norm(f);
            auto a = synthesis(inst.fam, analysis(theta, f));
            auto b = synthesis(theta, analysis(inst.fam, f));
            CHECK(norm(subtract(a, f)) <= 1e-9 * nf);
            CHECK(norm(subtract(b, f)) <= 1e-9 * nf);
            CHECK(norm(subtract(a, b)) <= 1e-10 * std::max(1.0, nf));
        }
    }
}

TEST_CASE("canonical_dual examples") {
    auto fam = identity_family(3);
    CHECK(oracle::max_abs_diff(canonical_dual(fam).op(0), fam.op(0)) <= 1e-14);

    auto two = scaled(identity_family(2), 2.0);
    auto dual = canonical_dual(two);
    CHECK(oracle::max_abs_diff(dual.op(0), 0.5 * ComplexMatrix::identity(2)) <= 1e-14);

    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
        auto g = build_random_frame(4, 4 + t % 3, {}, 60 + t, {});
        auto cd = canonical_dual(g);
        for (int s = 0; s < 5; ++s) {
            auto f = oracle::random_vector(4, rng);
            auto back = synthesis(g, analysis(cd, f));
            CHECK(norm(subtract(back, f)) <= 1e-10 * std::max(1.0, norm(f)));
            auto back2 = synthesis(cd, analysis(g, f));
            CHECK(norm(subtract(back2, f)) <= 1e-10 * std::max(1.0, norm(f)));
        }
    }

    OperatorFamily e1(single_atom(1.0, 1), {ComplexMatrix::from_rows({{1.0, 0.0}})}, 2);
    CHECK_THROWS_AS(canonical_dual(e1), NotAFrame);
}

TEST_CASE("pullback_by") {
    auto fam = build_random_frame(3, 4, {}, 9, {});
    CHECK(pullback_by(fam, ComplexMatrix::identity(3)) == fam);
    CHECK_THROWS_AS(pullback_by(fam, ComplexMatrix::identity(2)), DimensionMismatch);

    auto sc = build_paper_example(8);
    auto pulled = pullback_by(sc.family, sc.k);
    auto s = frame_operator(sc.family);
    auto want = oracle::naive_product(oracle::naive_product(sc.k, s), oracle::naive_adjoint(sc.k));
    CHECK(oracle::max_abs_diff(frame_operator(pulled), want) <= 1e-11);

    std::mt19937_64 rng(44);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + t % 8;
        auto g = build_random_frame(n, 1 + t % 5, {}, 100 + t, {});
        auto tm = oracle::random_matrix(n, n, rng);
        auto lhs = frame_operator(pullback_by(g, tm));
        auto rhs = oracle::naive_product(oracle::naive_product(tm, frame_operator(g)), oracle::naive_adjoint(tm));
        CHECK(oracle::max_abs_diff(lhs, rhs) <= 1e-11 * std::max(1.0, frobenius_norm(rhs)));
    }
}

TEST_CASE("pullback by K of a c-g-frame is a c-K-g-frame with constructive bounds") {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + t % 5;
        auto g = build_random_frame(n, n + 2, {}, 150 + t, {});
        auto b = optimal_bounds(g, ComplexMatrix::identity(n));
        auto k = oracle::random_matrix(n, n, rng);
        auto cb = pullback_bounds(b, k);
        CHECK(cb.lower == b.lower);
        CHECK(std::abs(cb.upper - b.upper * std::pow(operator_norm(k), 2)) <= 1e-12 * cb.upper);
        auto r = verify_frame(pullback_by(g, k), k, {cb.lower * (1 - 1e-9), cb.upper * (1 + 1e-9)});
        CHECK(r.is_ckg_frame);
    }
}

TEST_CASE("k_power_family") {
    auto fam = build_random_frame(3, 5, {}, 17, {});
    auto same = k_power_family(fam, ComplexMatrix::identity(3), 3);
    CHECK(oracle::max_abs_diff(frame_operator(same), frame_operator(fam)) <= 1e-13);

    auto sc = build_paper_example(8);
    auto k2 = matrix_power(sc.k, 2);
    auto powered = k_power_family(sc.family, sc.k, 1);
    const double nk = operator_norm(sc.k);
    auto r = verify_frame(powered, k2, {1.0, 2.0 * nk * nk});
    CHECK(r.is_ckg_frame);
    CHECK(std::abs(2.0 * nk * nk - 4.0) <= 1e-12);

    auto j = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    CHECK(matrix_power(j, 2) == ComplexMatrix(2, 2));
    auto nil = k_power_family(identity_family(2), j, 1);
    auto rn = verify_frame(nil, matrix_power(j, 2), {1.0, 1.0});
    CHECK(rn.is_ckg_frame);
    CHECK(rn.bounds.lower == kInfinity);
    CHECK_FALSE(rn.diagnostics.empty());

    CHECK_THROWS_AS(k_power_family(fam, ComplexMatrix::identity(3), 0), InvalidArgument);
    OperatorFamily e1(single_atom(1.0, 1), {ComplexMatrix::from_rows({{1.0, 0.0}})}, 2);
    CHECK_THROWS_AS(k_power_family(e1, ComplexMatrix::identity(2), 1), NotAFrame);
    CHECK(matrix_power(sc.k, 0) == ComplexMatrix::identity(16));
}
