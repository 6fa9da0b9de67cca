#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "golden.hpp"
#include "groth/coherent.hpp"
#include "groth/random.hpp"

using namespace groth;

TEST_CASE("d = 3 family matches the reference states") {
    const StateFamily f = build_family(3);
    REQUIRE(f.size() == 6);
    CHECK_FALSE(f.conjectural());
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(std::abs(f.states[i][k] - golden::kStates3[i][k] / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("d = 4 family matches the reference table") {
    const StateFamily f = build_family(4);
    const Matrix ref = golden::table1_states();
    REQUIRE(f.size() == 12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(f.states[i][k] - ref(k, i)) < 1e-15);
}

TEST_CASE("d = 2 family") {
    const StateFamily f = build_family(2);
    REQUIRE(f.size() == 2);
    CHECK(f.states[0] == Vector{1.0, 0.0});
    CHECK(f.states[1] == Vector{0.0, 1.0});
}

TEST_CASE("golden projectors") {
    const OverlapProjector p6 = build_projector(build_family(3));
    CHECK(max_abs_diff(p6.matrix, golden::pi6()) < 1e-12);
    CHECK(p6.rank == 3);
    const OverlapProjector p12 = build_projector(build_family(4));
    CHECK(max_abs_diff(p12.matrix, golden::pi12()) < 1e-12);
    CHECK(p12.rank == 4);
    CHECK(max_abs_diff(p12.matrix * p12.matrix, p12.matrix) < 1e-12);

    const auto e6 = hermitian_eig(p6.matrix).eigenvalues;
    const auto m6 = eigenvalue_multiplicities(e6);
    REQUIRE(m6.size() == 2);
    CHECK(m6[0].second == 3);
    CHECK(m6[1].second == 3);
    const auto m12 = eigenvalue_multiplicities(hermitian_eig(p12.matrix).eigenvalues);
    REQUIRE(m12.size() == 2);
    CHECK(m12[0].first == doctest::Approx(1.0));
    CHECK(m12[0].second == 4);
    CHECK(m12[1].second == 8);
}

TEST_CASE("resolution of the identity") {
    for (std::size_t d = 2; d <= 7; ++d) {
        const StateFamily f = build_family(d);
        CHECK(f.size() == d * (d - 1));
        CHECK(resolution_check(f) <= 1e-12);
        for (const auto& a : f.states) CHECK(std::abs(norm(a) - 1.0) < 1e-14);
        CHECK(build_projector(f).rank == d);
    }
}

TEST_CASE("isotropy and permutation invariance") {
    for (std::size_t d : {3u, 4u}) {
        const StateFamily f = build_family(d);
        CHECK(isotropy_check(f).isotropic);
        const PermutationReport p = permutation_invariance_check(f);
        CHECK(p.invariant);
        CHECK(p.mappings.size() == p.permutations_checked * f.size());
    }
    CHECK_THROWS_AS(permutation_invariance_check(build_family(7)), InputError);
}

TEST_CASE("overlap power sums") {
    const StateFamily f3 = build_family(3);
    const StateFamily f4 = build_family(4);
    for (int r = 1; r <= 4; ++r) {
        const double e3 = 1.0 + 1.0 / std::pow(2.0, r - 2);
        const double e4 = 1.0 + (std::pow(2.0, r) + 2.0) / std::pow(3.0, r - 1);
        for (std::size_t i = 0; i < f3.size(); ++i) CHECK(std::abs(overlap_power_sum(f3, i, r) - e3) < 1e-9);
        for (std::size_t i = 0; i < f4.size(); ++i) CHECK(std::abs(overlap_power_sum(f4, i, r) - e4) < 1e-9);
    }
    CHECK_THROWS_AS(overlap_power_sum(f3, 6, 1), InputError);
}

TEST_CASE("expansion coefficients lie in the range of the projector") {
    Rng rng(41);
    for (std::size_t d : {3u, 4u, 5u}) {
        const StateFamily f = build_family(d);
        const Matrix pi = build_projector(f).matrix;
        for (int k = 0; k < 5; ++k) {
            const Vector x = random_unit_vector(rng, d);
            const Vector c = expand_state(f, x);
            const Vector back = reconstruct_state(f, c);
            for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-12);
            const Vector pc = pi * std::span<const Complex>(c);
            for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(pc[i] - c[i]) < 1e-12);
        }
    }
    CHECK_THROWS_AS(expand_state(build_family(3), Vector{1.0, 1.0, 0.0}), InputError);
}

TEST_CASE("families beyond d = 4 are labelled conjectural") {
    CHECK(build_family(5).conjectural());
    CHECK_FALSE(build_family(4).conjectural());
    CHECK_THROWS_AS(build_family(1), InputError);
}
