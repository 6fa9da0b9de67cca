#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "golden.hpp"
#include "groth/norm_factors.hpp"
#include "groth/random.hpp"

using namespace groth;

TEST_CASE("row norms") {
    const auto id = row_norms(Matrix::identity(3));
    CHECK(id == std::vector<double>{1.0, 1.0, 1.0});
    const auto r = row_norms(Matrix{{1.0, 2.0}, {0.0, 0.0}});
    CHECK(r[0] == doctest::Approx(std::sqrt(5.0)));
    CHECK(r[1] == 0.0);
    for (double v : row_norms(golden::pi6())) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("normalization factor") {
    Rng rng(11);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(normalization_factor(random_unitary(rng, n)) == doctest::Approx(1.0));
    CHECK(normalization_factor(golden::pi12()) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(normalization_factor(Matrix(3, 3)) == 0.0);
    const Matrix m = gaussian_matrix(rng, 4, 4);
    const Complex z(-1.5, 2.0);
    CHECK(normalization_factor(m * z) == doctest::Approx(std::abs(z) * normalization_factor(m)).epsilon(1e-14));
}

TEST_CASE("to_unit_S") {
    const Matrix v = to_unit_S(golden::pi6());
    CHECK(max_abs_diff(v, golden::pi6() * Complex(std::sqrt(2.0))) < 1e-14);
    CHECK(in_unit_S(v));
    CHECK(std::abs(normalization_factor(v) - 1.0) < 1e-12);
    CHECK(max_abs_diff(to_unit_S(Matrix{{2.0, 0.0}, {0.0, 0.0}}), Matrix{{1.0, 0.0}, {0.0, 0.0}}) == 0.0);
    CHECK_THROWS_AS(to_unit_S(Matrix(2, 2)), InputError);
}

TEST_CASE("norm report bound chain on random matrices") {
    Rng rng(12);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
        const Matrix m = (k % 2 == 0) ? gaussian_matrix(rng, n, n) : random_normal(rng, n);
        const NormReport r = norm_report(m);
        CHECK(r.lower_bound <= r.n_factor + 1e-10);
        CHECK(r.n_factor <= r.upper_bound + 1e-10);
        double sq = 0.0;
        for (double v : r.row_norms) sq += v * v;
        CHECK(std::abs(sq - r.frobenius * r.frobenius) < 1e-10 * (1.0 + sq));
        CHECK(r.in_S_d == (r.n_factor <= 1.0 + kSdMembershipTolerance));
    }
}

TEST_CASE("norm report equality cases") {
    const std::vector<Complex> p{0.5, 0.3, 0.2};
    const NormReport diag = norm_report(Matrix::diagonal(p));
    CHECK(diag.is_normal);
    CHECK(diag.n_factor == doctest::Approx(0.5));
    CHECK(diag.upper_bound == doctest::Approx(0.5));
    CHECK(diag.upper_bound_tight);

    const NormReport pi = norm_report(golden::pi6());
    CHECK(pi.lower_bound_tight);
    CHECK(pi.lower_bound == doctest::Approx(1.0 / std::sqrt(2.0)));

    const double h = 1.0 / std::sqrt(2.0);
    const NormReport row = norm_report(Matrix{{h, h}, {0.0, 0.0}});
    CHECK(row.upper_bound_tight);
    CHECK(row.n_factor == doctest::Approx(1.0));
    CHECK(row.upper_bound == doctest::Approx(1.0));
}
