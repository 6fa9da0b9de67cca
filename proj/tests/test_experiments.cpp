#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "groth/experiments.hpp"
#include "groth/random.hpp"

using namespace groth;

TEST_CASE("h6 closed form") {
    const ExperimentRecord r = run_h6(0.2);
    CHECK(std::abs(r.q_value - 1.2) < 1e-12);
    CHECK(r.region == Region::grothendieck);
    CHECK(r.diagnostics["density_purity"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(r.diagnostics["density_entropy"].get<double>() == doctest::Approx(std::log(3.0)));
    CHECK(r.diagnostics["theta_in_G_prime"] == false);
    // g(Pi_6) >= 3 + 2 sqrt 2, so Pi_6 / 5 is outside G_6.
    CHECK(r.diagnostics["theta_in_G"] == "certified_no");

    const ExperimentRecord sixth = run_h6(1.0 / 6.0);
    CHECK(sixth.diagnostics["theta_in_G_prime"] == true);
    CHECK(sixth.region == Region::classical);

    CHECK_THROWS_AS(run_h6(0.25), InputError);
    CHECK_THROWS_AS(run_h6(0.0), InputError);
}

TEST_CASE("h12 stays classical at the largest admissible lambda") {
    const ExperimentRecord r = run_h12(1.0 / 12.0);
    CHECK(std::abs(r.q_value - 1.0) < 1e-12);
    CHECK(r.region == Region::classical);
    CHECK(r.diagnostics["density_purity"].get<double>() == doctest::Approx(0.25));
    CHECK(r.diagnostics["density_entropy"].get<double>() == doctest::Approx(std::log(4.0)));
    CHECK_THROWS_AS(run_h12(0.1), InputError);
}

TEST_CASE("g6 certificate: both routes agree") {
    const Pi6Certificate c = certify_g_pi6(64, 0);
    CHECK(c.all_ones_objective == doctest::Approx(10.0));
    CHECK(c.flipped_objective == doctest::Approx(10.0));
    std::array<double, 3> abc = c.all_ones_abc;
    std::sort(abc.begin(), abc.end());
    CHECK(abc[0] == doctest::Approx(0.0));
    CHECK(abc[1] == doctest::Approx(2.0));
    CHECK(abc[2] == doctest::Approx(4.0));
    CHECK(c.all_ones_g == doctest::Approx(5.0));
    CHECK(c.agreement < 1e-9);
    CHECK(0.5 * c.specialized_max == doctest::Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pi6_specialized_objective(c.specialized_witness) == doctest::Approx(c.specialized_max));
}

TEST_CASE("displacement operators are unitary with the expected trace") {
    for (std::size_t d : {3u, 5u}) {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const Matrix op = displacement_operator(d, a, b);
                CHECK(max_abs_diff(op * op.adjoint(), Matrix::identity(d)) < 1e-13);
                const double tr = std::abs(op.trace());
                CHECK(tr == doctest::Approx((a == 0 && b == 0) ? static_cast<double>(d) : 0.0));
            }
    }
    CHECK_THROWS_AS(displacement_operator(4, 1, 1), InputError);
}

TEST_CASE("bounded demo") {
    const ExperimentRecord r = run_bounded_demo(3, 100, 5);
    CHECK(r.q_value <= 1.0 + 1e-12);
    CHECK(r.region == Region::classical);
    CHECK(r.diagnostics["bound_one_is_tighter"] == true);
    CHECK(run_bounded_demo(4, 50, 5).diagnostics["weyl_checked"] == false);
}

TEST_CASE("rarity is deterministic and certified scaling stays classical") {
    auto collect = [](const RarityConfig& cfg) {
        std::ostringstream out;
        const RarityStats s = run_rarity(cfg, [&](const nlohmann::json& j) { out << j.dump() << '\n'; });
        return std::pair{s, out.str()};
    };
    const RarityConfig cfg{.ensemble = Ensemble::random_normal, .samples = 30, .seed = 7, .starts = 8};
    const auto [s1, o1] = collect(cfg);
    const auto [s2, o2] = collect(cfg);
    CHECK(o1 == o2);
    CHECK(s1.count_in_region == 0);
    CHECK(s1.max_q_seen <= 1.0 + 1e-9);

    RarityConfig proj = cfg;
    proj.ensemble = Ensemble::scaled_projector;
    proj.scaling = Scaling::estimated;
    proj.samples = 3;
    const auto [sp, op] = collect(proj);
    const auto first = nlohmann::json::parse(op.substr(0, op.find('\n')));
    CHECK(first["region"] == "grothendieck");
    CHECK(first["q_value"].get<double>() > 1.0);
    CHECK(first["q_value"].get<double>() <= kGrothendieckUpper);
    CHECK(sp.count_exceeds == 0);

    CHECK_THROWS_AS(parse_ensemble("bogus"), InputError);
    CHECK_THROWS_AS(parse_scaling("bogus"), InputError);
}
