#include "cbap/contention.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <vector>

using namespace cbap;
using doctest::Approx;

namespace {
const MacParams mac{};
const SlotDurations slots = slot_durations(TimingParams{});
} // namespace

TEST_CASE("p_of_tau")
{
    CHECK(p_of_tau(0.37, 1) == 0.0);
    CHECK(p_of_tau(0.5, 2) == Approx(0.5));
    CHECK(p_of_tau(0.1, 10) == Approx(1.0 - std::pow(0.9, 9)));
    CHECK(p_of_tau(0.1, 10) == Approx(0.6126).epsilon(1e-4));
    CHECK_THROWS_AS(p_of_tau(0.1, 0), InvalidParameter);
    CHECK_THROWS_AS(p_of_tau(1.5, 3), InvalidParameter);
}

TEST_CASE("closed-form tau(p)")
{
    const TauB00 at0 = tau_of_p(0.0, mac);
    CHECK(at0.b00 == Approx(1.0 / 37.0).epsilon(1e-14));
    CHECK(at0.tau == Approx(1.0 / 37.0).epsilon(1e-14));

    SUBCASE("term-by-term regression at p = 0.3")
    {
        const TauB00 t = tau_of_p(0.3, mac);
        CHECK(t.b00 == Approx(oracle::closed_form_b00(0.3)).epsilon(1e-13));
        CHECK(t.tau == Approx(oracle::closed_form_tau(0.3)).epsilon(1e-13));
    }

    SUBCASE("removable singularity at p = 0.5")
    {
        const TauB00 mid = tau_of_p(0.5, mac);
        CHECK(std::isfinite(mid.tau));
        CHECK(mid.tau > 0.0);
        const double below = tau_of_p(0.5 - 1e-9, mac).tau;
        const double above = tau_of_p(0.5 + 1e-9, mac).tau;
        CHECK(std::abs(below - above) < 1e-6);
        CHECK(std::abs(mid.tau - below) < 1e-6);
        CHECK(mid.tau == Approx(oracle::closed_form_tau(0.5 + 1e-7)).epsilon(1e-5));
    }

    SUBCASE("agrees with the rational expression on a grid")
    {
        for (double p = 0.01; p < 0.99; p += 0.0137) {
            if (std::abs(p - 0.5) < 1e-3)
                continue;
            CHECK(tau_of_p(p, mac).tau == Approx(oracle::closed_form_tau(p)).epsilon(1e-10));
        }
    }

    CHECK_THROWS_AS(tau_of_p(1.0, mac), DomainError);
    CHECK_THROWS_AS(tau_of_p(-0.1, mac), InvalidParameter);
}

TEST_CASE("closed-form fixed point")
{
    const auto one = solve_fixed_point(1, mac);
    CHECK(one.p == 0.0);
    CHECK(one.tau == Approx(1.0 / 37.0));

    const auto two = solve_fixed_point(2, mac);
    CHECK(std::abs(two.p - two.tau) < 1e-10);
    CHECK(two.p == Approx(oracle::fixed_point_p(2, oracle::closed_form_tau)).epsilon(1e-8));

    // p* grows with n. tau* does not shrink monotonically under the closed
    // form (it bottoms out near n = 5 and then rises), unlike the chain below.
    double prev_p = -1.0;
    for (int n = 2; n <= 60; ++n) {
        const auto s = solve_fixed_point(n, mac);
        CHECK(s.residual <= kFixedPointTolerance);
        CHECK(std::abs(s.p - p_of_tau(s.tau, n)) <= kFixedPointTolerance);
        CHECK(s.p > prev_p);
        prev_p = s.p;
    }
    CHECK(solve_fixed_point(60, mac).tau > solve_fixed_point(5, mac).tau);
    CHECK(solve_fixed_point(50, mac).p > solve_fixed_point(10, mac).p);
    CHECK(solve_fixed_point(10, mac).p > solve_fixed_point(2, mac).p);
}

TEST_CASE("numeric-chain fixed point")
{
    const auto one = solve_markov_numeric(1, mac);
    CHECK(one.p == 0.0);
    CHECK(one.tau == Approx(2.0 / 9.0).epsilon(1e-12));

    double prev_p = -1.0;
    double prev_tau = 2.0;
    for (int n = 2; n <= 60; ++n) {
        const auto s = solve_markov_numeric(n, mac);
        CHECK(s.residual <= kFixedPointTolerance);
        CHECK(std::abs(s.p - p_of_tau(s.tau, n)) <= kFixedPointTolerance);
        CHECK(s.p > prev_p);
        CHECK(s.tau < prev_tau);
        prev_p = s.p;
        prev_tau = s.tau;
    }
    for (int n : {2, 7, 30}) {
        const double p_ref = oracle::fixed_point_p(n, oracle::chain_tau);
        CHECK(solve_markov_numeric(n, mac).p == Approx(p_ref).epsilon(1e-8));
    }
    CHECK_THROWS_AS(solve_markov_numeric(0, mac), InvalidParameter);
}

TEST_CASE("slot probabilities")
{
    auto same = [](SlotProbabilities a, SlotProbabilities b) {
        return a.p_idle == Approx(b.p_idle) && a.p_suc == Approx(b.p_suc) && a.p_col == Approx(b.p_col);
    };
    CHECK(same(slot_probabilities(5, 0.0), {1.0, 0.0, 0.0}));
    CHECK(same(slot_probabilities(2, 0.5), {0.25, 0.5, 0.25}));
    CHECK(same(slot_probabilities(1, 0.3), {0.7, 0.3, 0.0}));

    for (int n = 1; n <= 80; n += 3) {
        for (double tau = 0.0; tau <= 1.0; tau += 0.01) {
            const auto s = slot_probabilities(n, tau);
            CHECK(std::abs(s.p_idle + s.p_suc + s.p_col - 1.0) <= 1e-12);
            CHECK(s.p_idle >= 0.0);
            CHECK(s.p_suc >= 0.0);
            CHECK(s.p_col >= 0.0);
        }
    }
}

TEST_CASE("sector utilization")
{
    CHECK(sector_utilization(0, mac, slots) == 0.0);
    CHECK(sector_utilization(1, mac, slots) == Approx(oracle::utilization(1, 1.0 / 37.0)).epsilon(1e-12));
    CHECK(sector_utilization(1, mac, slots) == Approx(0.0257).epsilon(1e-3));
    CHECK(sector_utilization(1, mac, slots, SolverMethod::numeric_chain) ==
          Approx(oracle::utilization(1, 2.0 / 9.0)).epsilon(1e-12));
    // With the closed form, utilization still rises between n = 5 and n = 50;
    // the backoff chain gives the expected decline.
    CHECK(sector_utilization(50, mac, slots) > sector_utilization(5, mac, slots));
    CHECK(sector_utilization(50, mac, slots, SolverMethod::numeric_chain) <
          sector_utilization(5, mac, slots, SolverMethod::numeric_chain));

    for (int n : {3, 12, 40}) {
        const double tau = oracle::chain_tau(oracle::fixed_point_p(n, oracle::chain_tau));
        CHECK(sector_utilization(n, mac, slots, SolverMethod::numeric_chain) ==
              Approx(oracle::utilization(n, tau)).epsilon(1e-7));
    }
}

TEST_CASE("numeric-chain utilization decreases beyond n = 5")
{
    std::vector<double> u;
    for (int n = 0; n <= 60; ++n)
        u.push_back(sector_utilization(n, mac, slots, SolverMethod::numeric_chain));
    for (int n = 6; n <= 60; ++n)
        CHECK(u[static_cast<std::size_t>(n)] < u[static_cast<std::size_t>(n - 1)]);
    CHECK(u[50] < 0.6 * u[5]);
}

TEST_CASE("network utilization")
{
    CHECK(network_utilization(std::vector<double>{0.42}) == 0.42);
    CHECK(network_utilization(std::vector<double>{0.2, 0.4}) == Approx(0.3));
    CHECK(network_utilization(std::vector<double>(4, 0.11)) == Approx(0.11));
    CHECK_THROWS_AS(network_utilization(std::vector<double>{}), InvalidParameter);
}

TEST_CASE("solver method names")
{
    CHECK(parse_solver_method("closed-form") == SolverMethod::closed_form);
    CHECK(parse_solver_method("numeric-chain") == SolverMethod::numeric_chain);
    CHECK(to_string(SolverMethod::numeric_chain) == "numeric-chain");
    CHECK_THROWS_AS(parse_solver_method("newton"), InvalidParameter);
}
