#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "hasim/contracting.hpp"
#include "hasim/rng.hpp"
#include "hasim/search.hpp"

using namespace hasim;

namespace {
const AgentParams kAgent{};

// Closed form for the largest premium-inducible effort, derived by
// eliminating the premium from the stationarity system by hand:
//   a = (-E + sqrt(E^2 + 4 rho k)) / (2 rho),  k = rho / (2 gamma e eta).
double ceiling_closed_form(double expected_theta) {
    double k = kAgent.rho / (2.0 * kAgent.disutility * std::exp(1.0) * kAgent.eta);
    return (-expected_theta +
            std::sqrt(expected_theta * expected_theta + 4.0 * kAgent.rho * k)) /
           (2.0 * kAgent.rho);
}
}  // namespace

TEST_CASE("inducible ceiling matches the closed form across expectations") {
    for (double e : {-120.0, -50.0, -10.0, 0.0, 35.0, 200.0, 1000.0}) {
        CHECK(inducible_ceiling(e, kAgent) ==
              doctest::Approx(ceiling_closed_form(e)).epsilon(1e-8));
    }
    // frozen reference values
    CHECK(inducible_ceiling(0.0, kAgent) ==
          doctest::Approx(1.9180183554164499).epsilon(1e-9));
    CHECK(inducible_ceiling(-50.0, kAgent) ==
          doctest::Approx(2.4821186674148506).epsilon(1e-9));
    CHECK(inducible_ceiling(200.0, kAgent) ==
          doctest::Approx(0.7710637689729234).epsilon(1e-9));
}

TEST_CASE("action space at the full-share premium and flat expectation") {
    auto space = action_space(1.0, 0.0, kAgent);
    REQUIRE(space.has_value());
    CHECK(space->lower == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(space->upper == doctest::Approx(0.27281664961672411).epsilon(1e-8));
}

TEST_CASE("action space at premium zero collapses to {0}") {
    auto space = action_space(0.0, 0.0, kAgent);
    REQUIRE(space.has_value());
    CHECK(space->lower == doctest::Approx(0.0));
    CHECK(space->upper == doctest::Approx(0.0));
}

TEST_CASE("action space under a pessimistic expectation") {
    // At premium 0.5 and E = -150 participation only holds on a high-effort
    // sliver below the best response.
    auto space = action_space(0.5, -150.0, kAgent);
    REQUIRE(space.has_value());
    CHECK(space->lower == doctest::Approx(3.0500605380475171).epsilon(1e-6));
    CHECK(space->upper == doctest::Approx(3.2909704985334152).epsilon(1e-7));

    // A small premium cannot secure participation there at all.
    CHECK_FALSE(action_space(0.05, -150.0, kAgent).has_value());
}

TEST_CASE("inducible space at flat and hostile expectations") {
    auto flat = inducible_space(0.0, kAgent);
    REQUIRE(flat.has_value());
    CHECK(flat->lower == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(flat->upper == doctest::Approx(1.9180183554164499).epsilon(1e-8));

    // Dire enough expectations defeat every premium.
    CHECK_FALSE(inducible_space(-300.0, kAgent).has_value());

    // Moderately negative: the space survives with an interior floor where
    // participation turns binding.
    auto mid = inducible_space(-100.0, kAgent);
    REQUIRE(mid.has_value());
    CHECK(mid->lower > 0.0);
    CHECK(mid->lower < mid->upper);
    double x_tilde = mid->upper * kAgent.rho - 100.0;
    double premium = std::min(1.0, 1.0 / (kAgent.eta * x_tilde));
    CHECK(point_agent_utility(premium, mid->lower, -100.0, kAgent) ==
          doctest::Approx(kAgent.reservation_utility).scale(1.0).epsilon(1e-6));
}

TEST_CASE("exploration threshold: frozen quantile of the fitted normal") {
    std::deque<double> estimates{1.0, 2.0, 3.0, 4.0};
    auto thr = exploration_threshold(estimates, 0.75);
    REQUIRE(thr.has_value());
    CHECK(*thr == doctest::Approx(3.3707625232323418).epsilon(1e-12));

    // median quantile is the mean
    CHECK(*exploration_threshold(estimates, 0.5) == doctest::Approx(2.5));
}

TEST_CASE("exploration threshold is translation-equivariant") {
    std::deque<double> base{0.4, -1.2, 3.3, 0.0, 2.2};
    std::deque<double> shifted;
    for (double v : base) shifted.push_back(v + 17.5);
    for (double q : {0.25, 0.5, 0.9}) {
        CHECK(*exploration_threshold(shifted, q) ==
              doctest::Approx(*exploration_threshold(base, q) + 17.5).epsilon(1e-12));
    }
}

TEST_CASE("exploration threshold degenerates without dispersion") {
    CHECK_FALSE(exploration_threshold({5.0}, 0.5).has_value());
    CHECK_FALSE(exploration_threshold({2.0, 2.0, 2.0}, 0.5).has_value());
    CHECK_THROWS_AS(exploration_threshold({1.0, 2.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(exploration_threshold({1.0, 2.0}, 1.0), std::domain_error);
}

TEST_CASE("strategy choice: forced and degenerate branches") {
    RunRng rng(5);
    std::deque<double> estimates{1.0, 2.0, 3.0};
    // infeasible status quo forces exploration regardless of the estimates
    CHECK(choose_strategy(estimates, 0.5, false, rng) == Strategy::kExplore);
    // delta shortcuts
    CHECK(choose_strategy(estimates, 0.0, true, rng) == Strategy::kExploit);
    CHECK(choose_strategy(estimates, 1.0, true, rng) == Strategy::kExplore);
    // dispersion-free window, default policy: no evidence of change
    std::deque<double> flat{2.0, 2.0, 2.0};
    CHECK(choose_strategy(flat, 0.5, true, rng, ThresholdMode::kCalibrated,
                          DegeneratePolicy::kExploit, 10) == Strategy::kExploit);
}

TEST_CASE("strategy choice: bernoulli while history is too short") {
    RunRng rng(11);
    std::deque<double> one{0.7};
    int explored = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        if (choose_strategy(one, 0.25, true, rng, ThresholdMode::kCalibrated,
                            DegeneratePolicy::kExploit,
                            /*observations_ever=*/1) == Strategy::kExplore)
            ++explored;
    }
    CHECK(std::abs(explored / static_cast<double>(n) - 0.25) < 0.02);
}

TEST_CASE("strategy choice: threshold comparison on the newest estimate") {
    RunRng rng(1);
    // upward surprise beyond the 1-delta quantile triggers exploration
    std::deque<double> spike{0.0, 0.0, 0.0, 10.0};
    CHECK(choose_strategy(spike, 0.5, true, rng, ThresholdMode::kCalibrated,
                          DegeneratePolicy::kExploit, 10) == Strategy::kExplore);
    std::deque<double> dip{0.0, 0.0, 0.0, -10.0};
    CHECK(choose_strategy(dip, 0.5, true, rng, ThresholdMode::kCalibrated,
                          DegeneratePolicy::kExploit, 10) == Strategy::kExploit);
}

TEST_CASE("calibrated and literal modes: delta semantics") {
    RunRng rng(1);
    // Rising two-point window: the newest estimate sits 0.707 sample
    // standard deviations above the mean. At delta = 0.8 the calibrated
    // threshold (20% quantile) is below it -> explore; the literal
    // threshold (80% quantile, z = 0.84) is above it -> exploit.
    std::deque<double> rising{0.0, 1.0};
    CHECK(choose_strategy(rising, 0.8, true, rng, ThresholdMode::kCalibrated,
                          DegeneratePolicy::kExploit, 10) == Strategy::kExplore);
    CHECK(choose_strategy(rising, 0.8, true, rng, ThresholdMode::kLiteral,
                          DegeneratePolicy::kExploit, 10) == Strategy::kExploit);
}

TEST_CASE("modes coincide at delta one half") {
    RunRng rng1(3), rng2(3);
    std::deque<double> window{0.3, -0.8, 1.4, 0.9};
    for (int i = 0; i < 10; ++i) {
        CHECK(choose_strategy(window, 0.5, true, rng1, ThresholdMode::kCalibrated,
                              DegeneratePolicy::kExploit, 10) ==
              choose_strategy(window, 0.5, true, rng2, ThresholdMode::kLiteral,
                              DegeneratePolicy::kExploit, 10));
        window.push_back(window.back() * -0.7 + 0.1);
        window.pop_front();
    }
}

TEST_CASE("exploitation window: centered, clipped, degenerate") {
    ActionSpace space{0.0, 10.0};
    Interval centered = exploitation_window(space, 10, 5.0);
    CHECK(centered.lo == doctest::Approx(4.5));
    CHECK(centered.hi == doctest::Approx(5.5));

    Interval low = exploitation_window(space, 10, 0.2);
    CHECK(low.lo == doctest::Approx(0.0).scale(1.0));
    CHECK(low.hi == doctest::Approx(1.0));

    Interval high = exploitation_window(space, 10, 9.9);
    CHECK(high.lo == doctest::Approx(9.0));
    CHECK(high.hi == doctest::Approx(10.0));

    // status quo below the space: anchored on the projection
    ActionSpace shifted{2.0, 10.0};
    Interval clamped = exploitation_window(shifted, 10, 1.0);
    CHECK(clamped.lo == doctest::Approx(2.0));
    CHECK(clamped.hi == doctest::Approx(2.8));

    // q = 1 sees the whole space
    Interval full = exploitation_window(space, 1, 7.3);
    CHECK(full.lo == doctest::Approx(0.0).scale(1.0));
    CHECK(full.hi == doctest::Approx(10.0));
}

TEST_CASE("exploration space is the window complement") {
    ActionSpace space{0.0, 10.0};
    SearchSpace both = exploration_space(space, Interval{4.5, 5.5});
    CHECK(both.count == 2);
    CHECK(both.intervals[0].lo == doctest::Approx(0.0).scale(1.0));
    CHECK(both.intervals[0].hi == doctest::Approx(4.5));
    CHECK(both.intervals[1].lo == doctest::Approx(5.5));
    CHECK(both.intervals[1].hi == doctest::Approx(10.0));
    CHECK(both.total_length() == doctest::Approx(9.0));

    SearchSpace right = exploration_space(space, Interval{0.0, 1.0});
    CHECK(right.count == 1);
    CHECK(right.intervals[0].lo == doctest::Approx(1.0));
    CHECK(right.intervals[0].hi == doctest::Approx(10.0));

    // window covering everything: fall back to the full space
    SearchSpace fallback = exploration_space(space, Interval{0.0, 10.0});
    CHECK(fallback.count == 1);
    CHECK(fallback.total_length() == doctest::Approx(10.0));

    // no window at all (no viable status quo): the full space
    SearchSpace full = exploration_space(space, std::nullopt);
    CHECK(full.count == 1);
    CHECK(full.intervals[0].hi == doctest::Approx(10.0));
}

TEST_CASE("window and exploration intervals partition the space") {
    ActionSpace space{1.0, 7.0};
    for (double sq : {1.0, 2.2, 4.0, 6.9}) {
        for (int q : {2, 3, 10}) {
            Interval w = exploitation_window(space, q, sq);
            CHECK(w.lo >= space.lower - 1e-12);
            CHECK(w.hi <= space.upper + 1e-12);
            CHECK(w.length() == doctest::Approx((space.upper - space.lower) / q));
            SearchSpace ex = exploration_space(space, w);
            CHECK(ex.total_length() ==
                  doctest::Approx(space.upper - space.lower - w.length()));
            for (int i = 0; i < ex.count; ++i) {
                // no overlap with the window
                CHECK((ex.intervals[i].hi <= w.lo + 1e-12 ||
                       ex.intervals[i].lo >= w.hi - 1e-12));
            }
        }
    }
}

TEST_CASE("candidates are uniform over the union, by interval mass") {
    SearchSpace two;
    two.kind = Strategy::kExplore;
    two.add({0.0, 1.0});
    two.add({9.0, 10.0});
    RunRng rng(17);
    int in_low = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        auto [c1, c2] = sample_candidates(two, rng);
        for (double c : {c1, c2}) {
            bool low = c >= 0.0 && c <= 1.0;
            bool high = c >= 9.0 && c <= 10.0;
            CHECK((low || high));
            if (low) ++in_low;
        }
    }
    CHECK(std::abs(in_low / (2.0 * n) - 0.5) < 0.02);
}

TEST_CASE("zero-width search space degenerates to its point") {
    SearchSpace point;
    point.add({2.0, 2.0});
    RunRng rng(3);
    auto [c1, c2] = sample_candidates(point, rng);
    CHECK(c1 == doctest::Approx(2.0));
    CHECK(c2 == doctest::Approx(2.0));
}

TEST_CASE("selection takes the maximum, status quo included when it competes") {
    CHECK(select_effort(0.4, 0.9, 0.6, true, true) == doctest::Approx(0.9));
    CHECK(select_effort(0.4, 0.5, 0.6, true, true) == doctest::Approx(0.6));
    CHECK(select_effort(0.4, 0.5, 0.6, true, false) == doctest::Approx(0.5));
    CHECK(select_effort(0.4, 0.5, 0.6, false, true) == doctest::Approx(0.5));
}

TEST_CASE("selection never falls below a feasible competing status quo") {
    RunRng rng(23);
    ActionSpace space{0.0, 2.0};
    for (int i = 0; i < 500; ++i) {
        double sq = rng.uniform(0.0, 2.0);
        Interval w = exploitation_window(space, 10, sq);
        SearchSpace ex = exploration_space(space, w);
        auto [c1, c2] = sample_candidates(ex, rng);
        CHECK(select_effort(c1, c2, sq, true, true) >= sq);
    }
}
