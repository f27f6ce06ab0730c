#include <doctest.h>

#include <cmath>

#include "spinbath/time_search.hpp"

using namespace spinbath;

TEST_SUITE_BEGIN("time_search");

TEST_CASE("rabi frequency") {
    CHECK(rabi_frequency({0.0, 0.1}, 0.0) == doctest::Approx(0.1));
    // T = 0.1, detuning 0.15: sqrt(0.01 + 0.005625) = 0.125 exactly
    CHECK(rabi_frequency({0.2, 0.1}, 0.15) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("frequency floor over occupation sectors") {
    // detunings span [0.15, 0.25]; the slowest oscillation sits at 0.15
    CHECK(detuning_frequency_floor({0.2, 0.1}, {0.05}, 8) ==
          doctest::Approx(0.125).epsilon(1e-15));
    // Gamma >= Delta puts a zero detuning in the sector set at n = N/4
    CHECK(detuning_frequency_floor({0.1, 0.1}, {0.2}, 4) == doctest::Approx(0.1));
    CHECK_THROWS_AS(detuning_frequency_floor({0.2, 0.1}, {0.05}, 0), domain_error);
}

TEST_CASE("locates the peak of a plain oscillation") {
    const auto f = [](double t) { return std::sin(t) * std::sin(t); };
    const TimeMaximum peak = maximize_population(f, 1.0, {});
    CHECK(peak.value == doctest::Approx(1.0).epsilon(1e-12));
    // the horizon holds several periods; the refined peak is one of the crests
    CHECK(std::abs(std::sin(peak.t_star)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(peak.horizon == doctest::Approx(8.0 * kPi));
}

TEST_CASE("flat profile raises a search error carrying the profile") {
    const auto flat = [](double) { return 0.25; };
    try {
        maximize_population(flat, 1.0, {});
        FAIL("expected search_error");
    } catch (const search_error& e) {
        CHECK(e.profile.size() == 2048);
        CHECK(e.profile.front() == 0.25);
    }
}

TEST_CASE("config validation") {
    TimeSearchConfig cfg;
    cfg.coarse_points = 32;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.refine_tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("search is deterministic") {
    const auto f = [](double t) {
        return 0.6 * std::sin(0.37 * t) * std::sin(0.37 * t) +
               0.4 * std::sin(0.53 * t) * std::sin(0.53 * t);
    };
    const TimeMaximum a = maximize_population(f, 0.37, {});
    const TimeMaximum b = maximize_population(f, 0.37, {});
    CHECK(a.t_star == b.t_star);
    CHECK(a.value == b.value);
}

TEST_SUITE_END();
