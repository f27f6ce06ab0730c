// time_search.hpp — Two-stage maximization of oscillatory population signals
//
// Every finite-N engine maximizes a sum of incommensurate Rabi oscillations
// whose near-recurrence maxima appear early, so a coarse uniform grid over
// [0, horizon_multiplier / Omega_floor] followed by golden-section refinement
// around the best grid point locates the maximum reliably. Both engines use
// the same frequency floor so that cross-engine comparisons see identical
// search grids.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

struct TimeSearchConfig {
    double horizon_multiplier{8.0 * kPi};
    int coarse_points{2048};
    double refine_tolerance{1e-6};  // final bracket width in units of 1/Omega_floor

    void validate() const {
        if (coarse_points < 64)
            throw domain_error("TimeSearchConfig: coarse_points must be >= 64");
        if (!(refine_tolerance > 0.0))
            throw domain_error("TimeSearchConfig: refine_tolerance must be > 0");
        if (!(horizon_multiplier > 0.0))
            throw domain_error("TimeSearchConfig: horizon_multiplier must be > 0");
    }
};

enum class Engine { jw_exact, ed, meanfield };

std::string to_string(Engine engine);

// Maximized transition probability with the maximizing time and search
// diagnostics. Times are in units of 1/J.
struct TransitionResult {
    double p_tr{0.0};
    double t_star{0.0};
    Engine engine{Engine::jw_exact};
    std::map<std::string, double> diagnostics;
};

// Which matrix element of the reduced state is maximized. `population` is
// <up|rho_S(t)|up> (the definition consistent with the free-limit value
// T^2/(T^2 + Delta^2/4)); `coherence` is |<down|rho_S(t)|up>|^2, kept as a
// diagnostic alternative reading.
enum class Observable { population, coherence };

struct TimeMaximum {
    double t_star{0.0};
    double value{0.0};
    int refine_iterations{0};
    double achieved_window{0.0};  // final bracket width times Omega_floor
    double horizon{0.0};
};

// Rabi angular frequency sqrt(T^2 + detuning^2 / 4).
double rabi_frequency(const TlsParams& tls, double detuning);

// Smallest Rabi frequency over the bath occupation sectors n = 0..N, i.e.
// min_n sqrt(T^2 + (Delta - Gamma (1 - 2n/N))^2 / 4). Shared by the exact
// and ED engines as the time-search frequency floor.
double detuning_frequency_floor(const TlsParams& tls, const BathCoupling& coupling,
                                int n_sites);

// Coarse grid + golden-section refinement of `population` over
// [0, cfg.horizon_multiplier / omega_floor]. Throws search_error (carrying
// the coarse profile) when no grid point rises above the t = 0 baseline.
TimeMaximum maximize_population(const std::function<double(double)>& population,
                                double omega_floor, const TimeSearchConfig& cfg);

// Refinement stage on its own, for callers that computed the coarse profile
// in batch: `profile[i]` holds the population at t = horizon * i / (size-1).
TimeMaximum refine_coarse_profile(const std::vector<double>& profile, double horizon,
                                  const std::function<double(double)>& population,
                                  double omega_floor, const TimeSearchConfig& cfg);

}  // namespace spinbath
