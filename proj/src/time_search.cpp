#include "spinbath/time_search.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spinbath {

std::string to_string(Engine engine) {
    switch (engine) {
        case Engine::jw_exact: return "jw_exact";
        case Engine::ed: return "ed";
        case Engine::meanfield: return "meanfield";
    }
    return "unknown";
}

double rabi_frequency(const TlsParams& tls, double detuning) {
    return std::sqrt(tls.tunneling * tls.tunneling + 0.25 * detuning * detuning);
}

double detuning_frequency_floor(const TlsParams& tls, const BathCoupling& coupling,
                                int n_sites) {
    if (n_sites < 1)
        throw domain_error("detuning_frequency_floor: n_sites must be >= 1");
    double floor = rabi_frequency(tls, tls.gap - coupling.strength);
    for (int n = 1; n <= n_sites; ++n) {
        const double detuning =
            tls.gap - coupling.strength * (1.0 - 2.0 * double(n) / double(n_sites));
        floor = std::min(floor, rabi_frequency(tls, detuning));
    }
    return floor;
}

namespace {

// Golden-section ascent on [lo, hi]; assumes a single local maximum inside.
TimeMaximum golden_refine(const std::function<double(double)>& f, double lo, double hi,
                          double width_target, double best_t, double best_v) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    int iterations = 0;
    while (hi - lo > width_target && iterations < 200) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
        ++iterations;
    }
    TimeMaximum out;
    out.refine_iterations = iterations;
    out.t_star = best_t;
    out.value = best_v;
    for (const auto& [t, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
        if (v > out.value) {
            out.value = v;
            out.t_star = t;
        }
    }
    out.achieved_window = hi - lo;
    return out;
}

}  // namespace

TimeMaximum refine_coarse_profile(const std::vector<double>& profile, double horizon,
                                  const std::function<double(double)>& population,
                                  double omega_floor, const TimeSearchConfig& cfg) {
    cfg.validate();
    if (!(omega_floor > 0.0))
        throw domain_error("refine_coarse_profile: omega_floor must be > 0");
    if (profile.size() < 2)
        throw domain_error("refine_coarse_profile: profile needs >= 2 samples");

    std::size_t best = 0;
    for (std::size_t i = 1; i < profile.size(); ++i)
        if (profile[i] > profile[best]) best = i;
    if (best == 0 || !(profile[best] > profile[0]))
        throw search_error("time search: coarse grid found no rise above t = 0",
                           std::vector<double>(profile));

    const double dt = horizon / double(profile.size() - 1);
    const double lo = std::max(0.0, (double(best) - 1.0) * dt);
    const double hi = std::min(horizon, (double(best) + 1.0) * dt);
    TimeMaximum out = golden_refine(population, lo, hi, cfg.refine_tolerance / omega_floor,
                                    double(best) * dt, profile[best]);
    out.achieved_window *= omega_floor;
    out.horizon = horizon;
    return out;
}

TimeMaximum maximize_population(const std::function<double(double)>& population,
                                double omega_floor, const TimeSearchConfig& cfg) {
    cfg.validate();
    if (!(omega_floor > 0.0))
        throw domain_error("maximize_population: omega_floor must be > 0");

    const double horizon = cfg.horizon_multiplier / omega_floor;
    const int points = cfg.coarse_points;
    std::vector<double> profile(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        profile[std::size_t(i)] = population(horizon * double(i) / double(points - 1));
    return refine_coarse_profile(profile, horizon, population, omega_floor, cfg);
}

}  // namespace spinbath
