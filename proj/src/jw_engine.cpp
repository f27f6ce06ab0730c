#include "spinbath/jw_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spinbath::jw {

namespace {

void require_isotropic(const SpinChainParams& chain, const char* who) {
    if (chain.anisotropy != 0.0)
        throw unsupported_model_error(std::string(who) +
                                      ": only gamma = 0 is exactly solvable here; "
                                      "use the ed engine for anisotropic chains");
}

struct SectorGround {
    double energy{0.0};  // sum of occupied single-particle energies
    int occupation{0};
    bool degenerate{false};
};

// Minimal-energy filling of `energies` with the required occupation parity
// (0 = even count, 1 = odd count).
SectorGround sector_ground(const std::vector<double>& energies, int parity) {
    const double scale = std::accumulate(
        energies.begin(), energies.end(), 1.0,
        [](double acc, double e) { return std::max(acc, std::abs(e)); });
    const double tol = 1e-12 * scale;

    SectorGround g;
    double cheapest_drop = std::numeric_limits<double>::infinity();
    double cheapest_add = std::numeric_limits<double>::infinity();
    for (double e : energies) {
        if (std::abs(e) <= tol) g.degenerate = true;
        if (e < 0.0) {
            g.energy += e;
            ++g.occupation;
            cheapest_drop = std::min(cheapest_drop, -e);
        } else {
            cheapest_add = std::min(cheapest_add, e);
        }
    }
    if (g.occupation % 2 != parity) {
        if (cheapest_add <= cheapest_drop) {
            g.energy += cheapest_add;
            ++g.occupation;
        } else {
            g.energy += cheapest_drop;
            --g.occupation;
        }
        if (std::abs(cheapest_add - cheapest_drop) <= tol) g.degenerate = true;
    }
    return g;
}

}  // namespace

SingleParticleSpectrum single_particle_energies(const SpinChainParams& chain) {
    chain.validate();
    require_isotropic(chain, "single_particle_energies");

    SingleParticleSpectrum s;
    s.n_sites = chain.n_sites;
    s.coupling = chain.coupling;
    s.field = chain.field;
    s.even_sector_energies.resize(chain.n_sites);
    s.odd_sector_energies.resize(chain.n_sites);
    for (int k = 0; k < chain.n_sites; ++k) {
        const double phi_even = 2.0 * kPi * (k + 0.5) / chain.n_sites;
        const double phi_odd = 2.0 * kPi * k / chain.n_sites;
        s.even_sector_energies[k] = 2.0 * (chain.field - chain.coupling * std::cos(phi_even));
        s.odd_sector_energies[k] = 2.0 * (chain.field - chain.coupling * std::cos(phi_odd));
    }
    return s;
}

GroundStateOccupation ground_state_occupation(const SpinChainParams& chain) {
    const SingleParticleSpectrum s = single_particle_energies(chain);
    const SectorGround even = sector_ground(s.even_sector_energies, 0);
    const SectorGround odd = sector_ground(s.odd_sector_energies, 1);

    const double scale = std::max({1.0, std::abs(even.energy), std::abs(odd.energy)});
    GroundStateOccupation g;
    if (even.energy <= odd.energy) {
        g.n_magnons = even.occupation;
        g.degenerate = even.degenerate;
    } else {
        g.n_magnons = odd.occupation;
        g.degenerate = odd.degenerate;
    }
    if (std::abs(even.energy - odd.energy) <= 1e-12 * scale) g.degenerate = true;
    return g;
}

namespace {

// Coefficients of prod_k (u_k + v_k x); all inputs non-negative, so the
// recursion is cancellation-free.
std::vector<double> subset_polynomial(const std::vector<double>& u,
                                      const std::vector<double>& v) {
    std::vector<double> c(u.size() + 1, 0.0);
    c[0] = 1.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        for (std::size_t n = k + 1; n > 0; --n) c[n] = c[n] * u[k] + c[n - 1] * v[k];
        c[0] *= u[k];
    }
    return c;
}

}  // namespace

OccupationWeights occupation_weights(const SingleParticleSpectrum& spectrum, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw domain_error("occupation_weights: beta must be positive and finite "
                           "(use infinite_temperature_weights for the beta -> 0 limit)");
    const int n = spectrum.n_sites;
    if (n < 1 || spectrum.even_sector_energies.size() != std::size_t(n) ||
        spectrum.odd_sector_energies.size() != std::size_t(n))
        throw domain_error("occupation_weights: malformed spectrum");

    // Rescale each mode's (empty, filled) weight pair (1, e^{-beta e}) by its
    // maximum. The scaling product exp(-beta F) is occupation-independent
    // within a sector; only the sector offset F survives into the weights.
    const auto sector = [&](const std::vector<double>& energies) {
        std::vector<double> u(energies.size()), v(energies.size());
        double offset = 0.0;  // F = sum_k min(0, e_k)
        for (std::size_t k = 0; k < energies.size(); ++k) {
            const double e = energies[k];
            u[k] = std::exp(beta * std::min(0.0, e));
            v[k] = std::exp(-beta * std::max(0.0, e));
            offset += std::min(0.0, e);
        }
        return std::pair{subset_polynomial(u, v), offset};
    };
    const auto [even_poly, even_offset] = sector(spectrum.even_sector_energies);
    const auto [odd_poly, odd_offset] = sector(spectrum.odd_sector_energies);
    const double ref = std::min(even_offset, odd_offset);

    OccupationWeights w;
    w.beta = beta;
    w.weights.resize(std::size_t(n) + 1, 0.0);
    for (int m = 0; m <= n; ++m) {
        const bool even = (m % 2 == 0);
        const double poly = even ? even_poly[std::size_t(m)] : odd_poly[std::size_t(m)];
        const double offset = even ? even_offset : odd_offset;
        w.weights[std::size_t(m)] = poly * std::exp(-beta * (offset - ref));
    }
    const double z = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
    if (!(z > 0.0) || !std::isfinite(z))
        throw numeric_error("occupation_weights: degenerate partition sum");
    for (double& x : w.weights) x /= z;
    return w;
}

OccupationWeights infinite_temperature_weights(int n_sites) {
    if (n_sites < 1)
        throw domain_error("infinite_temperature_weights: n_sites must be >= 1");
    OccupationWeights w;
    w.beta = 0.0;
    w.weights.resize(std::size_t(n_sites) + 1, 0.0);
    double binom = 1.0;
    for (int m = 0; m <= n_sites; ++m) {
        w.weights[std::size_t(m)] = std::ldexp(binom, -n_sites);
        binom = binom * double(n_sites - m) / double(m + 1);
    }
    return w;
}

double effective_detuning(int n_magnons, const SpinChainParams& chain,
                          const TlsParams& tls, const BathCoupling& coupling) {
    if (n_magnons < 0 || n_magnons > chain.n_sites)
        throw domain_error("effective_detuning: occupation outside [0, N]");
    return tls.gap -
           coupling.strength * (1.0 - 2.0 * double(n_magnons) / double(chain.n_sites));
}

double rabi_population(double delta_eff, const TlsParams& tls, double t) {
    tls.validate();
    if (t < 0.0) throw domain_error("rabi_population: t must be >= 0");
    const double omega = rabi_frequency(tls, delta_eff);
    const double s = std::sin(omega * t);
    const double amplitude =
        tls.tunneling * tls.tunneling / (omega * omega);  // T^2 / (T^2 + d^2/4)
    return amplitude * s * s;
}

TransitionResult max_weighted_rabi(const std::vector<double>& weights,
                                   const std::vector<double>& detunings,
                                   const TlsParams& tls, const TimeSearchConfig& search,
                                   Observable observable) {
    tls.validate();
    if (weights.size() != detunings.size() || weights.empty())
        throw domain_error("max_weighted_rabi: weights and detunings must match");

    const std::size_t terms = weights.size();
    std::vector<double> omega(terms), amplitude(terms);
    double omega_floor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < terms; ++i) {
        omega[i] = rabi_frequency(tls, detunings[i]);
        amplitude[i] = tls.tunneling * tls.tunneling / (omega[i] * omega[i]);
        omega_floor = std::min(omega_floor, omega[i]);
    }

    // Accumulation runs in fixed index order so results are bit-identical
    // regardless of any outer-level concurrency.
    const auto population = [&](double t) {
        double p = 0.0;
        for (std::size_t i = 0; i < terms; ++i) {
            const double s = std::sin(omega[i] * t);
            p += weights[i] * amplitude[i] * s * s;
        }
        return p;
    };
    const auto coherence = [&](double t) {
        Complex sum = 0.0;
        for (std::size_t i = 0; i < terms; ++i) {
            const double c = std::cos(omega[i] * t);
            const double s = std::sin(omega[i] * t);
            const Complex psi_up(0.0, -s * tls.tunneling / omega[i]);
            const Complex psi_dn(c, s * 0.5 * detunings[i] / omega[i]);
            sum += weights[i] * psi_dn * std::conj(psi_up);
        }
        return std::norm(sum);
    };

    const TimeMaximum peak = maximize_population(
        observable == Observable::population ? std::function<double(double)>(population)
                                             : std::function<double(double)>(coherence),
        omega_floor, search);

    TransitionResult out;
    out.engine = Engine::jw_exact;
    out.p_tr = std::clamp(peak.value, 0.0, 1.0);
    out.t_star = peak.t_star;
    out.diagnostics = {{"coarse_points", double(search.coarse_points)},
                       {"time_horizon", peak.horizon},
                       {"refine_iterations", double(peak.refine_iterations)},
                       {"achieved_window", peak.achieved_window},
                       {"omega_floor", omega_floor}};
    return out;
}

TransitionResult transition_probability_exact(const SpinChainParams& chain,
                                              const TlsParams& tls,
                                              const BathCoupling& coupling, double beta,
                                              const TimeSearchConfig& search,
                                              Observable observable) {
    chain.validate();
    tls.validate();
    coupling.validate();
    require_isotropic(chain, "transition_probability_exact");

    const SingleParticleSpectrum spectrum = single_particle_energies(chain);
    const OccupationWeights w = occupation_weights(spectrum, beta);
    std::vector<double> detunings(w.weights.size());
    for (std::size_t n = 0; n < detunings.size(); ++n)
        detunings[n] = effective_detuning(int(n), chain, tls, coupling);

    TransitionResult out = max_weighted_rabi(w.weights, detunings, tls, search, observable);
    out.engine = Engine::jw_exact;
    return out;
}

}  // namespace spinbath::jw
