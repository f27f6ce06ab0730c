// jw_engine.hpp — Exact finite-N backend for the isotropic (gamma = 0) chain
//
// The periodic XX ring maps to free fermions whose momentum grid depends on
// fermion parity: even-parity states quantize on antiperiodic momenta
// phi_k = 2 pi (k + 1/2) / N, odd-parity states on periodic momenta
// phi_k = 2 pi k / N, both with single-particle energies e_k = 2 (h - J cos
// phi_k) (the additive constant -hN cancels in all Boltzmann ratios). The
// 2^N eigenstate sum then collapses to N+1 occupation-resolved thermal
// weights, each driving a detuned 2x2 Rabi problem.
#pragma once

#include <vector>

#include "spinbath/time_search.hpp"
#include "spinbath/types.hpp"

namespace spinbath::jw {

struct SingleParticleSpectrum {
    int n_sites{0};
    double coupling{1.0};
    double field{0.0};
    std::vector<double> even_sector_energies;  // antiperiodic momenta, indexed by k
    std::vector<double> odd_sector_energies;   // periodic momenta, indexed by k
};

// Throws unsupported_model_error for gamma != 0 (use the ed engine there).
SingleParticleSpectrum single_particle_energies(const SpinChainParams& chain);

struct GroundStateOccupation {
    int n_magnons{0};
    // Set when a single-particle level sits at zero energy or the two parity
    // sectors tie, so the ground occupation is not unique.
    bool degenerate{false};
};

GroundStateOccupation ground_state_occupation(const SpinChainParams& chain);

// Thermal probability W_n that the bath holds n magnons, n = 0..N.
struct OccupationWeights {
    std::vector<double> weights;  // size N + 1, non-negative, sums to 1
    double beta{0.0};
};

// Generating-polynomial recursion over each momentum grid in O(N^2); even-n
// coefficients come from the even-sector grid, odd-n from the odd-sector
// grid. Per-mode Boltzmann factors are rescaled by their maximum before the
// expansion so beta up to 1e4 cannot overflow. beta must be positive and
// finite; the infinite-temperature limit is the separate function below.
OccupationWeights occupation_weights(const SingleParticleSpectrum& spectrum, double beta);

// beta -> 0 limit: W_n = C(N, n) / 2^N.
OccupationWeights infinite_temperature_weights(int n_sites);

// Renormalized gap Delta - Gamma (1 - 2n/N) seen by the TLS in a bath sector
// with n magnons.
double effective_detuning(int n_magnons, const SpinChainParams& chain,
                          const TlsParams& tls, const BathCoupling& coupling);

// p(t) = [T^2 / (T^2 + d^2/4)] sin^2(t sqrt(T^2 + d^2/4)).
double rabi_population(double delta_eff, const TlsParams& tls, double t);

// Building block for the engine: maximize sum_n weights[n] * rabi(detunings[n])
// over the shared search horizon. Exposed so property tests can drive it with
// arbitrary weight vectors.
TransitionResult max_weighted_rabi(const std::vector<double>& weights,
                                   const std::vector<double>& detunings,
                                   const TlsParams& tls, const TimeSearchConfig& search,
                                   Observable observable = Observable::population);

TransitionResult transition_probability_exact(const SpinChainParams& chain,
                                              const TlsParams& tls,
                                              const BathCoupling& coupling, double beta,
                                              const TimeSearchConfig& search = {},
                                              Observable observable = Observable::population);

}  // namespace spinbath::jw
