// ed_engine.hpp — Brute-force dense backend for arbitrary anisotropy
//
// Dense eigendecomposition of H_XY and H_tot, Gibbs bath state, exact reduced
// dynamics via spectral phases, partial trace, and time maximization. Also
// the oracle that validates the jw engine. For speed the transition solver
// can block H_tot by conserved bath quantum numbers: total magnetization
// sectors for gamma = 0 (dimension 2 C(N, n)) and bath spin-flip parity for
// any gamma (dimension 2^N); both paths agree with the unblocked dense solver.
#pragma once

#include <vector>

#include "spinbath/operators.hpp"
#include "spinbath/time_search.hpp"
#include "spinbath/types.hpp"

namespace spinbath::ed {

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors;  // orthonormal columns

    Eigen::Index dim() const { return eigenvalues.size(); }
};

// Full spectral decomposition; uses the real symmetric solver when the
// matrix has no imaginary part. Throws numeric_error (with a matrix
// fingerprint) on non-convergence.
SpectralDecomposition eigh(const HermitianOperator& h);

// Gibbs state e^{-beta H} / Z computed in the eigenbasis with a
// ground-energy shift so beta up to 1e4 cannot overflow.
DensityMatrix thermal_state(const HermitianOperator& h, double beta);

// Trace over the bath factor of a 2 * 2^N state (system most significant).
DensityMatrix partial_trace_bath(const DensityMatrix& rho,
                                 double trace_tolerance = DensityMatrix::trace_tol,
                                 double psd_tolerance = 1e-8);

// Reduced 2x2 states at the requested times: rho0 is rotated to the
// eigenbasis once, phase factors applied per time, rotated back and traced.
std::vector<DensityMatrix> evolve_reduced(const SpectralDecomposition& htot,
                                          const DensityMatrix& rho0,
                                          const std::vector<double>& times);

enum class Blocking {
    automatic,      // magnetization when gamma = 0, parity otherwise
    none,           // single dense block
    magnetization,  // bath M_z sectors; requires gamma = 0
    parity          // bath spin-flip parity sectors
};

struct EdOptions {
    int site_cap{kDefaultSiteCap};
    Blocking blocking{Blocking::automatic};
    // Bath eigenstates with relative Boltzmann weight below this never enter
    // the time scan; the dropped mass (< dim * cutoff) is far below every
    // cross-engine tolerance.
    double weight_cutoff{1e-16};
};

TransitionResult transition_probability_ed(const SpinChainParams& chain,
                                           const TlsParams& tls,
                                           const BathCoupling& coupling, double beta,
                                           const TimeSearchConfig& search = {},
                                           const EdOptions& options = {},
                                           Observable observable = Observable::population);

}  // namespace spinbath::ed
