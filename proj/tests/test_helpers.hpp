// test_helpers.hpp — independent oracles and generators shared by the suites
//
// Everything here deliberately avoids the engine code paths it is used to
// check: eigenvalues come straight from Eigen, sector restrictions from
// explicit popcount slicing, partial traces from raw index summation.
#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// Rows/cols of `m` restricted to bath states with exactly n down spins.
inline Eigen::MatrixXcd magnon_sector(const Eigen::MatrixXcd& m, int n_sites, int n) {
    std::vector<Eigen::Index> states;
    for (Eigen::Index b = 0; b < m.rows(); ++b)
        if (std::popcount(std::uint64_t(b)) == n) states.push_back(b);
    Eigen::MatrixXcd out(states.size(), states.size());
    for (std::size_t r = 0; r < states.size(); ++r)
        for (std::size_t c = 0; c < states.size(); ++c)
            out(Eigen::Index(r), Eigen::Index(c)) = m(states[r], states[c]);
    (void)n_sites;
    return out;
}

// Boltzmann weight of each magnon sector from sector-resolved dense
// diagonalization: W_n = sum_{E in spec_n} e^{-beta E} / Z.
inline std::vector<double> boltzmann_occupation(const Eigen::MatrixXcd& h_xx,
                                                int n_sites, double beta) {
    std::vector<Eigen::VectorXd> spectra;
    double e0 = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_sites; ++n) {
        spectra.push_back(eigenvalues(magnon_sector(h_xx, n_sites, n)));
        e0 = std::min(e0, spectra.back().minCoeff());
    }
    std::vector<double> w(std::size_t(n_sites) + 1, 0.0);
    double z = 0.0;
    for (int n = 0; n <= n_sites; ++n) {
        for (Eigen::Index i = 0; i < spectra[std::size_t(n)].size(); ++i)
            w[std::size_t(n)] += std::exp(-beta * (spectra[std::size_t(n)](i) - e0));
        z += w[std::size_t(n)];
    }
    for (double& x : w) x /= z;
    return w;
}

// Partial trace over the bath by raw index summation.
inline Eigen::MatrixXcd trace_out_bath(const Eigen::MatrixXcd& rho) {
    const Eigen::Index bath = rho.rows() / 2;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            for (Eigen::Index k = 0; k < bath; ++k)
                out(i, j) += rho(i * bath + k, j * bath + k);
    return out;
}

// Random density matrix from a random square root (Wishart-like).
inline Eigen::MatrixXcd random_density(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            a(i, j) = std::complex<double>(g(rng), g(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    return rho;
}

}  // namespace oracle
