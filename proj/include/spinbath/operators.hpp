// operators.hpp — Model Hamiltonians and observables as dense Hermitian matrices
//
// Basis conventions used everywhere in this project:
//   * computational sigma_z product basis; bit value 0 = |up>, 1 = |down>
//   * chain site l occupies bit (n_sites - l), so site 1 is the most
//     significant bit of the basis index
//   * composite system+bath states are indexed s * 2^N + b with the TLS
//     qubit s as the most significant tensor factor (|up> = 0, |down> = 1)
#pragma once

#include <filesystem>

#include "spinbath/types.hpp"

namespace spinbath {

enum class PauliAxis { x, y, z };

// Densest total Hamiltonian allowed by default: 2 * 2^12 = 8192 states.
inline constexpr int kDefaultSiteCap = 12;

// Named Pauli matrix on `site` (1-based), identity elsewhere.
HermitianOperator pauli_on_site(int n_sites, int site, PauliAxis axis);

// Total magnetization M_z = sum_l sigma_l^z; diagonal with entries N - 2n
// on states with n down spins.
HermitianOperator build_m_z(int n_sites);

// Anisotropic XY ring
//   H = -J sum_{l=1..N} [ (1+g)/2 X_l X_{l+1} + (1-g)/2 Y_l Y_{l+1} ] - h M_z
// with periodic closure. The sum is implemented literally, so at N = 2 the
// single physical bond is visited twice.
HermitianOperator build_h_xy(const SpinChainParams& chain);

// TLS Hamiltonian [[Delta/2, T], [T, -Delta/2]] in the (|up>, |down>) basis.
HermitianOperator build_h_s(const TlsParams& tls);

// H_S (x) I + I (x) H_XY - Gamma |up><up| (x) M_z / N.
// Throws resource_error when n_sites exceeds `site_cap`.
HermitianOperator build_h_total(const TlsParams& tls, const SpinChainParams& chain,
                                const BathCoupling& coupling,
                                int site_cap = kDefaultSiteCap);

// Max-entry magnitude of ab - ba. Exact zeros are reachable because the
// builders produce dyadic-rational entry products.
double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

// Debug/golden dumps. Binary layout: magic "SBMX", uint64 dim, then row-major
// little-endian doubles with real and imaginary parts interleaved.
void write_matrix(const std::filesystem::path& path, const HermitianOperator& op);
HermitianOperator read_matrix(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const HermitianOperator& op);

}  // namespace spinbath
