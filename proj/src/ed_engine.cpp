#include "spinbath/ed_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

namespace spinbath::ed {

namespace {

std::string matrix_fingerprint(const Eigen::MatrixXcd& m) {
    std::ostringstream os;
    os << "dim=" << m.rows() << " fro=" << m.norm() << " trace=" << m.trace();
    return os.str();
}

}  // namespace

SpectralDecomposition eigh(const HermitianOperator& h) {
    SpectralDecomposition out;
    if (h.is_real()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix().real());
        if (solver.info() != Eigen::Success)
            throw numeric_error("eigh: real solver failed to converge [" +
                                matrix_fingerprint(h.matrix()) + "]");
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
        if (solver.info() != Eigen::Success)
            throw numeric_error("eigh: complex solver failed to converge [" +
                                matrix_fingerprint(h.matrix()) + "]");
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors();
    }
    return out;
}

DensityMatrix thermal_state(const HermitianOperator& h, double beta) {
    if (!(beta > 0.0))
        throw domain_error("thermal_state: beta must be > 0");
    const SpectralDecomposition es = eigh(h);
    const double e0 = es.eigenvalues.minCoeff();
    Eigen::VectorXd weights =
        (-beta * (es.eigenvalues.array() - e0)).exp().matrix();
    weights /= weights.sum();
    Eigen::MatrixXcd rho = es.eigenvectors * weights.asDiagonal() *
                           es.eigenvectors.adjoint();
    // the weighted sum is positive by construction; symmetrize away rounding
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(HermitianOperator(std::move(rho)));
}

namespace {

Eigen::Index bath_dim_of(const DensityMatrix& rho, const char* who) {
    const Eigen::Index dim = rho.dim();
    if (dim < 4 || (dim & (dim - 1)) != 0)
        throw domain_error(std::string(who) +
                           ": dimension must be 2 * 2^N with N >= 1, got " +
                           std::to_string(dim));
    return dim / 2;
}

}  // namespace

DensityMatrix partial_trace_bath(const DensityMatrix& rho, double trace_tolerance,
                                 double psd_tolerance) {
    const Eigen::Index bath = bath_dim_of(rho, "partial_trace_bath");
    Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            for (Eigen::Index k = 0; k < bath; ++k)
                reduced(i, j) += rho.matrix()(i * bath + k, j * bath + k);
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    return DensityMatrix(HermitianOperator(std::move(reduced)), trace_tolerance,
                         psd_tolerance);
}

std::vector<DensityMatrix> evolve_reduced(const SpectralDecomposition& htot,
                                          const DensityMatrix& rho0,
                                          const std::vector<double>& times) {
    if (rho0.dim() != htot.dim())
        throw domain_error("evolve_reduced: state dimension " +
                           std::to_string(rho0.dim()) + " does not match spectrum " +
                           std::to_string(htot.dim()));
    bath_dim_of(rho0, "evolve_reduced");

    const Eigen::MatrixXcd a =
        htot.eigenvectors.adjoint() * rho0.matrix() * htot.eigenvectors;
    std::vector<DensityMatrix> out;
    out.reserve(times.size());
    const Eigen::Index dim = htot.dim();
    Eigen::VectorXcd phase(dim);
    for (double t : times) {
        for (Eigen::Index m = 0; m < dim; ++m)
            phase(m) = std::polar(1.0, -htot.eigenvalues(m) * t);
        const Eigen::MatrixXcd rotated =
            phase.asDiagonal() * a * phase.conjugate().asDiagonal();
        Eigen::MatrixXcd rho_t = htot.eigenvectors * rotated * htot.eigenvectors.adjoint();
        rho_t = 0.5 * (rho_t + rho_t.adjoint()).eval();
        out.push_back(partial_trace_bath(
            DensityMatrix(HermitianOperator(std::move(rho_t)), 1e-8, 1e-8), 1e-8, 1e-8));
    }
    return out;
}

// ---------------------------------------------------------------------------
// sector-blocked transition solver
// ---------------------------------------------------------------------------

namespace {

int popcount(std::uint64_t x) { return std::popcount(x); }

struct BathBlock {
    std::vector<std::int64_t> states;  // bath computational indices, ascending
};

std::vector<BathBlock> split_bath(const SpinChainParams& chain, Blocking blocking) {
    const std::int64_t dim = std::int64_t{1} << chain.n_sites;
    std::vector<BathBlock> blocks;
    switch (blocking) {
        case Blocking::none:
            blocks.resize(1);
            for (std::int64_t b = 0; b < dim; ++b) blocks[0].states.push_back(b);
            break;
        case Blocking::magnetization:
            if (chain.anisotropy != 0.0)
                throw domain_error("transition_probability_ed: magnetization blocking "
                                   "requires gamma = 0");
            blocks.resize(std::size_t(chain.n_sites) + 1);
            for (std::int64_t b = 0; b < dim; ++b)
                blocks[std::size_t(popcount(std::uint64_t(b)))].states.push_back(b);
            break;
        case Blocking::parity:
            blocks.resize(2);
            for (std::int64_t b = 0; b < dim; ++b)
                blocks[std::size_t(popcount(std::uint64_t(b)) & 1)].states.push_back(b);
            break;
        case Blocking::automatic:
            return split_bath(chain, chain.anisotropy == 0.0 ? Blocking::magnetization
                                                             : Blocking::parity);
    }
    return blocks;
}

// H_XY restricted to a conserved-sector basis, built directly from bit
// operations (the hopping and pair terms never leave a valid block).
Eigen::MatrixXd restricted_h_xy(const SpinChainParams& chain, const BathBlock& block,
                                const std::vector<std::int32_t>& position) {
    const int n = chain.n_sites;
    const double j = chain.coupling;
    const double g = chain.anisotropy;
    const Eigen::Index size = Eigen::Index(block.states.size());
    Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const std::uint64_t b = std::uint64_t(block.states[std::size_t(r)]);
        ham(r, r) = -chain.field * double(n - 2 * popcount(b));
        for (int l = 1; l <= n; ++l) {
            const int l2 = (l % n) + 1;
            const std::uint64_t bit_a = std::uint64_t{1} << (n - l);
            const std::uint64_t bit_b = std::uint64_t{1} << (n - l2);
            const bool a_down = b & bit_a;
            const bool b_down = b & bit_b;
            const double amp = (a_down != b_down) ? -j : -j * g;
            if (amp == 0.0) continue;
            const std::int32_t c = position[std::size_t(b ^ bit_a ^ bit_b)];
            if (c < 0)
                throw numeric_error("transition_probability_ed: bond left the sector "
                                    "(blocking inconsistent with the model)");
            ham(Eigen::Index(c), r) += amp;
        }
    }
    return ham;
}

struct SolvedBlock {
    Eigen::Index bath_size{0};
    Eigen::VectorXd bath_energies;
    Eigen::MatrixXd bath_vectors;
    Eigen::VectorXd tot_energies;
    Eigen::MatrixXd tot_vectors;  // real symmetric model => real eigenvectors
};

SolvedBlock solve_block(const SpinChainParams& chain, const TlsParams& tls,
                        const BathCoupling& coupling, const BathBlock& block,
                        const std::vector<std::int32_t>& position) {
    SolvedBlock out;
    const Eigen::Index size = Eigen::Index(block.states.size());
    out.bath_size = size;
    const Eigen::MatrixXd hxy = restricted_h_xy(chain, block, position);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bath_solver(hxy);
    if (bath_solver.info() != Eigen::Success)
        throw numeric_error("transition_probability_ed: bath eigensolver failed");
    out.bath_energies = bath_solver.eigenvalues();
    out.bath_vectors = bath_solver.eigenvectors();

    Eigen::MatrixXd htot = Eigen::MatrixXd::Zero(2 * size, 2 * size);
    htot.topLeftCorner(size, size) = hxy;
    htot.bottomRightCorner(size, size) = hxy;
    const double half_gap = 0.5 * tls.gap;
    const double gn = coupling.strength / chain.n_sites;
    for (Eigen::Index r = 0; r < size; ++r) {
        const int mz = chain.n_sites -
                       2 * popcount(std::uint64_t(block.states[std::size_t(r)]));
        htot(r, r) += half_gap - gn * double(mz);  // |up> block carries the coupling
        htot(size + r, size + r) += -half_gap;
        htot(r, size + r) = tls.tunneling;
        htot(size + r, r) = tls.tunneling;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tot_solver(htot);
    if (tot_solver.info() != Eigen::Success)
        throw numeric_error("transition_probability_ed: total eigensolver failed");
    out.tot_energies = tot_solver.eigenvalues();
    out.tot_vectors = tot_solver.eigenvectors();
    return out;
}

// One thermally occupied bath eigenstate |b> entering the scan: the initial
// state |down> (x) |b> expressed in the H_tot eigenbasis.
struct InitialState {
    double weight{0.0};
    Eigen::VectorXd components;  // u = V^T (|down> (x) |b>)
};

struct ScanData {
    std::vector<const SolvedBlock*> block_of;
    std::vector<InitialState> states;
};

// P(t) (or the coherence reading) accumulated in fixed state order.
double observable_at(const ScanData& scan, Observable observable, double t) {
    double population = 0.0;
    Complex coherence = 0.0;
    for (std::size_t s = 0; s < scan.states.size(); ++s) {
        const SolvedBlock& blk = *scan.block_of[s];
        const InitialState& st = scan.states[s];
        const Eigen::Index size = blk.bath_size;
        Eigen::VectorXcd z(2 * size);
        for (Eigen::Index m = 0; m < 2 * size; ++m)
            z(m) = st.components(m) * std::polar(1.0, -blk.tot_energies(m) * t);
        const Eigen::VectorXcd psi_up = blk.tot_vectors.topRows(size).cast<Complex>() * z;
        if (observable == Observable::population) {
            population += st.weight * psi_up.squaredNorm();
        } else {
            const Eigen::VectorXcd psi_dn =
                blk.tot_vectors.bottomRows(size).cast<Complex>() * z;
            coherence += st.weight * psi_dn.dot(psi_up);  // sum_k conj(dn_k) up_k
        }
    }
    return observable == Observable::population ? population : std::norm(coherence);
}

// Chunked coarse-grid evaluation: phase matrices are shared across the
// occupied states of a block, and the up-projection runs as two real GEMMs.
std::vector<double> coarse_profile(const ScanData& scan, Observable observable,
                                   const std::vector<double>& times) {
    const Eigen::Index nt = Eigen::Index(times.size());
    std::vector<double> population(std::size_t(nt), 0.0);
    std::vector<Complex> coherence(std::size_t(nt), 0.0);

    constexpr Eigen::Index chunk = 512;
    const SolvedBlock* current = nullptr;
    Eigen::MatrixXd cos_phase, sin_phase;
    for (Eigen::Index t0 = 0; t0 < nt; t0 += chunk) {
        const Eigen::Index width = std::min(chunk, nt - t0);
        current = nullptr;
        for (std::size_t s = 0; s < scan.states.size(); ++s) {
            const SolvedBlock& blk = *scan.block_of[s];
            const Eigen::Index size = blk.bath_size;
            if (&blk != current) {
                cos_phase.resize(2 * size, width);
                sin_phase.resize(2 * size, width);
                for (Eigen::Index jt = 0; jt < width; ++jt)
                    for (Eigen::Index m = 0; m < 2 * size; ++m) {
                        const double arg = -blk.tot_energies(m) * times[std::size_t(t0 + jt)];
                        cos_phase(m, jt) = std::cos(arg);
                        sin_phase(m, jt) = std::sin(arg);
                    }
                current = &blk;
            }
            const InitialState& st = scan.states[s];
            const Eigen::MatrixXd z_re = cos_phase.array().colwise() * st.components.array();
            const Eigen::MatrixXd z_im = sin_phase.array().colwise() * st.components.array();
            const auto v_up = blk.tot_vectors.topRows(size);
            const Eigen::MatrixXd y_re = v_up * z_re;
            const Eigen::MatrixXd y_im = v_up * z_im;
            if (observable == Observable::population) {
                for (Eigen::Index jt = 0; jt < width; ++jt)
                    population[std::size_t(t0 + jt)] +=
                        st.weight * (y_re.col(jt).squaredNorm() + y_im.col(jt).squaredNorm());
            } else {
                const auto v_dn = blk.tot_vectors.bottomRows(size);
                const Eigen::MatrixXd w_re = v_dn * z_re;
                const Eigen::MatrixXd w_im = v_dn * z_im;
                for (Eigen::Index jt = 0; jt < width; ++jt) {
                    const double re = w_re.col(jt).dot(y_re.col(jt)) +
                                      w_im.col(jt).dot(y_im.col(jt));
                    const double im = w_re.col(jt).dot(y_im.col(jt)) -
                                      w_im.col(jt).dot(y_re.col(jt));
                    coherence[std::size_t(t0 + jt)] += st.weight * Complex(re, im);
                }
            }
        }
    }
    if (observable == Observable::coherence)
        for (Eigen::Index jt = 0; jt < nt; ++jt)
            population[std::size_t(jt)] = std::norm(coherence[std::size_t(jt)]);
    return population;
}

}  // namespace

TransitionResult transition_probability_ed(const SpinChainParams& chain,
                                           const TlsParams& tls,
                                           const BathCoupling& coupling, double beta,
                                           const TimeSearchConfig& search,
                                           const EdOptions& options,
                                           Observable observable) {
    chain.validate();
    tls.validate();
    coupling.validate();
    search.validate();
    if (!(beta > 0.0))
        throw domain_error("transition_probability_ed: beta must be > 0");
    if (chain.n_sites > options.site_cap)
        throw resource_error("transition_probability_ed: n_sites = " +
                             std::to_string(chain.n_sites) +
                             " exceeds the memory cap of " +
                             std::to_string(options.site_cap) +
                             " bath spins (2*2^" + std::to_string(options.site_cap) +
                             " dense states); raise EdOptions::site_cap deliberately");

    const std::vector<BathBlock> blocks = split_bath(chain, options.blocking);
    std::vector<std::int32_t> position(std::size_t(1) << chain.n_sites, -1);

    std::vector<SolvedBlock> solved;
    solved.reserve(blocks.size());
    for (const BathBlock& block : blocks) {
        std::fill(position.begin(), position.end(), -1);
        for (std::size_t r = 0; r < block.states.size(); ++r)
            position[std::size_t(block.states[r])] = std::int32_t(r);
        solved.push_back(solve_block(chain, tls, coupling, block, position));
    }

    double e0 = std::numeric_limits<double>::infinity();
    for (const SolvedBlock& blk : solved) e0 = std::min(e0, blk.bath_energies.minCoeff());
    double z_total = 0.0;
    for (const SolvedBlock& blk : solved)
        z_total += (-beta * (blk.bath_energies.array() - e0)).exp().sum();

    ScanData scan;
    double kept_weight = 0.0;
    for (const SolvedBlock& blk : solved) {
        for (Eigen::Index b = 0; b < blk.bath_size; ++b) {
            const double relative = std::exp(-beta * (blk.bath_energies(b) - e0));
            if (relative < options.weight_cutoff) continue;
            const double w = relative / z_total;
            InitialState st;
            st.weight = w;
            st.components = blk.tot_vectors.bottomRows(blk.bath_size).transpose() *
                            blk.bath_vectors.col(b);
            scan.block_of.push_back(&blk);
            scan.states.push_back(std::move(st));
            kept_weight += w;
        }
    }
    if (scan.states.empty())
        throw numeric_error("transition_probability_ed: no bath state survived the "
                            "thermal cutoff");

    const double omega_floor = detuning_frequency_floor(tls, coupling, chain.n_sites);
    const double horizon = search.horizon_multiplier / omega_floor;
    std::vector<double> times(std::size_t(search.coarse_points));
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = horizon * double(i) / double(times.size() - 1);
    const std::vector<double> profile = coarse_profile(scan, observable, times);
    const auto single = [&](double t) { return observable_at(scan, observable, t); };
    const TimeMaximum peak =
        refine_coarse_profile(profile, horizon, single, omega_floor, search);

    TransitionResult out;
    out.engine = Engine::ed;
    out.p_tr = std::clamp(peak.value, 0.0, 1.0);
    out.t_star = peak.t_star;
    out.diagnostics = {{"coarse_points", double(search.coarse_points)},
                       {"time_horizon", peak.horizon},
                       {"refine_iterations", double(peak.refine_iterations)},
                       {"achieved_window", peak.achieved_window},
                       {"omega_floor", omega_floor},
                       {"blocks", double(solved.size())},
                       {"thermal_states_kept", double(scan.states.size())},
                       {"thermal_weight_kept", kept_weight}};
    return out;
}

}  // namespace spinbath::ed
