// types.hpp — Parameter sets and the Hermitian-operator / density-matrix carriers
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "spinbath/errors.hpp"

namespace spinbath {

inline constexpr double kPi = 3.14159265358979323846;

using Complex = std::complex<double>;

// Ring of N spin-1/2 sites with periodic closure sigma_{N+1} = sigma_1.
// Energies are measured in units of the exchange coupling J (default 1).
struct SpinChainParams {
    int n_sites{2};
    double coupling{1.0};    // J
    double anisotropy{0.0};  // gamma in [0, 1]; 0 = XX chain, 1 = Ising chain
    double field{0.0};       // transverse field h >= 0

    void validate() const {
        if (n_sites < 2)
            throw domain_error("SpinChainParams: n_sites must be >= 2 (periodic ring)");
        if (anisotropy < 0.0 || anisotropy > 1.0)
            throw domain_error("SpinChainParams: anisotropy must lie in [0, 1]");
        if (field < 0.0)
            throw domain_error("SpinChainParams: field must be non-negative");
    }
};

// Two-level system with level splitting `gap` and tunneling element `tunneling`.
struct TlsParams {
    double gap{0.0};        // Delta
    double tunneling{1.0};  // T > 0

    void validate() const {
        if (!(tunneling > 0.0))
            throw domain_error("TlsParams: tunneling must be > 0");
    }
};

// Strength of the dissipative system-bath coupling.
struct BathCoupling {
    double strength{0.0};  // Gamma >= 0

    void validate() const {
        if (strength < 0.0)
            throw domain_error("BathCoupling: strength must be non-negative");
    }
};

// Dense complex square matrix whose Hermiticity is verified on construction.
// Residual tolerance is relative to the largest entry magnitude.
class HermitianOperator {
public:
    static constexpr double hermiticity_tol = 1e-12;

    explicit HermitianOperator(Eigen::MatrixXcd entries) : mat_(std::move(entries)) {
        if (mat_.rows() != mat_.cols() || mat_.rows() == 0)
            throw domain_error("HermitianOperator: matrix must be square and non-empty");
        const double scale = mat_.cwiseAbs().maxCoeff();
        if (hermiticity_residual() > hermiticity_tol * std::max(scale, 1.0))
            throw domain_error("HermitianOperator: Hermiticity residual exceeds tolerance");
    }

    Eigen::Index dim() const { return mat_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    double hermiticity_residual() const {
        return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    }

    // True when every entry has zero imaginary part (enables the fast real
    // symmetric eigensolver path).
    bool is_real() const { return mat_.imag().cwiseAbs().maxCoeff() == 0.0; }

private:
    Eigen::MatrixXcd mat_;
};

// Unit-trace positive-semidefinite state. The trace check always runs; the
// eigenvalue check runs eagerly up to `eager_psd_dim` and on demand via
// min_eigenvalue() above that, where the extra O(dim^3) solve would dominate
// construction paths that are positive by construction (thermal states).
class DensityMatrix {
public:
    static constexpr double trace_tol = 1e-10;
    static constexpr double psd_tol = 1e-10;
    static constexpr Eigen::Index eager_psd_dim = 256;

    explicit DensityMatrix(HermitianOperator op,
                           double trace_tolerance = trace_tol,
                           double psd_tolerance = psd_tol)
        : op_(std::move(op)) {
        const double tr = op_.matrix().trace().real();
        if (std::abs(tr - 1.0) > trace_tolerance)
            throw domain_error("DensityMatrix: trace deviates from 1 by " +
                               std::to_string(std::abs(tr - 1.0)));
        if (op_.dim() <= eager_psd_dim && min_eigenvalue() < -psd_tolerance)
            throw domain_error("DensityMatrix: negative eigenvalue below tolerance");
    }

    Eigen::Index dim() const { return op_.dim(); }
    const Eigen::MatrixXcd& matrix() const { return op_.matrix(); }
    const HermitianOperator& op() const { return op_; }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op_.matrix(),
                                                           Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw numeric_error("DensityMatrix: eigenvalue check failed to converge");
        return es.eigenvalues().minCoeff();
    }

private:
    HermitianOperator op_;
};

}  // namespace spinbath
