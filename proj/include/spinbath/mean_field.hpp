// mean_field.hpp — Thermodynamic-limit backend
//
// The bath enters only through its average magnetization per spin,
//   m_z = (1/pi) Int_0^pi tanh(beta Lambda / 2) / Lambda * (h - cos phi) dphi,
//   Lambda = sqrt((h - cos phi)^2 + gamma^2 sin^2 phi),
// evaluated by adaptive bisection with a Gauss-Kronrod 7/15 rule per panel.
// The apparent 0/0 at Lambda -> 0 is removable (tanh(x)/x -> 1) and handled
// by a series branch. The effective TLS problem is then static 2x2, so the
// Rabi envelope maximum is the closed form and no time search is needed,
// an intentional asymmetry with the finite-N engines.
#pragma once

#include "spinbath/types.hpp"

namespace spinbath::mf {

struct QuadratureConfig {
    double abs_tolerance{1e-10};
    int max_subdivisions{60};  // maximum bisection depth

    void validate() const {
        if (!(abs_tolerance > 0.0))
            throw domain_error("QuadratureConfig: abs_tolerance must be > 0");
        if (max_subdivisions < 1)
            throw domain_error("QuadratureConfig: max_subdivisions must be >= 1");
    }
};

// Quasiparticle dispersion Lambda(phi; h, gamma) >= 0.
double dispersion_lambda(double phi, double h, double gamma);

// Average magnetization per spin in the thermodynamic limit. Throws
// accuracy_error (carrying the best estimate and its error bound) when the
// tolerance cannot be met within the subdivision budget. On success the
// achieved error bound is written to `error_bound` when given.
double magnetization(double h, double gamma, double beta,
                     const QuadratureConfig& quad = {},
                     double* error_bound = nullptr);

struct MeanFieldResult {
    double m_z{0.0};
    double delta_eff{0.0};  // Delta - Gamma m_z
    double p_tr{0.0};       // T^2 / (T^2 + delta_eff^2 / 4)
};

MeanFieldResult transition_probability_mf(const TlsParams& tls,
                                          const BathCoupling& coupling, double h,
                                          double gamma, double beta,
                                          const QuadratureConfig& quad = {});

// Central finite difference of p_tr in h. `step` must satisfy
// step^2 > 10 * quad.abs_tolerance so quadrature noise cannot dominate the
// difference quotient, and h - step must stay non-negative.
double dptr_dh(const TlsParams& tls, const BathCoupling& coupling, double h,
               double gamma, double beta, double step = 1e-4,
               const QuadratureConfig& quad = {});

struct FieldGrid {
    double h_min{1e-3};
    double h_max{1.5};
    int points{151};
};

// Field maximizing dptr_dh on the grid, with parabolic refinement over the
// best three points. Throws flat_profile_error when the derivative is
// non-positive everywhere.
double critical_field_estimate(const TlsParams& tls, const BathCoupling& coupling,
                               double gamma, double beta, const FieldGrid& grid = {},
                               double step = 1e-4, const QuadratureConfig& quad = {});

}  // namespace spinbath::mf
