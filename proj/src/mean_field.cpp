#include "spinbath/mean_field.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace spinbath::mf {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (abscissa, Gauss weight,
// Kronrod weight); Gauss weight 0 marks Kronrod-only nodes.
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

struct PanelEstimate {
    double value{0.0};
    double error{0.0};
};

template <class F>
PanelEstimate gauss_kronrod_15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double gauss = kNodes[0][1] * f0;
    double kronrod = kNodes[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNodes[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        gauss += kNodes[i][1] * fi;
        kronrod += kNodes[i][2] * fi;
    }
    gauss *= half;
    kronrod *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

struct AdaptiveResult {
    double value{0.0};
    double error_bound{0.0};
    bool converged{true};
    int max_depth_used{0};
};

// Recursive bisection with per-panel tolerance split; panels that meet their
// share of the budget are accepted on the Kronrod estimate.
template <class F>
void adapt(const F& f, double a, double b, double tol, int depth, int max_depth,
           AdaptiveResult& out) {
    const PanelEstimate panel = gauss_kronrod_15(f, a, b);
    if (panel.error <= tol || depth >= max_depth) {
        out.value += panel.value;
        out.error_bound += panel.error;
        out.max_depth_used = std::max(out.max_depth_used, depth);
        if (panel.error > tol) out.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, out);
    adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, out);
}

// tanh(x)/x, stable through x = 0.
double tanhc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) return 1.0 - x * x / 3.0;
    return std::tanh(x) / x;
}

}  // namespace

double dispersion_lambda(double phi, double h, double gamma) {
    const double u = h - std::cos(phi);
    const double v = gamma * std::sin(phi);
    return std::hypot(u, v);
}

double magnetization(double h, double gamma, double beta, const QuadratureConfig& quad,
                     double* error_bound) {
    if (h < 0.0) throw domain_error("magnetization: h must be non-negative");
    if (gamma < 0.0) throw domain_error("magnetization: gamma must be non-negative");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw domain_error("magnetization: beta must be positive and finite");
    quad.validate();

    // tanh(beta Lambda / 2) / Lambda = (beta / 2) tanhc(beta Lambda / 2):
    // smooth through the Lambda -> 0 points (phi = 0 at h = 1, or the Fermi
    // angle arccos h when gamma = 0).
    const auto integrand = [&](double phi) {
        const double lambda = dispersion_lambda(phi, h, gamma);
        return 0.5 * beta * tanhc(0.5 * beta * lambda) * (h - std::cos(phi));
    };

    AdaptiveResult result;
    adapt(integrand, 0.0, kPi, quad.abs_tolerance, 0, quad.max_subdivisions, result);
    if (!result.converged)
        throw accuracy_error("magnetization: requested tolerance not reached within " +
                                 std::to_string(quad.max_subdivisions) + " subdivisions",
                             result.value / kPi, result.error_bound / kPi);
    if (error_bound) *error_bound = result.error_bound / kPi;
    return result.value / kPi;
}

MeanFieldResult transition_probability_mf(const TlsParams& tls,
                                          const BathCoupling& coupling, double h,
                                          double gamma, double beta,
                                          const QuadratureConfig& quad) {
    tls.validate();
    coupling.validate();
    MeanFieldResult out;
    out.m_z = magnetization(h, gamma, beta, quad);
    out.delta_eff = tls.gap - coupling.strength * out.m_z;
    const double t2 = tls.tunneling * tls.tunneling;
    out.p_tr = t2 / (t2 + 0.25 * out.delta_eff * out.delta_eff);
    return out;
}

double dptr_dh(const TlsParams& tls, const BathCoupling& coupling, double h,
               double gamma, double beta, double step, const QuadratureConfig& quad) {
    if (!(step > 0.0)) throw domain_error("dptr_dh: step must be > 0");
    if (h - step < 0.0)
        throw domain_error("dptr_dh: h - step must stay non-negative");
    if (!(step * step > 10.0 * quad.abs_tolerance))
        throw domain_error("dptr_dh: step^2 must exceed 10 * abs_tolerance "
                           "(finite difference would drown in quadrature noise)");
    const double above = transition_probability_mf(tls, coupling, h + step, gamma, beta, quad).p_tr;
    const double below = transition_probability_mf(tls, coupling, h - step, gamma, beta, quad).p_tr;
    return (above - below) / (2.0 * step);
}

double critical_field_estimate(const TlsParams& tls, const BathCoupling& coupling,
                               double gamma, double beta, const FieldGrid& grid,
                               double step, const QuadratureConfig& quad) {
    if (grid.points < 100)
        throw domain_error("critical_field_estimate: grid needs >= 100 points");
    if (!(grid.h_max > grid.h_min) || grid.h_min < step)
        throw domain_error("critical_field_estimate: grid must cover (0, h_max] with "
                           "h_min >= step");

    const double dh = (grid.h_max - grid.h_min) / double(grid.points - 1);
    std::vector<double> derivative(std::size_t(grid.points));
    std::size_t best = 0;
    for (int i = 0; i < grid.points; ++i) {
        const double h = grid.h_min + dh * double(i);
        derivative[std::size_t(i)] = dptr_dh(tls, coupling, h, gamma, beta, step, quad);
        if (derivative[std::size_t(i)] > derivative[best]) best = std::size_t(i);
    }
    if (!(derivative[best] > 0.0))
        throw flat_profile_error("critical_field_estimate: dP_tr/dh is non-positive "
                                 "across the entire grid");

    if (best == 0 || best + 1 == derivative.size())
        return grid.h_min + dh * double(best);
    const double y0 = derivative[best - 1];
    const double y1 = derivative[best];
    const double y2 = derivative[best + 1];
    const double curvature = y0 - 2.0 * y1 + y2;
    if (!(curvature < 0.0)) return grid.h_min + dh * double(best);
    const double offset = 0.5 * dh * (y0 - y2) / curvature;
    return grid.h_min + dh * double(best) + offset;
}

}  // namespace spinbath::mf
