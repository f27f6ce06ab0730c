#include <doctest.h>

#include <cmath>

#include "spinbath/jw_engine.hpp"
#include "spinbath/mean_field.hpp"

using namespace spinbath;

TEST_SUITE_BEGIN("meanfield");

TEST_CASE("dispersion") {
    CHECK(mf::dispersion_lambda(0.0, 1.0, 0.3) == 0.0);
    CHECK(mf::dispersion_lambda(kPi / 2.0, 0.0, 0.8) == doctest::Approx(0.8).epsilon(1e-14));
    for (double phi : {0.0, 0.7, 2.1, kPi})
        CHECK(mf::dispersion_lambda(phi, 2.0, 0.0) ==
              doctest::Approx(2.0 - std::cos(phi)).epsilon(1e-14));
}

TEST_CASE("magnetization limits") {
    for (double beta : {1.0, 40.0, 5000.0})
        CHECK(std::abs(mf::magnetization(0.0, 0.0, beta)) < 1e-12);
    CHECK(std::abs(mf::magnetization(0.5, 0.0, 5000.0) - 1.0 / 3.0) < 1e-6);
    CHECK(std::abs(mf::magnetization(2.0, 0.0, 5000.0) - 1.0) < 1e-8);
}

TEST_CASE("magnetization is monotone in h and bounded") {
    for (double gamma : {0.0, 0.8})
        for (double beta : {5.0, 40.0}) {
            double previous = -1.0;
            for (double h = 0.0; h <= 2.0 + 1e-12; h += 0.05) {
                const double m = mf::magnetization(h, gamma, beta);
                CHECK(m >= previous - 1e-9);
                CHECK(m >= 0.0 - 1e-9);
                CHECK(m <= 1.0 + 1e-9);
                previous = m;
            }
        }
}

TEST_CASE("quadrature error bound covers the tolerance-halving shift") {
    mf::QuadratureConfig coarse;
    coarse.abs_tolerance = 1e-8;
    mf::QuadratureConfig fine;
    fine.abs_tolerance = 5e-9;
    for (double h : {0.3, 0.97, 1.6}) {
        double bound = 0.0;
        const double a = mf::magnetization(h, 0.0, 40.0, coarse, &bound);
        const double b = mf::magnetization(h, 0.0, 40.0, fine);
        CHECK(std::abs(a - b) <= std::max(bound, 1e-15));
    }
}

TEST_CASE("quadrature failure carries the best estimate") {
    mf::QuadratureConfig starved;
    starved.abs_tolerance = 1e-12;
    starved.max_subdivisions = 2;
    try {
        mf::magnetization(0.9, 0.0, 5000.0, starved);
        FAIL("expected accuracy_error");
    } catch (const accuracy_error& e) {
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.error_bound > 1e-12);
    }
}

TEST_CASE("magnetization rejects bad arguments") {
    CHECK_THROWS_AS(mf::magnetization(-0.1, 0.0, 1.0), domain_error);
    CHECK_THROWS_AS(mf::magnetization(0.5, -0.2, 1.0), domain_error);
    CHECK_THROWS_AS(mf::magnetization(0.5, 0.0, 0.0), domain_error);
}

TEST_CASE("mean-field transition probability") {
    const TlsParams tls{0.2, 0.1};
    const BathCoupling g{0.05};

    const mf::MeanFieldResult free_point = mf::transition_probability_mf(tls, g, 0.0, 0.0, 40.0);
    CHECK(std::abs(free_point.p_tr - 0.5) < 1e-12);

    const mf::MeanFieldResult polarized =
        mf::transition_probability_mf(tls, g, 2.0, 0.0, 5000.0);
    CHECK(std::abs(polarized.delta_eff - 0.15) < 1e-8);
    CHECK(std::abs(polarized.p_tr - 0.64) < 1e-7);

    // Gamma = 0 decouples for any (h, gamma, beta)
    for (double h : {0.0, 0.8, 2.0})
        for (double gamma : {0.0, 1.0}) {
            const mf::MeanFieldResult r =
                mf::transition_probability_mf(tls, {0.0}, h, gamma, 7.0);
            CHECK(std::abs(r.p_tr - 0.5) < 1e-14);
        }

    // internal consistency p_tr = T^2/(T^2 + delta_eff^2/4)
    const mf::MeanFieldResult r = mf::transition_probability_mf(tls, g, 0.9, 0.8, 40.0);
    const double t2 = tls.tunneling * tls.tunneling;
    CHECK(std::abs(r.p_tr - t2 / (t2 + 0.25 * r.delta_eff * r.delta_eff)) < 1e-12);
    CHECK(std::abs(r.m_z) <= 1.0 + 1e-9);
}

TEST_CASE("field derivative of p_tr") {
    const TlsParams tls{0.2, 0.1};
    const BathCoupling g{0.05};

    CHECK(std::abs(mf::dptr_dh(tls, g, 3.0, 0.0, 40.0)) < 1e-4);
    CHECK_THROWS_AS(mf::dptr_dh(tls, g, 0.0, 0.0, 40.0), domain_error);

    // finite-difference step vs quadrature tolerance linkage
    mf::QuadratureConfig quad;
    quad.abs_tolerance = 1e-10;
    CHECK_THROWS_AS(mf::dptr_dh(tls, g, 0.5, 0.0, 40.0, 1e-5, quad), domain_error);

    // smooth and finite near h = 0 at finite beta
    const double near_zero = mf::dptr_dh(tls, g, 1e-4, 0.0, 40.0);
    CHECK(std::isfinite(near_zero));

    // the derivative peaks below the critical field at beta = 40
    double best_h = 0.0, best_d = -1.0;
    for (double h = 0.05; h <= 1.5 + 1e-9; h += 0.01) {
        const double d = mf::dptr_dh(tls, g, h, 0.0, 40.0);
        if (d > best_d) {
            best_d = d;
            best_h = h;
        }
    }
    CHECK(best_h > 0.8);
    CHECK(best_h < 1.0);
}

TEST_CASE("critical field estimates") {
    const TlsParams tls{0.2, 0.1};
    const BathCoupling g{0.05};

    const double cold = mf::critical_field_estimate(tls, g, 0.0, 5000.0, {1e-3, 1.5, 301});
    CHECK(std::abs(cold - 1.0) < 0.02);

    const double warm = mf::critical_field_estimate(tls, g, 0.0, 40.0, {1e-3, 1.5, 301});
    CHECK(warm > 0.8);
    CHECK(warm < 1.0);

    const double anisotropic =
        mf::critical_field_estimate(tls, g, 0.8, 40.0, {1e-3, 1.5, 301});
    CHECK(anisotropic > 0.5);
    CHECK(anisotropic < 1.2);

    CHECK_THROWS_AS(mf::critical_field_estimate(tls, g, 0.0, 40.0, {1e-3, 1.5, 50}),
                    domain_error);
    // Gamma = 0 leaves p_tr flat in h
    CHECK_THROWS_AS(mf::critical_field_estimate(tls, {0.0}, 0.0, 40.0, {1e-3, 1.5, 120}),
                    flat_profile_error);
}

TEST_CASE("finite-N curves converge toward the mean field as N grows") {
    // sup-norm over the h grid; the pointwise ordering cannot hold because
    // the finite-N staircases cross the smooth curve at different fields
    const TlsParams tls{0.2, 0.1};
    const BathCoupling g{0.05};
    std::map<int, double> sup_dev;
    for (double h = 0.0; h <= 1.5 + 1e-9; h += 0.05) {
        const double mf = mf::transition_probability_mf(tls, g, h, 0.0, 40.0).p_tr;
        for (int n : {8, 12, 16}) {
            const double exact =
                jw::transition_probability_exact({n, 1.0, 0.0, h}, tls, g, 40.0).p_tr;
            sup_dev[n] = std::max(sup_dev[n], std::abs(mf - exact));
        }
    }
    CHECK(sup_dev[16] < sup_dev[12]);
    CHECK(sup_dev[12] < sup_dev[8]);
    CHECK(sup_dev[16] < 0.02);
}

TEST_CASE("anisotropy stops mattering at high temperature") {
    const TlsParams tls{0.2, 0.1};
    const BathCoupling g{0.05};
    for (double h : {0.5, 2.0}) {
        const double cold = std::abs(mf::transition_probability_mf(tls, g, h, 0.0, 40.0).p_tr -
                                     mf::transition_probability_mf(tls, g, h, 1.0, 40.0).p_tr);
        const double hot = std::abs(mf::transition_probability_mf(tls, g, h, 0.0, 0.2).p_tr -
                                    mf::transition_probability_mf(tls, g, h, 1.0, 0.2).p_tr);
        CHECK(hot < 0.2 * cold);
    }
}

TEST_SUITE_END();
