// module.cpp — python bindings for the main operations
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinbath/ed_engine.hpp"
#include "spinbath/jw_engine.hpp"
#include "spinbath/mean_field.hpp"
#include "spinbath/operators.hpp"
#include "spinbath/sweep.hpp"

namespace py = pybind11;
using namespace spinbath;

namespace {

PauliAxis axis_from(const std::string& axis) {
    if (axis == "x") return PauliAxis::x;
    if (axis == "y") return PauliAxis::y;
    if (axis == "z") return PauliAxis::z;
    throw domain_error("axis must be 'x', 'y' or 'z'");
}

py::dict result_dict(const TransitionResult& r) {
    py::dict out;
    out["p_tr"] = r.p_tr;
    out["t_star"] = r.t_star;
    out["engine"] = to_string(r.engine);
    out["diagnostics"] = r.diagnostics;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Transition probability of a TLS coupled to an XY spin-chain bath";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<accuracy_error>(m, "AccuracyError", PyExc_ArithmeticError);

    m.def(
        "pauli_on_site",
        [](int n_sites, int site, const std::string& axis) {
            return pauli_on_site(n_sites, site, axis_from(axis)).matrix();
        },
        py::arg("n_sites"), py::arg("site"), py::arg("axis"));

    m.def(
        "h_xy",
        [](int n_sites, double coupling, double anisotropy, double field) {
            return build_h_xy({n_sites, coupling, anisotropy, field}).matrix();
        },
        py::arg("n_sites"), py::arg("coupling") = 1.0, py::arg("anisotropy") = 0.0,
        py::arg("field") = 0.0);

    m.def(
        "m_z", [](int n_sites) { return build_m_z(n_sites).matrix(); },
        py::arg("n_sites"));

    m.def(
        "h_s", [](double gap, double tunneling) { return build_h_s({gap, tunneling}).matrix(); },
        py::arg("gap"), py::arg("tunneling"));

    m.def(
        "h_total",
        [](double gap, double tunneling, int n_sites, double coupling, double anisotropy,
           double field, double strength) {
            return build_h_total({gap, tunneling}, {n_sites, coupling, anisotropy, field},
                                 {strength})
                .matrix();
        },
        py::arg("gap"), py::arg("tunneling"), py::arg("n_sites"), py::arg("coupling") = 1.0,
        py::arg("anisotropy") = 0.0, py::arg("field") = 0.0, py::arg("strength") = 0.0);

    m.def(
        "commutator_norm",
        [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
            return commutator_norm(HermitianOperator(a), HermitianOperator(b));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "eigh",
        [](const Eigen::MatrixXcd& h) {
            const auto es = ed::eigh(HermitianOperator(h));
            return py::make_tuple(es.eigenvalues, es.eigenvectors);
        },
        py::arg("h"));

    m.def(
        "thermal_state",
        [](const Eigen::MatrixXcd& h, double beta) {
            return ed::thermal_state(HermitianOperator(h), beta).matrix();
        },
        py::arg("h"), py::arg("beta"));

    m.def(
        "partial_trace_bath",
        [](const Eigen::MatrixXcd& rho) {
            return ed::partial_trace_bath(DensityMatrix(HermitianOperator(rho))).matrix();
        },
        py::arg("rho"));

    m.def(
        "evolve_reduced",
        [](const Eigen::MatrixXcd& htot, const Eigen::MatrixXcd& rho0,
           const std::vector<double>& times) {
            const auto states = ed::evolve_reduced(
                ed::eigh(HermitianOperator(htot)),
                DensityMatrix(HermitianOperator(rho0), 1e-8, 1e-8), times);
            std::vector<Eigen::MatrixXcd> out;
            out.reserve(states.size());
            for (const auto& s : states) out.push_back(s.matrix());
            return out;
        },
        py::arg("h_total"), py::arg("rho0"), py::arg("times"));

    m.def(
        "single_particle_energies",
        [](int n_sites, double coupling, double field) {
            const auto s = jw::single_particle_energies({n_sites, coupling, 0.0, field});
            py::dict out;
            out["even"] = s.even_sector_energies;
            out["odd"] = s.odd_sector_energies;
            return out;
        },
        py::arg("n_sites"), py::arg("coupling") = 1.0, py::arg("field") = 0.0);

    m.def(
        "ground_state_occupation",
        [](int n_sites, double coupling, double field) {
            const auto g = jw::ground_state_occupation({n_sites, coupling, 0.0, field});
            return py::make_tuple(g.n_magnons, g.degenerate);
        },
        py::arg("n_sites"), py::arg("coupling") = 1.0, py::arg("field") = 0.0);

    m.def(
        "occupation_weights",
        [](int n_sites, double field, double beta, double coupling) {
            const auto w = jw::occupation_weights(
                jw::single_particle_energies({n_sites, coupling, 0.0, field}), beta);
            return w.weights;
        },
        py::arg("n_sites"), py::arg("field"), py::arg("beta"), py::arg("coupling") = 1.0);

    m.def(
        "rabi_population",
        [](double delta_eff, double gap, double tunneling, double t) {
            return jw::rabi_population(delta_eff, {gap, tunneling}, t);
        },
        py::arg("delta_eff"), py::arg("gap"), py::arg("tunneling"), py::arg("t"));

    m.def(
        "transition_probability",
        [](const std::string& engine, double gap, double tunneling, double strength,
           double h, double gamma, double beta, int n_sites) {
            const TlsParams tls{gap, tunneling};
            const BathCoupling g{strength};
            if (engine == "jw_exact")
                return result_dict(jw::transition_probability_exact(
                    {n_sites, 1.0, gamma, h}, tls, g, beta));
            if (engine == "ed")
                return result_dict(ed::transition_probability_ed(
                    {n_sites, 1.0, gamma, h}, tls, g, beta));
            if (engine == "meanfield") {
                const auto r = mf::transition_probability_mf(tls, g, h, gamma, beta);
                py::dict out;
                out["p_tr"] = r.p_tr;
                out["m_z"] = r.m_z;
                out["delta_eff"] = r.delta_eff;
                out["engine"] = std::string("meanfield");
                return out;
            }
            throw domain_error("engine must be jw_exact, ed or meanfield");
        },
        py::arg("engine"), py::arg("gap"), py::arg("tunneling"), py::arg("strength"),
        py::arg("h"), py::arg("gamma") = 0.0, py::arg("beta") = 40.0,
        py::arg("n_sites") = 8);

    m.def(
        "magnetization",
        [](double h, double gamma, double beta) { return mf::magnetization(h, gamma, beta); },
        py::arg("h"), py::arg("gamma"), py::arg("beta"));

    m.def(
        "dptr_dh",
        [](double gap, double tunneling, double strength, double h, double gamma,
           double beta, double step) {
            return mf::dptr_dh({gap, tunneling}, {strength}, h, gamma, beta, step);
        },
        py::arg("gap"), py::arg("tunneling"), py::arg("strength"), py::arg("h"),
        py::arg("gamma"), py::arg("beta"), py::arg("step") = 1e-4);

    m.def(
        "critical_field_estimate",
        [](double gap, double tunneling, double strength, double gamma, double beta,
           double h_min, double h_max, int points) {
            return mf::critical_field_estimate({gap, tunneling}, {strength}, gamma, beta,
                                               {h_min, h_max, points});
        },
        py::arg("gap"), py::arg("tunneling"), py::arg("strength"), py::arg("gamma"),
        py::arg("beta"), py::arg("h_min") = 1e-3, py::arg("h_max") = 1.5,
        py::arg("points") = 151);

    m.def(
        "run_preset",
        [](const std::string& name, int workers) {
            auto raw = sweep::ConfigMap::parse(sweep::preset_text(name));
            auto cfg = sweep::validate_config(raw);
            cfg.workers = workers;
            const auto records = sweep::run_sweep(cfg);
            py::list out;
            for (const auto& r : records) {
                py::dict d;
                d["engine"] = r.engine;
                if (r.n_sites == sweep::kInfiniteSites) d["n_sites"] = py::none();
                else d["n_sites"] = r.n_sites;
                d["gamma"] = r.gamma;
                d["h"] = r.h;
                d["beta"] = r.beta;
                if (r.p_tr) d["p_tr"] = *r.p_tr;
                if (r.t_star) d["t_star"] = *r.t_star;
                if (r.m_z) d["m_z"] = *r.m_z;
                if (r.dptr_dh) d["dptr_dh"] = *r.dptr_dh;
                d["status"] = r.status;
                out.append(d);
            }
            return out;
        },
        py::arg("name"), py::arg("workers") = 1);

    m.attr("__version__") = sweep::kToolVersion;
}
