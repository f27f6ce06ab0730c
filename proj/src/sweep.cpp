#include "spinbath/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "spinbath/jw_engine.hpp"

namespace spinbath::sweep {

using json = nlohmann::json;

std::string to_string(EngineSelect engine) {
    switch (engine) {
        case EngineSelect::automatic: return "auto";
        case EngineSelect::jw_exact: return "jw_exact";
        case EngineSelect::ed: return "ed";
        case EngineSelect::meanfield: return "meanfield";
    }
    return "unknown";
}

std::string to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

namespace {

EngineSelect parse_engine(const std::string& text, const std::string& key) {
    if (text == "auto") return EngineSelect::automatic;
    if (text == "jw_exact") return EngineSelect::jw_exact;
    if (text == "ed") return EngineSelect::ed;
    if (text == "meanfield") return EngineSelect::meanfield;
    throw config_error("engine must be one of auto|jw_exact|ed|meanfield, got '" +
                           text + "'",
                       key);
}

ed::Blocking parse_blocking(const std::string& text, const std::string& key) {
    if (text == "auto") return ed::Blocking::automatic;
    if (text == "none") return ed::Blocking::none;
    if (text == "magnetization") return ed::Blocking::magnetization;
    if (text == "parity") return ed::Blocking::parity;
    throw config_error("blocking must be auto|none|magnetization|parity, got '" +
                           text + "'",
                       key);
}

// Engine actually used for one grid point under the auto rule.
EngineSelect resolve_engine(const SweepConfig& cfg, int n_sites, double gamma) {
    if (cfg.engine != EngineSelect::automatic) return cfg.engine;
    if (n_sites == kInfiniteSites) return EngineSelect::meanfield;
    return gamma == 0.0 ? EngineSelect::jw_exact : EngineSelect::ed;
}

bool uniform_spacing(const std::vector<double>& values, double* step_out = nullptr) {
    if (values.size() < 2) return false;
    const double step = values[1] - values[0];
    if (!(step > 0.0)) return false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (std::abs(values[i] - values[i - 1] - step) > 1e-9 * std::max(1.0, step))
            return false;
    }
    if (step_out) *step_out = step;
    return true;
}

}  // namespace

SweepConfig validate_config(const ConfigMap& raw) {
    SweepConfig cfg;

    cfg.engine = parse_engine(raw.get_string("engine", "auto"), "engine");
    cfg.cross_check = raw.get_bool("cross_check", false);
    cfg.workers = raw.get_int("workers", 1);
    if (cfg.workers < 1) throw config_error("workers must be >= 1", "workers");

    cfg.tls.gap = raw.get_double("system.delta", cfg.tls.gap);
    cfg.tls.tunneling = raw.get_double("system.tunneling", cfg.tls.tunneling);
    if (!(cfg.tls.tunneling > 0.0))
        throw config_error("tunneling must be > 0", "system.tunneling");

    cfg.coupling.strength = raw.get_double("bath.coupling", cfg.coupling.strength);
    if (cfg.coupling.strength < 0.0)
        throw config_error("coupling must be >= 0", "bath.coupling");
    cfg.j_coupling = raw.get_double("bath.j", cfg.j_coupling);

    cfg.h_values = raw.get_double_list("sweep.h", cfg.h_values);
    for (double h : cfg.h_values)
        if (h < 0.0) throw config_error("h values must be non-negative", "sweep.h");

    cfg.beta_values = raw.get_double_list("sweep.beta", cfg.beta_values);
    if (raw.contains("sweep.inv_beta")) {
        if (raw.contains("sweep.beta"))
            throw config_error("give either beta or inv_beta, not both", "sweep.inv_beta");
        const std::vector<double> inv = raw.get_double_list("sweep.inv_beta", {});
        cfg.beta_values.clear();
        for (double x : inv) {
            if (!(x > 0.0))
                throw config_error("inv_beta values must be > 0", "sweep.inv_beta");
            cfg.beta_values.push_back(1.0 / x);
        }
    }
    for (double beta : cfg.beta_values)
        if (!(beta > 0.0)) throw config_error("beta values must be > 0", "sweep.beta");

    cfg.gamma_values = raw.get_double_list("sweep.gamma", cfg.gamma_values);
    for (double g : cfg.gamma_values)
        if (g < 0.0 || g > 1.0)
            throw config_error("gamma values must lie in [0, 1]", "sweep.gamma");

    if (raw.contains("sweep.n_sites")) {
        cfg.n_sites_values.clear();
        for (const std::string& token : raw.get_token_list("sweep.n_sites")) {
            if (token == "inf") {
                cfg.n_sites_values.push_back(kInfiniteSites);
                continue;
            }
            char* end = nullptr;
            const long n = std::strtol(token.c_str(), &end, 10);
            if (end != token.c_str() + token.size() || n < 2)
                throw config_error("n_sites entries must be integers >= 2 or 'inf', got '" +
                                       token + "'",
                                   "sweep.n_sites");
            cfg.n_sites_values.push_back(int(n));
        }
    }
    if (cfg.n_sites_values.empty())
        throw config_error("n_sites list must not be empty", "sweep.n_sites");
    cfg.derivative = raw.get_bool("sweep.derivative", false);

    cfg.time_search.horizon_multiplier =
        raw.get_double("time_search.horizon_multiplier", cfg.time_search.horizon_multiplier);
    cfg.time_search.coarse_points =
        raw.get_int("time_search.coarse_points", cfg.time_search.coarse_points);
    cfg.time_search.refine_tolerance =
        raw.get_double("time_search.refine_tolerance", cfg.time_search.refine_tolerance);
    try {
        cfg.time_search.validate();
    } catch (const domain_error& e) {
        throw config_error(e.what(), "time_search");
    }

    cfg.quadrature.abs_tolerance =
        raw.get_double("quadrature.abs_tolerance", cfg.quadrature.abs_tolerance);
    cfg.quadrature.max_subdivisions =
        raw.get_int("quadrature.max_subdivisions", cfg.quadrature.max_subdivisions);
    try {
        cfg.quadrature.validate();
    } catch (const domain_error& e) {
        throw config_error(e.what(), "quadrature");
    }

    cfg.ed_options.site_cap = raw.get_int("ed.site_cap", cfg.ed_options.site_cap);
    if (cfg.ed_options.site_cap < 2)
        throw config_error("site_cap must be >= 2", "ed.site_cap");
    cfg.ed_options.blocking =
        parse_blocking(raw.get_string("ed.blocking", "auto"), "ed.blocking");
    cfg.ed_options.weight_cutoff =
        raw.get_double("ed.weight_cutoff", cfg.ed_options.weight_cutoff);
    if (cfg.ed_options.weight_cutoff < 0.0 || cfg.ed_options.weight_cutoff > 1e-3)
        throw config_error("weight_cutoff must lie in [0, 1e-3]", "ed.weight_cutoff");

    cfg.output_path = raw.get_string("output.path", cfg.output_path);
    const std::string format = raw.get_string("output.format", "csv");
    if (format == "csv") cfg.format = OutputFormat::csv;
    else if (format == "json") cfg.format = OutputFormat::json;
    else throw config_error("format must be csv or json, got '" + format + "'",
                            "output.format");

    // Engine/grid compatibility is rejected here, never mid-run.
    const bool any_gamma_nonzero =
        std::any_of(cfg.gamma_values.begin(), cfg.gamma_values.end(),
                    [](double g) { return g != 0.0; });
    const bool any_infinite =
        std::any_of(cfg.n_sites_values.begin(), cfg.n_sites_values.end(),
                    [](int n) { return n == kInfiniteSites; });
    const int max_finite = [&] {
        int m = 0;
        for (int n : cfg.n_sites_values)
            if (n != kInfiniteSites) m = std::max(m, n);
        return m;
    }();

    switch (cfg.engine) {
        case EngineSelect::jw_exact:
            if (any_gamma_nonzero)
                throw config_error("jw_exact requires gamma = 0", "sweep.gamma");
            if (any_infinite)
                throw config_error("jw_exact requires finite n_sites (use engine = "
                                   "meanfield for the thermodynamic limit)",
                                   "sweep.n_sites");
            break;
        case EngineSelect::ed:
            if (any_infinite)
                throw config_error("ed requires finite n_sites", "sweep.n_sites");
            if (max_finite > cfg.ed_options.site_cap)
                throw config_error("n_sites = " + std::to_string(max_finite) +
                                       " exceeds the ed memory cap of " +
                                       std::to_string(cfg.ed_options.site_cap) +
                                       " bath spins (ed.site_cap)",
                                   "sweep.n_sites");
            break;
        case EngineSelect::meanfield:
            if (max_finite != 0)
                throw config_error("meanfield requires n_sites = inf", "sweep.n_sites");
            break;
        case EngineSelect::automatic:
            if (any_gamma_nonzero && max_finite > cfg.ed_options.site_cap)
                throw config_error("n_sites = " + std::to_string(max_finite) +
                                       " with gamma > 0 routes to ed and exceeds its "
                                       "memory cap of " +
                                       std::to_string(cfg.ed_options.site_cap) +
                                       " bath spins (ed.site_cap)",
                                   "sweep.n_sites");
            break;
    }

    if (cfg.derivative) {
        double step = 0.0;
        if (!uniform_spacing(cfg.h_values, &step))
            throw config_error("derivative postprocessing needs a uniformly spaced, "
                               "ascending h grid with >= 2 points",
                               "sweep.h");
        if (any_infinite && !(step * step > 10.0 * cfg.quadrature.abs_tolerance))
            throw config_error("h grid step^2 must exceed 10 * quadrature.abs_tolerance "
                               "for a meaningful mean-field derivative",
                               "sweep.derivative");
    }

    if (const auto unknown = raw.first_unconsumed())
        throw config_error("unknown key", *unknown);
    return cfg;
}

std::string preset_text(const std::string& name) {
    const std::string common =
        "engine = auto\n"
        "[system]\n"
        "delta = 0.2\n"
        "tunneling = 0.1\n"
        "[bath]\n"
        "coupling = 0.05\n";
    if (name == "fig1") {
        return common +
               "[sweep]\n"
               "gamma = 0\n"
               "n_sites = 8, 12, 16, inf\n"
               "h = 0:0.01:1.5\n"
               "beta = 40\n"
               "derivative = true\n"
               "[output]\n"
               "path = fig1.csv\n";
    }
    if (name == "fig2") {
        return common +
               "[sweep]\n"
               "gamma = 0.8\n"
               "n_sites = 6, 10, inf\n"
               "h = 0:0.05:1.5\n"
               "beta = 40\n"
               "[output]\n"
               "path = fig2.csv\n";
    }
    if (name == "fig3") {
        return common +
               "[sweep]\n"
               "gamma = 0, 1\n"
               "n_sites = inf\n"
               "h = 0.5, 2\n"
               "inv_beta = 0.025:0.025:1.0\n"
               "[output]\n"
               "path = fig3.csv\n";
    }
    throw config_error("unknown preset '" + name + "' (expected fig1, fig2 or fig3)",
                       "preset");
}

namespace {

ResultRecord evaluate_point(const SweepConfig& cfg, int n_sites, double gamma,
                            double beta, double h) {
    ResultRecord rec;
    rec.n_sites = n_sites;
    rec.gamma = gamma;
    rec.h = h;
    rec.beta = beta;
    rec.delta = cfg.tls.gap;
    rec.tunneling = cfg.tls.tunneling;
    rec.coupling = cfg.coupling.strength;

    const EngineSelect engine = resolve_engine(cfg, n_sites, gamma);
    rec.engine = to_string(engine);

    const auto start = std::chrono::steady_clock::now();
    try {
        switch (engine) {
            case EngineSelect::meanfield: {
                const mf::MeanFieldResult r = mf::transition_probability_mf(
                    cfg.tls, cfg.coupling, h, gamma, beta, cfg.quadrature);
                rec.p_tr = r.p_tr;
                rec.m_z = r.m_z;
                break;
            }
            case EngineSelect::jw_exact: {
                const SpinChainParams chain{n_sites, cfg.j_coupling, gamma, h};
                const TransitionResult r = jw::transition_probability_exact(
                    chain, cfg.tls, cfg.coupling, beta, cfg.time_search);
                rec.p_tr = r.p_tr;
                rec.t_star = r.t_star;
                rec.diagnostics = r.diagnostics;
                break;
            }
            case EngineSelect::ed: {
                const SpinChainParams chain{n_sites, cfg.j_coupling, gamma, h};
                const TransitionResult r = ed::transition_probability_ed(
                    chain, cfg.tls, cfg.coupling, beta, cfg.time_search,
                    cfg.ed_options);
                rec.p_tr = r.p_tr;
                rec.t_star = r.t_star;
                rec.diagnostics = r.diagnostics;
                break;
            }
            case EngineSelect::automatic:
                throw numeric_error("internal: engine resolution failed");
        }
        if (cfg.cross_check && engine == EngineSelect::jw_exact && gamma == 0.0 &&
            n_sites != kInfiniteSites && n_sites <= 8) {
            const SpinChainParams chain{n_sites, cfg.j_coupling, gamma, h};
            const TransitionResult r = ed::transition_probability_ed(
                chain, cfg.tls, cfg.coupling, beta, cfg.time_search, cfg.ed_options);
            rec.diagnostics["cross_check_p_tr_ed"] = r.p_tr;
            rec.diagnostics["cross_check_abs_diff"] = std::abs(r.p_tr - *rec.p_tr);
        }
    } catch (const std::exception& e) {
        rec.status = "error";
        rec.error_message = e.what();
        rec.p_tr.reset();
        rec.t_star.reset();
        rec.m_z.reset();
    }
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

std::vector<ResultRecord> run_sweep(const SweepConfig& cfg) {
    struct Point {
        int n_sites;
        double gamma;
        double beta;
        double h;
    };
    std::vector<Point> points;
    points.reserve(cfg.n_sites_values.size() * cfg.gamma_values.size() *
                   cfg.beta_values.size() * cfg.h_values.size());
    for (int n : cfg.n_sites_values)
        for (double gamma : cfg.gamma_values)
            for (double beta : cfg.beta_values)
                for (double h : cfg.h_values) points.push_back({n, gamma, beta, h});

    std::vector<ResultRecord> records(points.size());
    const int workers = std::max(1, std::min<int>(cfg.workers, int(points.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Point& p = points[i];
            records[i] = evaluate_point(cfg, p.n_sites, p.gamma, p.beta, p.h);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= points.size()) return;
                    const Point& p = points[i];
                    records[i] = evaluate_point(cfg, p.n_sites, p.gamma, p.beta, p.h);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    if (cfg.derivative) {
        // h is the fastest grid axis, so each (n, gamma, beta) group is a
        // contiguous slice of h_values.size() records.
        const std::size_t stride = cfg.h_values.size();
        for (std::size_t begin = 0; begin + stride <= records.size(); begin += stride) {
            std::vector<ResultRecord> group(records.begin() + std::ptrdiff_t(begin),
                                            records.begin() + std::ptrdiff_t(begin + stride));
            if (!all_ok(group)) continue;  // error rows leave the group underived
            group = derivative_postprocess(std::move(group), "h");
            std::copy(group.begin(), group.end(),
                      records.begin() + std::ptrdiff_t(begin));
        }
    }
    return records;
}

bool all_ok(const std::vector<ResultRecord>& records) {
    return std::all_of(records.begin(), records.end(),
                       [](const ResultRecord& r) { return r.status == "ok"; });
}

std::vector<ResultRecord> derivative_postprocess(std::vector<ResultRecord> records,
                                                 const std::string& key) {
    if (key != "h")
        throw domain_error("derivative_postprocess: only key = \"h\" is supported");
    if (records.size() < 2)
        throw domain_error("derivative_postprocess: need at least two records");

    std::vector<double> h(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ResultRecord& r = records[i];
        if (r.status != "ok" || !r.p_tr)
            throw domain_error("derivative_postprocess: group contains error rows");
        const ResultRecord& first = records.front();
        if (r.n_sites != first.n_sites || r.gamma != first.gamma ||
            r.beta != first.beta || r.delta != first.delta ||
            r.tunneling != first.tunneling || r.coupling != first.coupling)
            throw domain_error("derivative_postprocess: records must share all "
                               "parameters except h");
        h[i] = r.h;
    }
    if (!uniform_spacing(h))
        throw domain_error("derivative_postprocess: h grid must be uniformly spaced "
                           "and ascending");
    const double step = h[1] - h[0];

    const std::size_t last = records.size() - 1;
    records[0].dptr_dh = (*records[1].p_tr - *records[0].p_tr) / step;
    for (std::size_t i = 1; i < last; ++i)
        records[i].dptr_dh = (*records[i + 1].p_tr - *records[i - 1].p_tr) / (2.0 * step);
    records[last].dptr_dh = (*records[last].p_tr - *records[last - 1].p_tr) / step;
    return records;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_sites(int n) {
    return n == kInfiniteSites ? "inf" : std::to_string(n);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace

std::string canonical_config_text(const SweepConfig& cfg) {
    std::ostringstream os;
    os << "engine=" << to_string(cfg.engine) << ";delta=" << format_double(cfg.tls.gap)
       << ";tunneling=" << format_double(cfg.tls.tunneling)
       << ";coupling=" << format_double(cfg.coupling.strength)
       << ";j=" << format_double(cfg.j_coupling) << ";h=";
    for (double v : cfg.h_values) os << format_double(v) << ',';
    os << ";beta=";
    for (double v : cfg.beta_values) os << format_double(v) << ',';
    os << ";gamma=";
    for (double v : cfg.gamma_values) os << format_double(v) << ',';
    os << ";n_sites=";
    for (int v : cfg.n_sites_values) os << format_sites(v) << ',';
    os << ";horizon=" << format_double(cfg.time_search.horizon_multiplier)
       << ";coarse=" << cfg.time_search.coarse_points
       << ";refine=" << format_double(cfg.time_search.refine_tolerance)
       << ";qtol=" << format_double(cfg.quadrature.abs_tolerance)
       << ";qmax=" << cfg.quadrature.max_subdivisions
       << ";site_cap=" << cfg.ed_options.site_cap
       << ";blocking=" << int(cfg.ed_options.blocking)
       << ";cutoff=" << format_double(cfg.ed_options.weight_cutoff)
       << ";cross_check=" << cfg.cross_check << ";derivative=" << cfg.derivative;
    return os.str();
}

std::uint64_t config_hash(const SweepConfig& cfg) {
    return fnv1a(canonical_config_text(cfg));
}

void emit_csv(std::ostream& out, const std::vector<ResultRecord>& records,
              std::uint64_t hash) {
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(hash));
    out << "# simulate v" << kToolVersion << "\n# config_hash=" << hash_hex << '\n';
    out << "engine,n_sites,gamma,h,beta,delta,tunneling,coupling,p_tr,t_star,m_z,"
           "dptr_dh,status,wall_time_s\n";
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const ResultRecord& r : records) {
        out << r.engine << ',' << format_sites(r.n_sites) << ',' << format_double(r.gamma)
            << ',' << format_double(r.h) << ',' << format_double(r.beta) << ','
            << format_double(r.delta) << ',' << format_double(r.tunneling) << ','
            << format_double(r.coupling) << ',' << opt(r.p_tr) << ',' << opt(r.t_star)
            << ',' << opt(r.m_z) << ',' << opt(r.dptr_dh) << ',' << r.status << ','
            << format_double(r.wall_time_s) << '\n';
    }
}

namespace {

json record_to_json(const ResultRecord& r) {
    json j;
    j["engine"] = r.engine;
    if (r.n_sites == kInfiniteSites) j["n_sites"] = "inf";
    else j["n_sites"] = r.n_sites;
    j["gamma"] = r.gamma;
    j["h"] = r.h;
    j["beta"] = r.beta;
    j["delta"] = r.delta;
    j["tunneling"] = r.tunneling;
    j["coupling"] = r.coupling;
    if (r.p_tr) j["p_tr"] = *r.p_tr;
    if (r.t_star) j["t_star"] = *r.t_star;
    if (r.m_z) j["m_z"] = *r.m_z;
    if (r.dptr_dh) j["dptr_dh"] = *r.dptr_dh;
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    j["status"] = r.status;
    if (!r.error_message.empty()) j["error"] = r.error_message;
    j["wall_time_s"] = r.wall_time_s;
    return j;
}

ResultRecord record_from_json(const json& j) {
    ResultRecord r;
    r.engine = j.at("engine").get<std::string>();
    if (j.at("n_sites").is_string()) r.n_sites = kInfiniteSites;
    else r.n_sites = j.at("n_sites").get<int>();
    r.gamma = j.at("gamma").get<double>();
    r.h = j.at("h").get<double>();
    r.beta = j.at("beta").get<double>();
    r.delta = j.at("delta").get<double>();
    r.tunneling = j.at("tunneling").get<double>();
    r.coupling = j.at("coupling").get<double>();
    if (j.contains("p_tr")) r.p_tr = j.at("p_tr").get<double>();
    if (j.contains("t_star")) r.t_star = j.at("t_star").get<double>();
    if (j.contains("m_z")) r.m_z = j.at("m_z").get<double>();
    if (j.contains("dptr_dh")) r.dptr_dh = j.at("dptr_dh").get<double>();
    if (j.contains("diagnostics"))
        r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    r.status = j.at("status").get<std::string>();
    if (j.contains("error")) r.error_message = j.at("error").get<std::string>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
}

}  // namespace

void emit_json(std::ostream& out, const std::vector<ResultRecord>& records) {
    json array = json::array();
    for (const ResultRecord& r : records) array.push_back(record_to_json(r));
    out << array.dump(2) << '\n';
}

std::vector<ResultRecord> parse_records_json(std::istream& in) {
    json array = json::parse(in);
    std::vector<ResultRecord> records;
    records.reserve(array.size());
    for (const json& j : array) records.push_back(record_from_json(j));
    return records;
}

void emit_table(const std::string& path, const std::vector<ResultRecord>& records,
                OutputFormat format, std::uint64_t hash) {
    if (records.empty()) throw domain_error("emit_table: no records to write");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_table: cannot open '" + path + "'");
    if (format == OutputFormat::csv) emit_csv(out, records, hash);
    else emit_json(out, records);
    out.flush();
    if (!out) throw std::runtime_error("emit_table: write failed for '" + path + "'");
}

bool records_equal(const ResultRecord& a, const ResultRecord& b, bool ignore_timing) {
    const auto same_opt = [](const std::optional<double>& x,
                             const std::optional<double>& y) {
        return x.has_value() == y.has_value() && (!x || *x == *y);
    };
    return a.engine == b.engine && a.n_sites == b.n_sites && a.gamma == b.gamma &&
           a.h == b.h && a.beta == b.beta && a.delta == b.delta &&
           a.tunneling == b.tunneling && a.coupling == b.coupling &&
           same_opt(a.p_tr, b.p_tr) && same_opt(a.t_star, b.t_star) &&
           same_opt(a.m_z, b.m_z) && same_opt(a.dptr_dh, b.dptr_dh) &&
           a.diagnostics == b.diagnostics && a.status == b.status &&
           a.error_message == b.error_message &&
           (ignore_timing || a.wall_time_s == b.wall_time_s);
}

std::string csv_data_section(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '#') continue;
        const std::size_t last_comma = line.rfind(',');
        out << (last_comma == std::string::npos ? line : line.substr(0, last_comma))
            << '\n';
    }
    return out.str();
}

}  // namespace spinbath::sweep
