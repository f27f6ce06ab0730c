// sweep.hpp — Parameter sweeps across engines, presets, and tabular output
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spinbath/config.hpp"
#include "spinbath/ed_engine.hpp"
#include "spinbath/mean_field.hpp"
#include "spinbath/time_search.hpp"
#include "spinbath/types.hpp"

namespace spinbath::sweep {

inline constexpr const char* kToolVersion = "0.1.0";

// Sentinel n_sites value routing a grid point to the mean-field engine. No
// extrapolation of finite-N data is ever performed.
inline constexpr int kInfiniteSites = -1;

enum class EngineSelect { automatic, jw_exact, ed, meanfield };
enum class OutputFormat { csv, json };

std::string to_string(EngineSelect engine);
std::string to_string(OutputFormat format);

struct SweepConfig {
    EngineSelect engine{EngineSelect::automatic};
    TlsParams tls{0.2, 0.1};
    BathCoupling coupling{0.05};
    double j_coupling{1.0};

    // Cartesian grid, evaluated with h fastest, then beta, gamma, n_sites.
    std::vector<double> h_values{0.0};
    std::vector<double> beta_values{40.0};
    std::vector<double> gamma_values{0.0};
    std::vector<int> n_sites_values{kInfiniteSites};

    TimeSearchConfig time_search{};
    mf::QuadratureConfig quadrature{};
    ed::EdOptions ed_options{};

    int workers{1};
    bool cross_check{false};
    bool derivative{false};

    std::string output_path{"results.csv"};
    OutputFormat format{OutputFormat::csv};
};

// Fully validated config with defaults filled; every failure names the
// offending key and constraint. Unknown keys are rejected.
SweepConfig validate_config(const ConfigMap& raw);

// Configuration text for the bundled figure presets fig1 / fig2 / fig3
// (Delta = 2T = 0.2, Gamma = 0.05, beta = 40 where applicable).
std::string preset_text(const std::string& name);

// Self-describing result row: every record carries the full parameter tuple.
struct ResultRecord {
    std::string engine;
    int n_sites{kInfiniteSites};
    double gamma{0.0};
    double h{0.0};
    double beta{0.0};
    double delta{0.0};
    double tunneling{0.0};
    double coupling{0.0};
    std::optional<double> p_tr;
    std::optional<double> t_star;   // absent for meanfield
    std::optional<double> m_z;      // meanfield only
    std::optional<double> dptr_dh;  // filled by derivative postprocessing
    std::map<std::string, double> diagnostics;
    std::string status{"ok"};
    std::string error_message;  // serialized to JSON only
    double wall_time_s{0.0};
};

// Cartesian product of the grids in deterministic lexicographic order.
// Individual failures become status = "error" rows and the sweep continues.
std::vector<ResultRecord> run_sweep(const SweepConfig& cfg);

// True when every record in `records` has status "ok".
bool all_ok(const std::vector<ResultRecord>& records);

// Augment a homogeneous record group (same parameters except a uniformly
// spaced h grid) with finite-difference dptr_dh: central differences in the
// interior, one-sided at the ends. Only key == "h" is supported.
std::vector<ResultRecord> derivative_postprocess(std::vector<ResultRecord> records,
                                                 const std::string& key = "h");

// FNV-1a hash of the canonical config serialization; stamped into output
// headers so files are traceable to their configuration.
std::uint64_t config_hash(const SweepConfig& cfg);
std::string canonical_config_text(const SweepConfig& cfg);

// Fixed column order: engine,n_sites,gamma,h,beta,delta,tunneling,coupling,
// p_tr,t_star,m_z,dptr_dh,status,wall_time_s. Floats use 17 significant
// digits; absent fields stay empty; n_sites prints as "inf" for the
// thermodynamic limit.
void emit_csv(std::ostream& out, const std::vector<ResultRecord>& records,
              std::uint64_t hash);
void emit_json(std::ostream& out, const std::vector<ResultRecord>& records);
void emit_table(const std::string& path, const std::vector<ResultRecord>& records,
                OutputFormat format, std::uint64_t hash);

std::vector<ResultRecord> parse_records_json(std::istream& in);

// Field-wise equality. Timing is the one intentionally nondeterministic
// field, so determinism checks compare with ignore_timing = true.
bool records_equal(const ResultRecord& a, const ResultRecord& b, bool ignore_timing);

// Data section of a CSV payload for byte-level determinism comparisons:
// strips header comments and the trailing wall_time_s column of each row.
std::string csv_data_section(const std::string& csv_text);

}  // namespace spinbath::sweep
