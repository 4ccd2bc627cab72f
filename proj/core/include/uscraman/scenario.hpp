// scenario.hpp — config ingestion, scenario execution and CSV/report emission
#pragma once

#include "uscraman/dynamics.hpp"
#include "uscraman/lindblad.hpp"
#include "uscraman/rabi.hpp"

#include <optional>
#include <string>
#include <vector>

namespace uscraman::scenario {

enum class Kind {
    coefficient_sweep,
    p2_offresonant,
    p2_resonant,
    p2_strong_drive,
    flux_trajectory,
    flux_vs_eta,
    g2_vs_omega_p,
    steady_state_check,
};

Kind kind_from_name(const std::string& name);
std::string kind_name(Kind kind);

// "eta_c", "eta_c+<x>", "<x>*eta_c" or a plain number, resolved once eta_c is known.
struct EtaSpec {
    double value = 0.0;
    double eta_c_scale = 0.0;   // eta = value + eta_c_scale * eta_c

    static EtaSpec number(double v) { return {v, 0.0}; }
    static EtaSpec parse(const std::string& text);
    double resolve(double eta_c) const { return value + eta_c_scale * eta_c; }
    std::string describe() const;
};

struct Numerics {
    int n_max = 0;            // 0 -> scenario default (20 closed / 10 dissipative)
    int m_cutoff = 40;
    double dt_max = 0.0;      // 0 -> scheme default
    double t_final = 0.0;     // 0 -> scenario default
    double window = 0.0;      // 0 -> 20 drive periods
    double t_budget = 30000.0;
    double sample_dt = 0.0;   // 0 -> scenario default
    int threads = 0;          // 0 -> hardware concurrency
    dynamics::Scheme scheme = dynamics::Scheme::dressed_rk4;
};

struct ScanSpec {
    std::vector<double> lambdas;              // coefficient_sweep
    std::vector<double> deltas_over_Omega_p;  // p2_offresonant
    std::vector<EtaSpec> etas;                // p2_resonant / flux_trajectory
    std::vector<double> Omega_ps;             // p2_strong_drive / g2_vs_omega_p / steady_state_check
    int eta_points = 15;                      // flux_vs_eta grid size over [0, 2 eta_c]
    int numeric_stride = 7;                   // flux_vs_eta: full-model run every k-th point (0 = none)
    std::vector<double> numeric_Omega_ps;     // g2_vs_omega_p: points that also run the full model
};

struct Config {
    Kind kind = Kind::coefficient_sweep;
    rabi::SystemParams params;
    std::optional<EtaSpec> eta;       // Omega_s = eta * Omega_p once eta_c is known
    std::optional<double> omega_p;    // absent -> resonance omega_p = E0 - omega_b where applicable
    lindblad::DampingRates rates{2e-3, 2e-3, 2e-3};
    Numerics numerics;
    ScanSpec scan;
    std::string output_dir = "out";
};

// Strict parser: unknown keys and domain violations raise ConfigError with the
// offending key in the message.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Config load_config(const std::string& path);
Config parse_config_text(const std::string& text);

// Built-in parameter sets, one per reproduced figure (fig2..fig8, plus
// fig6a/fig6b/fig6c panel variants). Returns pretty-printed JSON.
std::string preset(const std::string& figure_id);
std::vector<std::string> preset_ids();

struct RunReport {
    std::string scenario;
    std::vector<std::string> outputs;     // CSV paths written
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;
    // resolved scalars: E0, eta_c, omega_p, omega_s, Omega_s, validity monitors...
    std::vector<std::pair<std::string, double>> resolved;

    std::string to_json() const;
};

RunReport run_scenario(const Config& config);

} // namespace uscraman::scenario
