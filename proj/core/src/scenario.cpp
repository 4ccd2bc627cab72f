#include "uscraman/scenario.hpp"

#include "uscraman/csv.hpp"
#include "uscraman/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace uscraman::scenario {

using json = nlohmann::json;
using rabi::SystemParams;
using rabi::TruncatedSpace;

namespace {

const std::vector<std::pair<std::string, Kind>> kKindTable = {
    {"coefficient_sweep", Kind::coefficient_sweep},
    {"p2_offresonant", Kind::p2_offresonant},
    {"p2_resonant", Kind::p2_resonant},
    {"p2_strong_drive", Kind::p2_strong_drive},
    {"flux_trajectory", Kind::flux_trajectory},
    {"flux_vs_eta", Kind::flux_vs_eta},
    {"g2_vs_omega_p", Kind::g2_vs_omega_p},
    {"steady_state_check", Kind::steady_state_check},
};

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

Kind kind_from_name(const std::string& name) {
    for (const auto& [key, kind] : kKindTable) {
        if (key == name) return kind;
    }
    throw ConfigError("unknown scenario '" + name + "'");
}

std::string kind_name(Kind kind) {
    for (const auto& [key, k] : kKindTable) {
        if (k == kind) return key;
    }
    return "?";
}

EtaSpec EtaSpec::parse(const std::string& text) {
    if (text == "eta_c") return {0.0, 1.0};
    if (text.rfind("eta_c+", 0) == 0) {
        return {std::stod(text.substr(6)), 1.0};
    }
    const auto star = text.find("*eta_c");
    if (star != std::string::npos && star + 6 == text.size()) {
        return {0.0, std::stod(text.substr(0, star))};
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return {v, 0.0};
    } catch (const std::exception&) {
    }
    throw ConfigError("cannot parse eta specification '" + text + "'");
}

std::string EtaSpec::describe() const {
    if (eta_c_scale == 0.0) return format_number(value);
    std::string out;
    if (eta_c_scale != 1.0) out += format_number(eta_c_scale) + "*";
    out += "eta_c";
    if (value != 0.0) out += "+" + format_number(value);
    return out;
}

// ------------------------------------------------------------------ parsing

namespace {

void require_keys(const json& object, const std::string& where,
                  const std::vector<std::string>& allowed) {
    for (const auto& item : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
    return v.get<double>();
}

EtaSpec as_eta(const json& v, const std::string& key) {
    if (v.is_number()) return EtaSpec::number(v.get<double>());
    if (v.is_string()) return EtaSpec::parse(v.get<std::string>());
    throw ConfigError("key '" + key + "' must be a number or an eta expression");
}

std::vector<double> as_number_list(const json& v, const std::string& key) {
    if (!v.is_array()) throw ConfigError("key '" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& item : v) out.push_back(as_number(item, key));
    return out;
}

void parse_params(const json& object, Config& config) {
    require_keys(object, "params",
                 {"omega_c", "omega_b", "omega_e", "omega_g", "lambda", "omega_p", "omega_s",
                  "Omega_p", "Omega_s", "eta"});
    SystemParams& p = config.params;
    if (object.contains("omega_c")) p.omega_c = as_number(object["omega_c"], "omega_c");
    if (object.contains("omega_b")) p.omega_b = as_number(object["omega_b"], "omega_b");
    if (object.contains("omega_e")) p.omega_e = as_number(object["omega_e"], "omega_e");
    if (object.contains("omega_g")) p.omega_g = as_number(object["omega_g"], "omega_g");
    if (object.contains("lambda")) p.lambda = as_number(object["lambda"], "lambda");
    if (object.contains("omega_p")) config.omega_p = as_number(object["omega_p"], "omega_p");
    if (object.contains("omega_s")) p.omega_s = as_number(object["omega_s"], "omega_s");
    if (object.contains("Omega_p")) p.Omega_p = as_number(object["Omega_p"], "Omega_p");
    if (object.contains("Omega_s")) p.Omega_s = as_number(object["Omega_s"], "Omega_s");
    if (object.contains("eta")) config.eta = as_eta(object["eta"], "eta");
}

void parse_rates(const json& object, Config& config) {
    require_keys(object, "rates", {"gamma1", "gamma2", "gamma3", "gamma"});
    if (object.contains("gamma")) {
        const double g = as_number(object["gamma"], "gamma");
        config.rates = {g, g, g};
    }
    if (object.contains("gamma1")) config.rates.gamma1 = as_number(object["gamma1"], "gamma1");
    if (object.contains("gamma2")) config.rates.gamma2 = as_number(object["gamma2"], "gamma2");
    if (object.contains("gamma3")) config.rates.gamma3 = as_number(object["gamma3"], "gamma3");
}

void parse_numerics(const json& object, Config& config) {
    require_keys(object, "numerics",
                 {"n_max", "m_cutoff", "dt_max", "t_final", "window", "t_budget", "sample_dt",
                  "threads", "scheme"});
    Numerics& n = config.numerics;
    if (object.contains("n_max")) n.n_max = object["n_max"].get<int>();
    if (object.contains("m_cutoff")) n.m_cutoff = object["m_cutoff"].get<int>();
    if (object.contains("dt_max")) n.dt_max = as_number(object["dt_max"], "dt_max");
    if (object.contains("t_final")) n.t_final = as_number(object["t_final"], "t_final");
    if (object.contains("window")) n.window = as_number(object["window"], "window");
    if (object.contains("t_budget")) n.t_budget = as_number(object["t_budget"], "t_budget");
    if (object.contains("sample_dt")) n.sample_dt = as_number(object["sample_dt"], "sample_dt");
    if (object.contains("threads")) n.threads = object["threads"].get<int>();
    if (object.contains("scheme")) {
        const std::string s = object["scheme"].get<std::string>();
        if (s == "dressed") {
            n.scheme = dynamics::Scheme::dressed_rk4;
        } else if (s == "lab") {
            n.scheme = dynamics::Scheme::lab_rk4;
        } else {
            throw ConfigError("numerics.scheme must be 'dressed' or 'lab'");
        }
    }
    if (n.n_max != 0 && n.n_max < 2) throw ConfigError("numerics.n_max must be >= 2");
    if (n.m_cutoff <= 0) throw ConfigError("numerics.m_cutoff must be positive");
}

void parse_scan(const json& object, Config& config) {
    require_keys(object, "scan",
                 {"lambdas", "lambda_min", "lambda_max", "lambda_step", "deltas_over_Omega_p",
                  "etas", "Omega_ps", "eta_points", "numeric_stride", "numeric_Omega_ps"});
    ScanSpec& s = config.scan;
    if (object.contains("lambdas")) s.lambdas = as_number_list(object["lambdas"], "lambdas");
    if (object.contains("lambda_min") || object.contains("lambda_max")
        || object.contains("lambda_step")) {
        const double lo = object.value("lambda_min", 0.0);
        const double hi = object.value("lambda_max", 1.5);
        const double step = object.value("lambda_step", 0.01);
        if (step <= 0.0 || hi < lo) throw ConfigError("invalid lambda grid in scan");
        for (double v = lo; v <= hi + 0.5 * step; v += step) s.lambdas.push_back(v);
    }
    if (object.contains("deltas_over_Omega_p")) {
        s.deltas_over_Omega_p = as_number_list(object["deltas_over_Omega_p"], "deltas_over_Omega_p");
    }
    if (object.contains("etas")) {
        if (!object["etas"].is_array()) throw ConfigError("scan.etas must be an array");
        for (const auto& item : object["etas"]) s.etas.push_back(as_eta(item, "etas"));
    }
    if (object.contains("Omega_ps")) s.Omega_ps = as_number_list(object["Omega_ps"], "Omega_ps");
    if (object.contains("eta_points")) s.eta_points = object["eta_points"].get<int>();
    if (object.contains("numeric_stride")) s.numeric_stride = object["numeric_stride"].get<int>();
    if (object.contains("numeric_Omega_ps")) {
        s.numeric_Omega_ps = as_number_list(object["numeric_Omega_ps"], "numeric_Omega_ps");
    }
    if (s.eta_points < 2) throw ConfigError("scan.eta_points must be >= 2");
}

} // namespace

Config parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config parse error: ") + err.what());
    }
    if (!root.is_object()) throw ConfigError("config must be a JSON object");
    require_keys(root, "config",
                 {"scenario", "params", "rates", "numerics", "scan", "output_dir",
                  "lambda", "Omega_p", "eta", "gamma", "omega_p"});
    if (!root.contains("scenario")) throw ConfigError("missing required key 'scenario'");

    Config config;
    config.kind = kind_from_name(root["scenario"].get<std::string>());
    if (root.contains("params")) parse_params(root["params"], config);
    if (root.contains("rates")) parse_rates(root["rates"], config);
    if (root.contains("numerics")) parse_numerics(root["numerics"], config);
    if (root.contains("scan")) parse_scan(root["scan"], config);
    if (root.contains("output_dir")) config.output_dir = root["output_dir"].get<std::string>();
    // flat shorthands from minimal configs
    if (root.contains("lambda")) config.params.lambda = as_number(root["lambda"], "lambda");
    if (root.contains("Omega_p")) config.params.Omega_p = as_number(root["Omega_p"], "Omega_p");
    if (root.contains("eta")) config.eta = as_eta(root["eta"], "eta");
    if (root.contains("omega_p")) config.omega_p = as_number(root["omega_p"], "omega_p");
    if (root.contains("gamma")) {
        const double g = as_number(root["gamma"], "gamma");
        config.rates = {g, g, g};
    }
    if (config.eta && config.params.Omega_s != 0.0) {
        throw ConfigError("give either 'eta' or 'Omega_s', not both");
    }
    try {
        config.rates.validate();
        config.params.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

// ------------------------------------------------------------------ presets

namespace {

json preset_json(const std::string& id) {
    json j;
    const auto etas_fig6 = json::array({0.0, "eta_c", "2*eta_c"});
    if (id == "fig2") {
        j["scenario"] = "coefficient_sweep";
        j["scan"] = {{"lambda_min", 0.0}, {"lambda_max", 1.5}, {"lambda_step", 0.01}};
        j["numerics"] = {{"n_max", 30}};
    } else if (id == "fig3") {
        j["scenario"] = "p2_offresonant";
        j["params"] = {{"lambda", 0.5}, {"Omega_p", 2e-3}};
        j["scan"] = {{"deltas_over_Omega_p", {5.0, 7.5, 10.0}}};
        j["numerics"] = {{"n_max", 20}};
    } else if (id == "fig4") {
        j["scenario"] = "p2_resonant";
        j["params"] = {{"lambda", 0.5}, {"Omega_p", 0.8e-3}};
        j["scan"] = {{"etas", json::array({3.0, "eta_c", "eta_c+2"})}};
        j["numerics"] = {{"n_max", 20}};
    } else if (id == "fig5") {
        j["scenario"] = "p2_strong_drive";
        j["params"] = {{"lambda", 0.5}, {"eta", "eta_c"}};
        j["scan"] = {{"Omega_ps", {4e-3, 2e-3, 0.8e-3}}};
        j["numerics"] = {{"n_max", 20}};
    } else if (id == "fig6" || id == "fig6a" || id == "fig6b" || id == "fig6c") {
        j["scenario"] = "flux_trajectory";
        j["params"] = {{"lambda", 0.6}, {"Omega_p", 8e-3}};
        j["rates"] = {{"gamma", id == "fig6a" ? 2e-2 : 2e-3}};
        j["scan"] = {{"etas", etas_fig6}};
        j["numerics"] = {{"n_max", 10}, {"t_final", id == "fig6a" ? 1500.0 : 5000.0}};
        if (id == "fig6c") j["params"]["omega_p"] = 4.85;
    } else if (id == "fig7") {
        j["scenario"] = "flux_vs_eta";
        j["params"] = {{"lambda", 0.6}, {"Omega_p", 2e-3}};
        j["rates"] = {{"gamma", 2e-3}};
        j["scan"] = {{"eta_points", 15}, {"numeric_stride", 7}};
        j["numerics"] = {{"n_max", 10}};
    } else if (id == "fig8") {
        j["scenario"] = "g2_vs_omega_p";
        j["params"] = {{"lambda", 0.5}, {"eta", "eta_c"}};
        j["rates"] = {{"gamma", 2e-3}};
        json grid = json::array();
        const double lo = 2e-4;
        const double hi = 2e-3;
        constexpr int kPoints = 9;
        for (int i = 0; i < kPoints; ++i) {
            grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (kPoints - 1)));
        }
        j["scan"] = {{"Omega_ps", grid}, {"numeric_Omega_ps", {2e-3}}};
        j["numerics"] = {{"n_max", 10}};
    } else if (id == "steady_state_check") {
        j["scenario"] = "steady_state_check";
        j["params"] = {{"lambda", 0.6}};
        j["rates"] = {{"gamma", 2e-3}};
        j["scan"] = {{"Omega_ps", {0.4e-3, 0.8e-3, 1.2e-3, 1.6e-3, 2e-3}}};
        j["numerics"] = {{"n_max", 10}};
    } else {
        throw ConfigError("unknown preset '" + id + "'");
    }
    return j;
}

} // namespace

std::string preset(const std::string& figure_id) {
    return preset_json(figure_id).dump(2) + "\n";
}

std::vector<std::string> preset_ids() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig6a", "fig6b", "fig6c",
            "fig7", "fig8", "steady_state_check"};
}

// ------------------------------------------------------------------ reports

std::string RunReport::to_json() const {
    json j;
    j["scenario"] = scenario;
    j["outputs"] = outputs;
    j["warnings"] = warnings;
    j["wall_seconds"] = wall_seconds;
    json res = json::object();
    for (const auto& [key, value] : resolved) res[key] = value;
    j["resolved"] = res;
    return j.dump(2) + "\n";
}

// ------------------------------------------------------------------ running

namespace {

struct Resolved {
    SystemParams params;
    TruncatedSpace space;
    rabi::RabiSpectrum spectrum;
    double E0 = 0.0;
    double eta_c = 0.0;
    double eta = 0.0;
};

// Derive drive frequencies/strengths for one scan point. `delta_abs` shifts the
// pump below the |b,0> -> |E_0> resonance; eta (if unset) falls back to eta_c
// on resonance and to the Stark-balance ratio off resonance.
Resolved resolve_point(const Config& config, int n_max, std::optional<double> delta_abs,
                       std::optional<double> eta_override, int m_cutoff) {
    Resolved r;
    r.params = config.params;
    r.space = hilbert::build_space(n_max);
    r.spectrum = rabi::rabi_spectrum(r.params, r.space);
    r.E0 = r.spectrum.energies(0);
    const double c02 = r.spectrum.c(0, 2);
    r.eta_c = std::abs(c02) < 1e-14 ? std::numeric_limits<double>::infinity()
                                    : std::abs(r.spectrum.c(0, 0) / c02);

    const double resonant = r.E0 - r.params.omega_b;
    if (config.omega_p) {
        r.params.omega_p = *config.omega_p;
    } else {
        r.params.omega_p = resonant - delta_abs.value_or(0.0);
    }
    r.params.omega_s = effective::raman_resonant_omega_s(r.params.omega_p, r.params.omega_c);

    if (eta_override) {
        r.eta = *eta_override;
        r.params.Omega_s = r.eta * r.params.Omega_p;
    } else if (config.eta) {
        r.eta = config.eta->resolve(r.eta_c);
        r.params.Omega_s = r.eta * r.params.Omega_p;
    } else if (r.params.Omega_s != 0.0) {
        r.eta = r.params.Omega_p > 0.0 ? r.params.Omega_s / r.params.Omega_p : 0.0;
    } else if (delta_abs) {
        const double ratio = effective::stark_balance_ratio(r.params, r.spectrum, m_cutoff);
        r.eta = ratio;
        r.params.Omega_s = ratio * r.params.Omega_p;
    } else {
        r.eta = r.eta_c;
        r.params.Omega_s = r.eta * r.params.Omega_p;
    }
    return r;
}

void add_monitor_warnings(const Resolved& r, int m_cutoff, RunReport& report) {
    const auto mon = effective::validity_monitors(r.params, r.spectrum, m_cutoff);
    report.resolved.emplace_back("resonant_weak_drive_max", mon.resonant_weak_drive_max);
    report.resolved.emplace_back("detuned_weak_drive_max", mon.detuned_weak_drive_max);
    if (!std::isnan(mon.g24_over_g02)) {
        report.resolved.emplace_back("g24_over_g02", mon.g24_over_g02);
    }
    if (mon.stokes_static) {
        report.warnings.push_back("omega_s <= 0: the Stokes drive is static");
    }
    if (mon.resonant_weak_drive_max > 0.1) {
        report.warnings.push_back("weak-drive condition violated (monitor > 0.1): "
                                  "effective reductions untrustworthy");
    }
    if (mon.g24_over_g02 > 0.1) {
        report.warnings.push_back("|g24/g02| > 0.1: two-level truncation untrustworthy");
    }
}

std::filesystem::path output_file(const Config& config, const std::string& name,
                                  RunReport& report) {
    std::filesystem::create_directories(config.output_dir);
    std::filesystem::path path = std::filesystem::path(config.output_dir) / name;
    report.outputs.push_back(path.string());
    return path;
}

int scenario_threads(const Config& config) {
    return config.numerics.threads > 0 ? config.numerics.threads : parallel::default_threads();
}

void run_coefficient_sweep(const Config& config, RunReport& report) {
    std::vector<double> lambdas = config.scan.lambdas;
    if (lambdas.empty()) {
        for (double v = 0.0; v <= 1.5 + 0.005; v += 0.01) lambdas.push_back(v);
    }
    const int n_max = config.numerics.n_max > 0 ? config.numerics.n_max : 30;
    const TruncatedSpace space = hilbert::build_space(n_max);
    const auto rows = rabi::coefficient_sweep(lambdas, config.params, space,
                                              scenario_threads(config));
    csv::Writer out(output_file(config, "coefficient_sweep.csv", report).string(),
                    {"lambda", "c00", "c02", "c04"});
    for (const auto& row : rows) out.row({row.lambda, row.c00, row.c02, row.c04});
    report.resolved.emplace_back("n_max", n_max);
    report.resolved.emplace_back("rows", static_cast<double>(rows.size()));
}

void write_comparison_csv(const Config& config, const std::string& name,
                          const dynamics::P2Comparison& cmp, RunReport& report) {
    csv::Writer out(output_file(config, name, report).string(),
                    {"t", "P2_exact", "P2_effective", "norm"});
    for (std::size_t i = 0; i < cmp.times.size(); ++i) {
        out.row({cmp.times[i], cmp.p2_exact[i], cmp.p2_effective[i], cmp.norm[i]});
    }
}

dynamics::EvolveOptions evolve_options(const Config& config) {
    dynamics::EvolveOptions opts;
    opts.scheme = config.numerics.scheme;
    opts.dt_max = config.numerics.dt_max;
    if (config.numerics.sample_dt > 0.0) opts.sample_dt = config.numerics.sample_dt;
    return opts;
}

void run_p2_offresonant(const Config& config, RunReport& report) {
    std::vector<double> deltas = config.scan.deltas_over_Omega_p;
    if (deltas.empty()) deltas = {5.0, 7.5, 10.0};
    const int n_max = config.numerics.n_max > 0 ? config.numerics.n_max : 20;
    if (config.params.Omega_p <= 0.0) throw ConfigError("p2_offresonant requires Omega_p > 0");

    std::vector<dynamics::P2Comparison> results(deltas.size());
    std::vector<Resolved> points(deltas.size());
    parallel::for_indexed(deltas.size(), scenario_threads(config), [&](std::size_t i) {
        const double delta_abs = deltas[i] * config.params.Omega_p;
        Resolved r = resolve_point(config, n_max, delta_abs, std::nullopt,
                                   config.numerics.m_cutoff);
        results[i] = dynamics::p2_comparison(r.params, r.space,
                                             dynamics::ComparisonMode::off_resonant,
                                             config.numerics.t_final, evolve_options(config),
                                             config.numerics.m_cutoff);
        points[i] = std::move(r);
    });
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const std::string tag = format_number(deltas[i]);
        write_comparison_csv(config, "p2_offresonant_delta" + tag + ".csv", results[i], report);
        report.resolved.emplace_back("delta" + tag + "_omega_p", points[i].params.omega_p);
        report.resolved.emplace_back("delta" + tag + "_eta", points[i].eta);
        report.resolved.emplace_back("delta" + tag + "_sup_mismatch", results[i].sup_mismatch);
    }
    report.resolved.emplace_back("E0", points.back().E0);
    add_monitor_warnings(points.back(), config.numerics.m_cutoff, report);
}

void run_p2_resonant(const Config& config, RunReport& report, bool strong_drive) {
    const int n_max = config.numerics.n_max > 0 ? config.numerics.n_max : 20;

    std::vector<double> drive_strengths;
    std::vector<EtaSpec> etas;
    if (strong_drive) {
        drive_strengths = config.scan.Omega_ps;
        if (drive_strengths.empty()) drive_strengths = {4e-3, 2e-3, 0.8e-3};
        etas.assign(1, config.eta.value_or(EtaSpec{0.0, 1.0}));
    } else {
        drive_strengths = {config.params.Omega_p > 0.0 ? config.params.Omega_p : 0.8e-3};
        etas = config.scan.etas;
        if (etas.empty()) etas.push_back(config.eta.value_or(EtaSpec{0.0, 1.0}));
    }

    struct Case {
        double Omega_p;
        EtaSpec eta;
    };
    std::vector<Case> cases;
    for (const double op : drive_strengths) {
        for (const EtaSpec& eta : etas) cases.push_back({op, eta});
    }

    std::vector<dynamics::P2Comparison> results(cases.size());
    std::vector<Resolved> points(cases.size());
    parallel::for_indexed(cases.size(), scenario_threads(config), [&](std::size_t i) {
        Config local = config;
        local.params.Omega_p = cases[i].Omega_p;
        local.eta = cases[i].eta;
        Resolved r = resolve_point(local, n_max, std::nullopt, std::nullopt,
                                   config.numerics.m_cutoff);
        results[i] = dynamics::p2_comparison(r.params, r.space,
                                             dynamics::ComparisonMode::resonant,
                                             config.numerics.t_final, evolve_options(config),
                                             config.numerics.m_cutoff);
        points[i] = std::move(r);
    });
    for (std::size_t i = 0; i < cases.size(); ++i) {
        std::string name = strong_drive
                               ? "p2_strong_drive_Omega" + format_number(cases[i].Omega_p)
                               : "p2_resonant_eta" + format_number(points[i].eta);
        write_comparison_csv(config, name + ".csv", results[i], report);
        double max_p2 = 0.0;
        for (const double v : results[i].p2_exact) max_p2 = std::max(max_p2, v);
        report.resolved.emplace_back(name + "_max_P2", max_p2);
        report.resolved.emplace_back(name + "_sup_mismatch", results[i].sup_mismatch);
    }
    report.resolved.emplace_back("E0", points.front().E0);
    report.resolved.emplace_back("eta_c", points.front().eta_c);
    report.resolved.emplace_back("omega_p", points.front().params.omega_p);
    report.resolved.emplace_back("omega_s", points.front().params.omega_s);
    add_monitor_warnings(points.front(), config.numerics.m_cutoff, report);
}

lindblad::MasterOptions master_options(const Config& config) {
    lindblad::MasterOptions opts;
    opts.scheme = config.numerics.scheme;
    opts.dt_max = config.numerics.dt_max;
    if (config.numerics.sample_dt > 0.0) opts.sample_dt = config.numerics.sample_dt;
    return opts;
}

void run_flux_trajectory(const Config& config, RunReport& report) {
    const int n_max = config.numerics.n_max > 0 ? config.numerics.n_max : 10;
    const double t_final = config.numerics.t_final > 0.0 ? config.numerics.t_final : 5000.0;
    std::vector<EtaSpec> etas = config.scan.etas;
    if (etas.empty()) {
        etas = {EtaSpec::number(0.0), EtaSpec{0.0, 1.0}, EtaSpec{0.0, 2.0}};
    }

    std::vector<lindblad::MasterTrajectory> results(etas.size());
    std::vector<Resolved> points(etas.size());
    parallel::for_indexed(etas.size(), scenario_threads(config), [&](std::size_t i) {
        Config local = config;
        local.eta = etas[i];
        Resolved r = resolve_point(local, n_max, std::nullopt, std::nullopt,
                                   config.numerics.m_cutoff);
        const auto jumps = lindblad::build_jumps(r.params, r.space, config.rates);
        results[i] = lindblad::master_evolve(lindblad::ground_state_density(jumps), r.params,
                                             r.space, config.rates, t_final,
                                             master_options(config));
        points[i] = std::move(r);
    });
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const auto& traj = results[i];
        csv::Writer out(output_file(config,
                                    "flux_trajectory_eta" + format_number(points[i].eta) + ".csv",
                                    report)
                            .string(),
                        {"t", "phi_out", "trace", "min_eig"});
        std::size_t eig_idx = 0;
        for (std::size_t s = 0; s < traj.times.size(); ++s) {
            double min_eig = std::nan("");
            if (eig_idx < traj.eig_times.size() && traj.eig_times[eig_idx] == traj.times[s]) {
                min_eig = traj.min_eig[eig_idx];
                ++eig_idx;
            }
            out.row({traj.times[s], traj.phi_out[s], traj.trace[s], min_eig});
        }
        report.resolved.emplace_back("eta" + format_number(points[i].eta) + "_phi_final",
                                     traj.phi_out.back());
    }
    report.resolved.emplace_back("E0", points.front().E0);
    report.resolved.emplace_back("eta_c", points.front().eta_c);
    add_monitor_warnings(points.front(), config.numerics.m_cutoff, report);
}

lindblad::SteadyOptions steady_options(const Config& config) {
    lindblad::SteadyOptions opts;
    opts.master = master_options(config);
    opts.window = config.numerics.window;
    opts.t_budget = config.numerics.t_budget;
    return opts;
}

void run_flux_vs_eta(const Config& config, RunReport& report) {
    const int n_max = config.numerics.n_max > 0 ? config.numerics.n_max : 10;
    const Resolved base = resolve_point(config, n_max, std::nullopt, 0.0,
                                        config.numerics.m_cutoff);
    if (config.params.Omega_p <= 0.0) throw ConfigError("flux_vs_eta requires Omega_p > 0");

    const int points = config.scan.eta_points;
    std::vector<double> etas(points);
    for (int i = 0; i < points; ++i) {
        etas[i] = 2.0 * base.eta_c * static_cast<double>(i) / (points - 1);
    }

    const auto rates4 = lindblad::lambda_rates(base.spectrum, config.rates);
    std::vector<double> phi_analytic(points);
    for (int i = 0; i < points; ++i) {
        const double op_prime = 0.5 * config.params.Omega_p * base.spectrum.c(0, 0);
        const double os_prime = 0.5 * etas[i] * config.params.Omega_p * base.spectrum.c(0, 2);
        const auto ss = lindblad::appendix_resonant_ss(op_prime, os_prime, rates4);
        phi_analytic[i] = lindblad::phi_ss_analytic(ss.rho, config.rates.gamma3);
    }

    std::vector<double> phi_numeric(points, std::nan(""));
    std::vector<std::size_t> numeric_idx;
    if (config.scan.numeric_stride > 0) {
        for (int i = 0; i < points; i += config.scan.numeric_stride) {
            numeric_idx.push_back(static_cast<std::size_t>(i));
        }
    }
    parallel::for_indexed(numeric_idx.size(), scenario_threads(config), [&](std::size_t w) {
        const std::size_t i = numeric_idx[w];
        Resolved r = resolve_point(config, n_max, std::nullopt, etas[i],
                                   config.numerics.m_cutoff);
        const auto result = lindblad::steady_state_numeric(r.params, r.space, config.rates,
                                                           steady_options(config));
        phi_numeric[i] = result.phi_ss;
    });

    csv::Writer out(output_file(config, "flux_vs_eta.csv", report).string(),
                    {"eta", "phi_ss_numeric", "phi_ss_analytic"});
    for (int i = 0; i < points; ++i) out.row({etas[i], phi_numeric[i], phi_analytic[i]});
    report.resolved.emplace_back("E0", base.E0);
    report.resolved.emplace_back("eta_c", base.eta_c);
    report.resolved.emplace_back("numeric_points", static_cast<double>(numeric_idx.size()));
    // monitors at the strongest Stokes drive of the scan
    const Resolved worst = resolve_point(config, n_max, std::nullopt, etas.back(),
                                         config.numerics.m_cutoff);
    add_monitor_warnings(worst, config.numerics.m_cutoff, report);
}

void run_g2_vs_omega_p(const Config& config, RunReport& report) {
    const int n_max = config.numerics.n_max > 0 ? config.numerics.n_max : 10;
    std::vector<double> grid = config.scan.Omega_ps;
    if (grid.empty()) {
        constexpr int kPoints = 9;
        for (int i = 0; i < kPoints; ++i) {
            grid.push_back(2e-4 * std::pow(10.0, static_cast<double>(i) / (kPoints - 1)));
        }
    }
    const Resolved base = resolve_point(config, n_max, std::nullopt, std::nullopt,
                                        config.numerics.m_cutoff);
    const auto rates4 = lindblad::lambda_rates(base.spectrum, config.rates);

    std::vector<double> g2_analytic(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double op_prime = 0.5 * grid[i] * base.spectrum.c(0, 0);
        const double os_prime = 0.5 * base.eta * grid[i] * base.spectrum.c(0, 2);
        const auto ss = lindblad::appendix_resonant_ss(op_prime, os_prime, rates4);
        g2_analytic[i] = lindblad::g2_ss_analytic(ss.rho);
    }

    std::vector<double> g2_numeric(grid.size(), std::nan(""));
    std::vector<std::size_t> numeric_idx;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (const double target : config.scan.numeric_Omega_ps) {
            if (std::abs(grid[i] - target) <= 1e-12 + 1e-9 * std::abs(target)) {
                numeric_idx.push_back(i);
            }
        }
    }
    parallel::for_indexed(numeric_idx.size(), scenario_threads(config), [&](std::size_t w) {
        const std::size_t i = numeric_idx[w];
        Config local = config;
        local.params.Omega_p = grid[i];
        Resolved r = resolve_point(local, n_max, std::nullopt, std::nullopt,
                                   config.numerics.m_cutoff);
        const auto result = lindblad::steady_state_numeric(r.params, r.space, config.rates,
                                                           steady_options(config));
        g2_numeric[i] = result.g2_ss;
    });

    csv::Writer out(output_file(config, "g2_vs_omega_p.csv", report).string(),
                    {"omega_p", "g2_numeric", "g2_analytic"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.row({grid[i], g2_numeric[i], g2_analytic[i]});
    }
    report.resolved.emplace_back("E0", base.E0);
    report.resolved.emplace_back("eta_c", base.eta_c);
    report.resolved.emplace_back("eta", base.eta);
    Config strongest = config;
    strongest.params.Omega_p = grid.back();
    const Resolved worst = resolve_point(strongest, n_max, std::nullopt, std::nullopt,
                                         config.numerics.m_cutoff);
    add_monitor_warnings(worst, config.numerics.m_cutoff, report);
}

void run_steady_state_check(const Config& config, RunReport& report) {
    const int n_max = config.numerics.n_max > 0 ? config.numerics.n_max : 10;
    std::vector<double> omega_ps = config.scan.Omega_ps;
    if (omega_ps.empty()) omega_ps = {0.4e-3, 0.8e-3, 1.2e-3, 1.6e-3, 2e-3};
    const std::vector<double> eta_scales = {0.0, 0.5, 1.0, 1.5, 2.0};

    const Resolved base = resolve_point(config, n_max, std::nullopt, 0.0,
                                        config.numerics.m_cutoff);
    const auto rates4 = lindblad::lambda_rates(base.spectrum, config.rates);

    csv::Writer out(output_file(config, "steady_state_check.csv", report).string(),
                    {"Omega_p", "eta", "max_abs_diff", "phi_ss_analytic"});
    double worst = 0.0;
    for (const double op : omega_ps) {
        for (const double scale : eta_scales) {
            const double eta = scale * base.eta_c;
            Config local = config;
            local.params.Omega_p = op;
            Resolved r = resolve_point(local, n_max, std::nullopt, eta,
                                       config.numerics.m_cutoff);
            const auto numeric = lindblad::lambda_liouvillian_steady(r.params, r.spectrum,
                                                                     config.rates);
            const auto analytic = lindblad::appendix_resonant_ss(
                0.5 * op * r.spectrum.c(0, 0), 0.5 * eta * op * r.spectrum.c(0, 2), rates4);
            const double diff = (numeric - analytic.rho).cwiseAbs().maxCoeff();
            worst = std::max(worst, diff);
            out.row({op, eta, diff,
                     lindblad::phi_ss_analytic(analytic.rho, config.rates.gamma3)});
        }
    }
    report.resolved.emplace_back("worst_elementwise_diff", worst);
    report.resolved.emplace_back("eta_c", base.eta_c);
}

} // namespace

RunReport run_scenario(const Config& config) {
    const auto start = std::chrono::steady_clock::now();
    config.params.validate();
    config.rates.validate();

    RunReport report;
    report.scenario = kind_name(config.kind);
    switch (config.kind) {
        case Kind::coefficient_sweep:
            run_coefficient_sweep(config, report);
            break;
        case Kind::p2_offresonant:
            run_p2_offresonant(config, report);
            break;
        case Kind::p2_resonant:
            run_p2_resonant(config, report, false);
            break;
        case Kind::p2_strong_drive:
            run_p2_resonant(config, report, true);
            break;
        case Kind::flux_trajectory:
            run_flux_trajectory(config, report);
            break;
        case Kind::flux_vs_eta:
            run_flux_vs_eta(config, report);
            break;
        case Kind::g2_vs_omega_p:
            run_g2_vs_omega_p(config, report);
            break;
        case Kind::steady_state_check:
            run_steady_state_check(config, report);
            break;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace uscraman::scenario
