// usc-raman — scenario runner for the driven three-level ultrastrong-coupling model
#include "uscraman/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"driven ultrastrong-coupling cavity QED scenarios (CSV output)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int n_max = 0;
    int threads = 0;
    auto* run = app.add_subcommand("run", "execute a scenario config file");
    run->add_option("config", config_path, "JSON scenario config")->required();
    run->add_option("--out", out_dir, "output directory (overrides config output_dir)");
    run->add_option("--n-max", n_max, "Fock cutoff override");
    run->add_option("--threads", threads, "worker pool size for scan points");

    std::string preset_id;
    auto* preset = app.add_subcommand("preset", "print a built-in scenario config");
    preset->add_option("figure-id", preset_id, "one of fig2..fig8, fig6a/b/c, steady_state_check")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (preset->parsed()) {
            std::cout << uscraman::scenario::preset(preset_id);
            return 0;
        }
        uscraman::scenario::Config config = uscraman::scenario::load_config(config_path);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (n_max > 0) config.numerics.n_max = n_max;
        if (threads > 0) config.numerics.threads = threads;
        const auto report = uscraman::scenario::run_scenario(config);
        std::cout << report.to_json();
        if (!config.output_dir.empty()) {
            std::ofstream report_file(std::filesystem::path(config.output_dir) / "report.json");
            report_file << report.to_json();
        }
        return 0;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return 2;
    }
}
