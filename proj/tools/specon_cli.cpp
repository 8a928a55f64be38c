// Command line front end: run one scenario, compare SpeCon against DS, or
// sweep monitor parameters. Exit codes: 0 success, 2 configuration error,
// 1 anything else.

#include <specon/harness.hpp>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 2;

void configure_logging() {
    if (const char* level = std::getenv("SPECON_LOG_LEVEL")) {
        spdlog::set_level(spdlog::level::from_str(level));
    } else {
        spdlog::set_level(spdlog::level::warn);
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

specon::ScenarioConfig load(const std::string& path, std::optional<std::uint64_t> seed) {
    auto cfg = specon::load_config(path);
    if (seed) {
        cfg.seed = *seed;
    }
    return cfg;
}

void print_comparison(const specon::Comparison& c) {
    std::cout << fmt::format(
        "average completion: specon {:.2f}s  ds {:.2f}s  ({:+.1f}%)\n"
        "makespan:           specon {:.2f}s  ds {:.2f}s  ({:+.1f}%)\n"
        "jobs improved: {:.1f}%  best job: {:.1f}%\n",
        c.specon_average, c.ds_average, 100.0 * c.overall, c.specon_makespan, c.ds_makespan,
        100.0 * c.makespan, 100.0 * c.reduced, 100.0 * c.best);
}

}  // namespace

int main(int argc, char** argv) {
    configure_logging();

    CLI::App app{"Discrete-event simulator for speculative container scheduling"};
    app.require_subcommand(1);

    std::string config_path;
    std::string grid_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> seeds;
    bool serial = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Scenario JSON file")->required();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--seed", seed, "Override the scenario seed");
    };

    auto* run_cmd = app.add_subcommand("run", "Run one scenario with its configured policy");
    add_common(run_cmd);
    auto* compare_cmd = app.add_subcommand("compare", "Run SpeCon and DS on the same scenario");
    add_common(compare_cmd);
    auto* sweep_cmd = app.add_subcommand("sweep", "Compare policies over a parameter grid");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--grid", grid_path, "Grid JSON file")->required();
    sweep_cmd->add_option("--seeds", seeds, "Seeds per grid point (overrides the grid file)");
    sweep_cmd->add_flag("--serial", serial, "Run grid points one after another");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        fs::create_directories(out_dir);
        if (run_cmd->parsed()) {
            auto cfg = load(config_path, seed);
            auto report = specon::run(cfg);
            specon::write_report(report, out_dir);
            std::cout << fmt::format("{} ({}): average completion {:.2f}s, makespan {:.2f}s\n",
                                     report.label, specon::to_string(report.policy),
                                     report.summary.average_completion, report.summary.makespan);
        } else if (compare_cmd->parsed()) {
            auto cfg = load(config_path, seed);
            auto result = specon::compare(cfg);
            specon::write_report(result.specon, fs::path(out_dir) / "specon");
            specon::write_report(result.ds, fs::path(out_dir) / "ds");
            write_text(fs::path(out_dir) / "comparison.csv",
                       specon::comparison_csv(result.comparison));
            print_comparison(result.comparison);
        } else if (sweep_cmd->parsed()) {
            auto cfg = load(config_path, seed);
            auto grid = specon::load_grid(grid_path);
            if (seeds) {
                if (*seeds == 0) {
                    throw specon::ConfigError("--seeds must be at least 1");
                }
                grid.seeds = *seeds;
            }
            auto rows = specon::sweep(cfg, grid, !serial);
            auto table = specon::sweep_csv(rows);
            write_text(fs::path(out_dir) / "sweep.csv", table);
            std::cout << table;
        }
    } catch (const specon::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
