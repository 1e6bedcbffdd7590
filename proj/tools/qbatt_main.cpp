// qbatt_main.cpp — CLI for the sweep harness. Subcommands reproduce the
// built-in figure sweeps; `sweep` runs an arbitrary JSON config.
//
// Exit codes: 0 success, 1 config error, 2 solver failure on >= 1 grid point
// (error rows are still emitted).

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qb/sweep.hpp"

namespace {

struct CliOptions {
    std::string config_file;
    std::string out_dir = ".";
    double kappa = -1.0;  // <0 means "not set"
    int points = 0;       // 0 means "not set"
    int workers = 1;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--config", opts.config_file, "JSON sweep config overlay");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--kappa", opts.kappa, "Ohmic constant override");
    cmd->add_option("--points", opts.points, "points per swept (non-family) axis")
        ->check(CLI::Range(2, 100000));
    cmd->add_option("--workers", opts.workers, "concurrent grid workers")
        ->check(CLI::Range(1, 1024));
}

int run(qb::SweepConfig config, const CliOptions& opts, const std::string& stem) {
    if (!opts.config_file.empty()) {
        config = qb::load_config(opts.config_file, &config);
    }
    if (opts.kappa > 0.0) config.solver.kappa = opts.kappa;
    if (opts.points >= 2) {
        for (auto& axis : config.axes) {
            if (axis.is_linspace && !axis.family) {
                axis = qb::SweepAxis::linspace(axis.name, axis.targets, axis.lin_min,
                                               axis.lin_max, opts.points);
            }
        }
    }
    config.validate();

    std::filesystem::create_directories(opts.out_dir);
    const std::string csv_path = opts.out_dir + "/" + stem + ".csv";
    const std::string plot_path = opts.out_dir + "/" + stem + ".gp";

    const qb::SweepResult result = qb::run_sweep(config, opts.workers);
    qb::emit_csv(result, csv_path);
    qb::emit_plot_script(result, plot_path);

    std::size_t failed = 0;
    for (const auto& row : result.rows) {
        if (row.failed) ++failed;
    }
    std::cout << stem << ": " << result.rows.size() << " grid points, " << failed
              << " failed\n"
              << "  wrote " << csv_path << "\n"
              << "  wrote " << plot_path << "\n";
    return failed == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state ergotropy sweeps for coupled-qubit batteries"};
    app.require_subcommand(1);

    const std::vector<std::string> figures = {"fig2a", "fig2b", "fig3", "fig4a",
                                              "fig4b", "fig5",  "fig6"};
    std::vector<CliOptions> options(figures.size() + 1);
    std::vector<CLI::App*> subcommands(figures.size() + 1);
    for (std::size_t i = 0; i < figures.size(); ++i) {
        subcommands[i] = app.add_subcommand(figures[i], "run the " + figures[i] + " sweep");
        add_common_options(subcommands[i], options[i]);
    }
    subcommands.back() = app.add_subcommand("sweep", "run a sweep from a JSON config");
    add_common_options(subcommands.back(), options.back());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // any parse failure is a config error
    }

    try {
        for (std::size_t i = 0; i < figures.size(); ++i) {
            if (subcommands[i]->parsed()) {
                return run(qb::figure_config(figures[i]), options[i], figures[i]);
            }
        }
        const auto& opts = options.back();
        if (opts.config_file.empty()) {
            std::cerr << "sweep: --config FILE is required\n";
            return 1;
        }
        return run(qb::load_config(opts.config_file), opts, "sweep");
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
