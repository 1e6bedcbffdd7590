// sweep.hpp — Parameter-sweep harness: grid configs, steady-state ergotropy
// evaluation over the grid, CSV emission, and gnuplot script generation.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qb/model.hpp"

namespace qb {

inline constexpr const char* kEngineVersion = "0.1.0";

// One swept axis. Multiple target paths move together (tied axis, e.g. a
// single lambda driving all three couplings). Family axes enumerate curve or
// panel labels and come before the plotted axes.
struct SweepAxis {
    std::string name;                   // column header
    std::vector<std::string> targets;   // SystemSpec parameter paths
    std::vector<double> values;
    bool family = false;

    // linspace provenance, kept so --points can rescale and metadata can
    // record the range
    bool is_linspace = false;
    double lin_min = 0.0;
    double lin_max = 0.0;
    int lin_points = 0;

    static SweepAxis list(std::string name, std::vector<std::string> targets,
                          std::vector<double> values, bool family = false);
    static SweepAxis linspace(std::string name, std::vector<std::string> targets,
                              double min, double max, int points);
};

struct SolverSettings {
    double kappa = kDefaultKappa;
    double freq_tol = kDefaultFreqTol;
    double residual_tol = 1e-10;
    double null_tol = 1e-8;
};

struct SweepConfig {
    std::string preset_name;
    std::vector<SweepAxis> axes;          // family axes first
    std::map<std::string, double> fixed;  // applied before axis values
    SolverSettings solver;
    std::string figure;  // set for the built-in figure configs, else empty

    void validate() const;
    std::size_t grid_size() const;
    int family_axis_count() const;
};

struct SweepRow {
    std::vector<double> params;  // swept values (axis order), then fixed values
    double ergotropy = 0.0;
    double internal_energy = 0.0;
    double residual = 0.0;
    double min_eig = 0.0;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    SweepConfig config;
    std::vector<std::string> param_columns;  // axis names, then fixed paths
    std::vector<SweepRow> rows;              // row-major over the axes
    std::map<std::string, std::string> metadata;

    bool any_failed() const;
};

// Evaluates the full grid: spec -> Hamiltonian -> Liouvillian -> steady state
// -> ergotropy per point. Point failures become flagged error rows. Grid
// points are independent; `workers` > 1 evaluates them concurrently with
// deterministic row order.
SweepResult run_sweep(const SweepConfig& config, int workers = 1);

// UTF-8 CSV: '#' key=value metadata block, header row, then data rows with
// floats at 12 significant digits.
void emit_csv(const SweepResult& result, const std::string& path);

// gnuplot script rendering the CSV next to it: line plot for one plotted axis
// (one curve per family value), heat map for two.
void emit_plot_script(const SweepResult& result, const std::string& path);

// Built-in sweep configurations behind the CLI subcommands:
// fig2a, fig2b, fig3, fig4a, fig4b, fig5, fig6.
SweepConfig figure_config(const std::string& name);

// Load a SweepConfig from a JSON file; `base` supplies defaults for fields the
// file omits (used by the figure subcommands with --config overlays).
SweepConfig load_config(const std::string& path, const SweepConfig* base = nullptr);

} // namespace qb
