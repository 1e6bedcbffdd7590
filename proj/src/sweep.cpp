// sweep.cpp — Sweep-harness implementation: grid evaluation, CSV and gnuplot
// emission, figure configurations, JSON config loading.

#include "qb/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qb/ergotropy.hpp"
#include "qb/lindblad.hpp"
#include "qb/steady_state.hpp"

namespace qb {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

// --------------------------------- SweepAxis ----------------------------------

SweepAxis SweepAxis::list(std::string name, std::vector<std::string> targets,
                          std::vector<double> values, bool family) {
    SweepAxis axis;
    axis.name = std::move(name);
    axis.targets = std::move(targets);
    axis.values = std::move(values);
    axis.family = family;
    return axis;
}

SweepAxis SweepAxis::linspace(std::string name, std::vector<std::string> targets,
                              double min, double max, int points) {
    if (points < 2) {
        throw std::invalid_argument("SweepAxis: linspace needs at least 2 points");
    }
    if (!(min < max)) {
        throw std::invalid_argument("SweepAxis: linspace needs min < max");
    }
    SweepAxis axis;
    axis.name = std::move(name);
    axis.targets = std::move(targets);
    axis.values.resize(static_cast<std::size_t>(points));
    const double step = (max - min) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) {
        axis.values[static_cast<std::size_t>(i)] = min + step * i;
    }
    axis.values.back() = max;
    axis.is_linspace = true;
    axis.lin_min = min;
    axis.lin_max = max;
    axis.lin_points = points;
    return axis;
}

// -------------------------------- SweepConfig ---------------------------------

void SweepConfig::validate() const {
    const SystemSpec base = preset(preset_name);  // throws on unknown preset
    if (axes.empty()) {
        throw std::invalid_argument("SweepConfig: at least one axis required");
    }
    bool seen_plotted = false;
    for (const auto& axis : axes) {
        if (axis.values.empty() || axis.targets.empty()) {
            throw std::invalid_argument("SweepConfig: axis needs targets and values");
        }
        if (axis.family && seen_plotted) {
            throw std::invalid_argument("SweepConfig: family axes must come first");
        }
        seen_plotted = seen_plotted || !axis.family;
        SystemSpec probe = base;
        for (const auto& target : axis.targets) {
            set_param(probe, target, axis.values.front());  // throws on bad path
        }
    }
    SystemSpec probe = base;
    for (const auto& [path, value] : fixed) {
        set_param(probe, path, value);
    }
}

std::size_t SweepConfig::grid_size() const {
    std::size_t n = 1;
    for (const auto& axis : axes) n *= axis.values.size();
    return n;
}

int SweepConfig::family_axis_count() const {
    int n = 0;
    for (const auto& axis : axes) {
        if (axis.family) ++n;
    }
    return n;
}

// --------------------------------- run_sweep ----------------------------------

bool SweepResult::any_failed() const {
    for (const auto& row : rows) {
        if (row.failed) return true;
    }
    return false;
}

namespace {

SweepRow evaluate_point(const SweepConfig& config, const std::vector<double>& axis_values) {
    SweepRow row;
    row.params = axis_values;
    for (const auto& [path, value] : config.fixed) {
        row.params.push_back(value);
    }
    try {
        SystemSpec spec = preset(config.preset_name);
        spec.kappa = config.solver.kappa;
        for (const auto& [path, value] : config.fixed) {
            set_param(spec, path, value);
        }
        for (std::size_t a = 0; a < config.axes.size(); ++a) {
            for (const auto& target : config.axes[a].targets) {
                set_param(spec, target, axis_values[a]);
            }
        }
        const Matrix h = build_hamiltonian(spec);
        const Spectrum sp = spectrum(h, config.solver.freq_tol);
        const Superoperator l = liouvillian(spec, sp);
        SolverOptions opts;
        opts.residual_tol = config.solver.residual_tol;
        opts.null_tol = config.solver.null_tol;
        const Matrix rho = steady_state(l, opts);
        const ErgotropyReport report = ergotropy(rho, h);
        row.ergotropy = report.ergotropy;
        row.internal_energy = report.internal_energy;
        row.residual = (l.mat * vec(rho)).norm();
        row.min_eig = min_eigenvalue(rho);
        row.failed = row.residual > config.solver.residual_tol || row.min_eig < -1e-8;
        if (row.failed) row.error = "threshold violation";
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.ergotropy = row.internal_energy = row.residual = row.min_eig = nan;
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config, int workers) {
    config.validate();
    SweepResult result;
    result.config = config;
    for (const auto& axis : config.axes) {
        result.param_columns.push_back(axis.name);
    }
    for (const auto& [path, value] : config.fixed) {
        result.param_columns.push_back(path);
    }

    const std::size_t n = config.grid_size();
    result.rows.resize(n);

    // row-major: first axis varies slowest
    std::vector<std::size_t> strides(config.axes.size(), 1);
    for (std::size_t a = config.axes.size(); a-- > 1;) {
        strides[a - 1] = strides[a] * config.axes[a].values.size();
    }

    auto point_values = [&](std::size_t idx) {
        std::vector<double> values(config.axes.size());
        for (std::size_t a = 0; a < config.axes.size(); ++a) {
            const std::size_t i = (idx / strides[a]) % config.axes[a].values.size();
            values[a] = config.axes[a].values[i];
        }
        return values;
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < n; idx = next.fetch_add(1)) {
            result.rows[idx] = evaluate_point(config, point_values(idx));
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    auto& meta = result.metadata;
    meta["engine_version"] = kEngineVersion;
    meta["preset"] = config.preset_name;
    if (!config.figure.empty()) meta["figure"] = config.figure;
    meta["kappa"] = format_double(config.solver.kappa);
    meta["freq_tol"] = format_double(config.solver.freq_tol);
    meta["residual_tol"] = format_double(config.solver.residual_tol);
    meta["null_tol"] = format_double(config.solver.null_tol);
    for (std::size_t a = 0; a < config.axes.size(); ++a) {
        const auto& axis = config.axes[a];
        std::ostringstream desc;
        desc << axis.name << ":" << join(axis.targets, "+") << ":";
        if (axis.is_linspace) {
            desc << format_double(axis.lin_min) << ":" << format_double(axis.lin_max) << ":"
                 << axis.values.size();
        } else {
            for (std::size_t i = 0; i < axis.values.size(); ++i) {
                if (i > 0) desc << "|";
                desc << format_double(axis.values[i]);
            }
        }
        if (axis.family) desc << ":family";
        meta["axis_" + std::to_string(a)] = desc.str();
    }
    for (const auto& [path, value] : config.fixed) {
        meta["fixed_" + path] = format_double(value);
    }
    if (config.preset_name == "two_cell_fig2") {
        bool lambda_given = config.fixed.count("lambda_LR") > 0;
        for (const auto& axis : config.axes) {
            for (const auto& target : axis.targets) {
                if (target == "lambda_LR") lambda_given = true;
            }
        }
        meta["lambda_LR_assumed"] = lambda_given ? "false" : "true";
    }
    return result;
}

// --------------------------------- emit_csv -----------------------------------

void emit_csv(const SweepResult& result, const std::string& path) {
    if (result.rows.empty()) {
        throw std::invalid_argument("emit_csv: empty result");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    }
    for (const auto& [key, value] : result.metadata) {
        out << "# " << key << "=" << value << "\n";
    }
    out << join(result.param_columns, ",") << ",W,internal_energy,residual,min_eig,error\n";
    for (const auto& row : result.rows) {
        for (const double p : row.params) {
            out << format_double(p) << ",";
        }
        out << format_double(row.ergotropy) << "," << format_double(row.internal_energy)
            << "," << format_double(row.residual) << "," << format_double(row.min_eig) << ",";
        std::string msg = row.error;
        for (auto& c : msg) {
            if (c == ',' || c == '\n') c = ';';
        }
        out << msg << "\n";
    }
    if (!out.good()) {
        throw std::runtime_error("emit_csv: write to '" + path + "' failed");
    }
}

// ------------------------------ emit_plot_script ------------------------------

namespace {

std::string basename_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string replace_extension(const std::string& name, const std::string& ext) {
    const auto dot = name.find_last_of('.');
    return (dot == std::string::npos ? name : name.substr(0, dot)) + ext;
}

} // namespace

void emit_plot_script(const SweepResult& result, const std::string& path) {
    if (result.rows.empty()) {
        throw std::invalid_argument("emit_plot_script: empty result");
    }
    const auto& axes = result.config.axes;
    const int n_family = result.config.family_axis_count();
    const int n_plotted = static_cast<int>(axes.size()) - n_family;
    if (n_family > 1 || n_plotted < 1 || n_plotted > 2) {
        throw std::invalid_argument("emit_plot_script: unsupported axis layout");
    }

    const std::string csv = replace_extension(basename_of(path), ".csv");
    const std::string png = replace_extension(basename_of(path), ".png");
    const int w_col = static_cast<int>(result.param_columns.size()) + 1;
    const std::string title = result.config.figure.empty() ? "sweep" : result.config.figure;

    std::ostringstream s;
    s << "#!/usr/bin/env gnuplot\n";
    s << "# " << title << " — generated by qbatt " << kEngineVersion << "\n";
    s << "set datafile separator ','\n";
    s << "set key autotitle columnhead\n";
    s << "set datafile missing 'nan'\n";
    s << "set term pngcairo size " << (n_plotted == 2 && n_family == 1 ? 2040 : 900)
      << ",640\n";
    s << "set output '" << png << "'\n";

    if (n_plotted == 1) {
        const auto& x_axis = axes[static_cast<std::size_t>(n_family)];
        s << "set xlabel '" << x_axis.name << "'\n";
        s << "set ylabel 'W'\n";
        s << "set grid\n";
        if (n_family == 0) {
            s << "plot '" << csv << "' using " << (n_family + 1) << ":" << w_col
              << " with lines lw 2 title 'W'\n";
        } else {
            s << "plot \\\n";
            const auto& fam = axes[0];
            for (std::size_t i = 0; i < fam.values.size(); ++i) {
                s << "  '" << csv << "' using (abs(column(1)-(" << format_double(fam.values[i])
                  << "))<1e-12 ? column(2) : NaN):" << w_col << " with lines lw 2 title '"
                  << fam.name << "=" << format_double(fam.values[i]) << "'";
                s << (i + 1 < fam.values.size() ? ", \\\n" : "\n");
            }
        }
    } else {
        const auto& x_axis = axes[static_cast<std::size_t>(n_family)];
        const auto& y_axis = axes[static_cast<std::size_t>(n_family) + 1];
        const int x_col = n_family + 1;
        const int y_col = n_family + 2;
        s << "set xlabel '" << x_axis.name << "'\n";
        s << "set ylabel '" << y_axis.name << "'\n";
        s << "set cblabel 'W'\n";
        if (n_family == 0) {
            s << "plot '" << csv << "' using " << x_col << ":" << y_col << ":" << w_col
              << " with image notitle\n";
        } else {
            const auto& fam = axes[0];
            const std::size_t block = x_axis.values.size() * y_axis.values.size();
            s << "set multiplot layout 1," << fam.values.size() << "\n";
            for (std::size_t i = 0; i < fam.values.size(); ++i) {
                const std::size_t first = i * block;
                const std::size_t last = first + block - 1;
                s << "set title '" << fam.name << "=" << format_double(fam.values[i]) << "'\n";
                s << "plot '" << csv << "' every ::" << first << "::" << last << " using "
                  << x_col << ":" << y_col << ":" << w_col << " with image notitle\n";
            }
            s << "unset multiplot\n";
        }
    }

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("emit_plot_script: cannot open '" + path + "' for writing");
    }
    out << s.str();
    if (!out.good()) {
        throw std::runtime_error("emit_plot_script: write to '" + path + "' failed");
    }
}

// -------------------------------- figure_config --------------------------------

SweepConfig figure_config(const std::string& name) {
    SweepConfig config;
    config.figure = name;
    if (name == "fig2a") {
        config.preset_name = "two_cell_fig2";
        config.axes.push_back(SweepAxis::list("T_R", {"T_R"}, {0.25, 0.5, 0.75, 1.0}, true));
        config.axes.push_back(SweepAxis::linspace("T_L", {"T_L"}, 0.0, 2.0, 81));
    } else if (name == "fig2b") {
        config.preset_name = "two_cell_fig2";
        config.axes.push_back(SweepAxis::list("T_L", {"T_L"}, {0.25, 0.5, 0.75, 1.0}, true));
        config.axes.push_back(SweepAxis::linspace("T_R", {"T_R"}, 0.0, 2.0, 81));
    } else if (name == "fig3") {
        config.preset_name = "two_cell_fig2";
        config.axes.push_back(SweepAxis::linspace("T_L", {"T_L"}, 0.0, 2.0, 81));
        config.axes.push_back(SweepAxis::linspace("T_R", {"T_R"}, 0.0, 2.0, 81));
    } else if (name == "fig4a") {
        config.preset_name = "three_cell_fig4";
        config.axes.push_back(SweepAxis::list("T_M", {"T_M"}, {0.0, 0.5, 1.0}, true));
        config.axes.push_back(SweepAxis::linspace("T_L", {"T_L"}, 0.0, 2.0, 81));
    } else if (name == "fig4b") {
        config.preset_name = "three_cell_fig4";
        config.axes.push_back(SweepAxis::list("T_M", {"T_M"}, {0.0, 0.5, 1.0}, true));
        config.axes.push_back(SweepAxis::linspace("T_R", {"T_R"}, 0.0, 2.0, 81));
    } else if (name == "fig5") {
        config.preset_name = "three_cell_fig4";
        config.axes.push_back(SweepAxis::list("T_M", {"T_M"}, {0.5, 0.75, 1.0}, true));
        config.axes.push_back(SweepAxis::linspace("T_R", {"T_R"}, 0.0, 2.0, 81));
        config.axes.push_back(SweepAxis::linspace("T_L", {"T_L"}, 0.0, 2.0, 81));
    } else if (name == "fig6") {
        config.preset_name = "three_cell_fig6";
        config.axes.push_back(SweepAxis::list("T_M", {"T_M"}, {0.0, 0.5, 1.0}, true));
        config.axes.push_back(SweepAxis::linspace(
            "lambda", {"lambda_LM", "lambda_LR", "lambda_MR"}, 0.0, 2.0, 101));
    } else {
        throw std::invalid_argument("figure_config: unknown figure '" + name + "'");
    }
    return config;
}

// --------------------------------- load_config ---------------------------------

namespace {

SweepAxis axis_from_json(const nlohmann::json& j) {
    std::vector<std::string> targets;
    if (j.at("targets").is_string()) {
        targets.push_back(j.at("targets").get<std::string>());
    } else {
        targets = j.at("targets").get<std::vector<std::string>>();
    }
    const std::string name =
        j.contains("name") ? j.at("name").get<std::string>() : join(targets, "+");
    const bool family = j.value("family", false);
    if (j.contains("values")) {
        return SweepAxis::list(name, targets, j.at("values").get<std::vector<double>>(),
                               family);
    }
    SweepAxis axis = SweepAxis::linspace(name, targets, j.at("min").get<double>(),
                                         j.at("max").get<double>(), j.at("points").get<int>());
    axis.family = family;
    return axis;
}

} // namespace

SweepConfig load_config(const std::string& path, const SweepConfig* base) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("load_config: cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("load_config: " + std::string(e.what()));
    }
    SweepConfig config = base != nullptr ? *base : SweepConfig{};
    try {
        if (j.contains("preset")) config.preset_name = j.at("preset").get<std::string>();
        if (j.contains("axes")) {
            config.axes.clear();
            for (const auto& ja : j.at("axes")) {
                config.axes.push_back(axis_from_json(ja));
            }
        }
        if (j.contains("fixed")) {
            config.fixed = j.at("fixed").get<std::map<std::string, double>>();
        }
        if (j.contains("solver")) {
            const auto& js = j.at("solver");
            config.solver.kappa = js.value("kappa", config.solver.kappa);
            config.solver.freq_tol = js.value("freq_tol", config.solver.freq_tol);
            config.solver.residual_tol = js.value("residual_tol", config.solver.residual_tol);
            config.solver.null_tol = js.value("null_tol", config.solver.null_tol);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("load_config: " + std::string(e.what()));
    }
    return config;
}

} // namespace qb
