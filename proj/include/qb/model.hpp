// model.hpp — System parameterization, Hamiltonian assembly, eigendecomposition,
// and the positive Bohr-frequency transition table.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qb/spin_ops.hpp"

namespace qb {

inline constexpr double kDefaultFreqTol = 1e-9;
inline constexpr double kDefaultKappa = 0.05;

// ------------------------------- SystemSpec ---------------------------------

// Physical parameterization of an n-cell battery (hbar = k_B = 1, energies in
// units of the cell frequency omega). Cells are labeled L, M, R; the two-cell
// configuration drops M entirely and keeps L, R.
struct SystemSpec {
    int n_cells = 3;
    std::vector<double> omega;      // per-cell transition frequency
    std::vector<double> bath_temp;  // per-cell bath temperature
    Eigen::MatrixXd lambda;         // symmetric coupling map, diagonal unused
    double kappa = kDefaultKappa;   // dimensionless Ohmic constant

    static SystemSpec make(int n_cells) {
        SystemSpec s;
        s.n_cells = n_cells;
        s.omega.assign(static_cast<std::size_t>(n_cells), 1.0);
        s.bath_temp.assign(static_cast<std::size_t>(n_cells), 0.0);
        s.lambda = Eigen::MatrixXd::Zero(n_cells, n_cells);
        return s;
    }

    int dim() const { return 1 << n_cells; }

    void set_coupling(int i, int j, double value) {
        lambda(i, j) = value;
        lambda(j, i) = value;
    }

    // A cell with zero frequency is admissible only when fully decoupled; it
    // then contributes no positive transition frequency and no dissipator.
    void validate() const {
        if (n_cells != 2 && n_cells != 3) {
            throw std::invalid_argument("SystemSpec: n_cells must be 2 or 3");
        }
        const auto n = static_cast<std::size_t>(n_cells);
        if (omega.size() != n || bath_temp.size() != n) {
            throw std::invalid_argument("SystemSpec: omega/bath_temp size mismatch");
        }
        if (lambda.rows() != n_cells || lambda.cols() != n_cells) {
            throw std::invalid_argument("SystemSpec: lambda must be n_cells x n_cells");
        }
        if (!lambda.isApprox(lambda.transpose(), 0.0)) {
            throw std::invalid_argument("SystemSpec: lambda must be symmetric");
        }
        if (kappa <= 0.0) {
            throw std::invalid_argument("SystemSpec: kappa must be positive");
        }
        for (int i = 0; i < n_cells; ++i) {
            if (omega[static_cast<std::size_t>(i)] < 0.0) {
                throw std::invalid_argument("SystemSpec: omega must be nonnegative");
            }
            if (bath_temp[static_cast<std::size_t>(i)] < 0.0) {
                throw std::invalid_argument("SystemSpec: bath temperature must be nonnegative");
            }
            if (omega[static_cast<std::size_t>(i)] == 0.0) {
                for (int j = 0; j < n_cells; ++j) {
                    if (j != i && lambda(i, j) != 0.0) {
                        throw std::invalid_argument(
                            "SystemSpec: zero-frequency cell must be decoupled");
                    }
                }
            }
        }
    }
};

// Cell labels in tensor order (leftmost factor first).
inline const std::vector<std::string>& cell_names(int n_cells) {
    static const std::vector<std::string> two{"L", "R"};
    static const std::vector<std::string> three{"L", "M", "R"};
    if (n_cells == 2) return two;
    if (n_cells == 3) return three;
    throw std::invalid_argument("cell_names: n_cells must be 2 or 3");
}

// ----------------------------- Parameter paths ------------------------------

// Named scalar fields of a SystemSpec, addressable from sweep configs and CLI
// overrides: omega_L, T_M, lambda_LR, kappa, ...

inline std::vector<std::string> param_paths(int n_cells) {
    const auto& names = cell_names(n_cells);
    std::vector<std::string> out;
    for (const auto& c : names) out.push_back("omega_" + c);
    for (const auto& c : names) out.push_back("T_" + c);
    for (int i = 0; i < n_cells; ++i) {
        for (int j = i + 1; j < n_cells; ++j) {
            out.push_back("lambda_" + names[static_cast<std::size_t>(i)] +
                          names[static_cast<std::size_t>(j)]);
        }
    }
    out.push_back("kappa");
    return out;
}

inline void set_param(SystemSpec& spec, const std::string& path, double value) {
    const auto& names = cell_names(spec.n_cells);
    auto cell_index = [&](const std::string& c) -> int {
        for (int i = 0; i < spec.n_cells; ++i) {
            if (names[static_cast<std::size_t>(i)] == c) return i;
        }
        return -1;
    };
    if (path == "kappa") {
        spec.kappa = value;
        return;
    }
    if (path.rfind("omega_", 0) == 0) {
        int i = cell_index(path.substr(6));
        if (i >= 0) {
            spec.omega[static_cast<std::size_t>(i)] = value;
            return;
        }
    }
    if (path.rfind("T_", 0) == 0) {
        int i = cell_index(path.substr(2));
        if (i >= 0) {
            spec.bath_temp[static_cast<std::size_t>(i)] = value;
            return;
        }
    }
    if (path.rfind("lambda_", 0) == 0 && path.size() == 9) {
        int i = cell_index(path.substr(7, 1));
        int j = cell_index(path.substr(8, 1));
        if (i >= 0 && j >= 0 && i != j) {
            spec.set_coupling(i, j, value);
            return;
        }
    }
    throw std::invalid_argument("set_param: unknown parameter path '" + path + "'");
}

// ----------------------------- Hamiltonian ----------------------------------

// H = sum_i (omega_i/2) sigma_z^i + sum_{i<j} (lambda_ij/2) sigma_z^i sigma_z^j.
// Diagonal in the computational basis; index 0 is |up...up>.
inline Matrix build_hamiltonian(const SystemSpec& spec) {
    spec.validate();
    const Matrix sz = pauli(PauliAxis::z);
    Matrix h = Matrix::Zero(spec.dim(), spec.dim());
    for (int i = 0; i < spec.n_cells; ++i) {
        h += 0.5 * spec.omega[static_cast<std::size_t>(i)] * embed(sz, i, spec.n_cells);
    }
    for (int i = 0; i < spec.n_cells; ++i) {
        for (int j = i + 1; j < spec.n_cells; ++j) {
            if (spec.lambda(i, j) != 0.0) {
                h += 0.5 * spec.lambda(i, j) *
                     (embed(sz, i, spec.n_cells) * embed(sz, j, spec.n_cells));
            }
        }
    }
    return h;
}

// ------------------------------- Spectrum -----------------------------------

// One equivalence class of transitions: ordered eigenpairs (hi, lo) whose gap
// energies[hi] - energies[lo] agree with `omega` within the grouping tolerance.
struct BohrClass {
    double omega = 0.0;
    std::vector<std::pair<int, int>> pairs;  // (hi, lo), energies[hi] > energies[lo]
};

struct Spectrum {
    Eigen::VectorXd energies;      // ascending
    Matrix states;                 // eigenvectors as columns, same order
    double freq_tol = kDefaultFreqTol;
    std::vector<BohrClass> bohr;   // ascending omega, all omega > freq_tol

    const BohrClass* find_class(double omega) const {
        for (const auto& cls : bohr) {
            if (std::abs(cls.omega - omega) <= freq_tol) return &cls;
        }
        return nullptr;
    }
};

// Full Hermitian eigendecomposition plus the positive Bohr-frequency table.
// Gaps within freq_tol of each other share a class; zero-frequency pairs
// (degenerate eigenstates) are excluded.
inline Spectrum spectrum(const Matrix& h, double freq_tol = kDefaultFreqTol) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("spectrum: Hamiltonian must be Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectrum: eigendecomposition failed");
    }
    Spectrum sp;
    sp.energies = solver.eigenvalues();
    sp.states = solver.eigenvectors();
    sp.freq_tol = freq_tol;

    struct Gap {
        double omega;
        int hi, lo;
    };
    std::vector<Gap> gaps;
    const int d = static_cast<int>(sp.energies.size());
    for (int k = 0; k < d; ++k) {
        for (int m = 0; m < d; ++m) {
            const double w = sp.energies(k) - sp.energies(m);
            if (w > freq_tol) gaps.push_back({w, k, m});
        }
    }
    std::sort(gaps.begin(), gaps.end(),
              [](const Gap& a, const Gap& b) { return a.omega < b.omega; });
    double class_start = 0.0;
    double class_sum = 0.0;
    for (const auto& g : gaps) {
        if (sp.bohr.empty() || g.omega - class_start > freq_tol) {
            if (!sp.bohr.empty()) {
                sp.bohr.back().omega =
                    class_sum / static_cast<double>(sp.bohr.back().pairs.size());
            }
            sp.bohr.push_back({0.0, {}});
            class_start = g.omega;
            class_sum = 0.0;
        }
        class_sum += g.omega;
        sp.bohr.back().pairs.emplace_back(g.hi, g.lo);
    }
    if (!sp.bohr.empty()) {
        sp.bohr.back().omega = class_sum / static_cast<double>(sp.bohr.back().pairs.size());
    }
    return sp;
}

// -------------------------------- Presets -----------------------------------

enum class Preset { two_cell_fig2, three_cell_fig4, three_cell_fig6 };

inline Preset preset_from_name(const std::string& name) {
    if (name == "two_cell_fig2") return Preset::two_cell_fig2;
    if (name == "three_cell_fig4") return Preset::three_cell_fig4;
    if (name == "three_cell_fig6") return Preset::three_cell_fig6;
    throw std::invalid_argument("preset: unknown preset '" + name + "'");
}

inline std::string preset_name(Preset p) {
    switch (p) {
    case Preset::two_cell_fig2: return "two_cell_fig2";
    case Preset::three_cell_fig4: return "three_cell_fig4";
    case Preset::three_cell_fig6: return "three_cell_fig6";
    }
    throw std::invalid_argument("preset_name: unknown preset");
}

// Parameter sets behind the sweep harness, omega = 1 as the energy unit.
// two_cell_fig2 is the genuine two-qubit model (the zero-frequency detached
// middle cell is dropped); its lambda_LR = 0.1 default mirrors the three-cell
// coupling and is flagged as an assumption in sweep metadata.
inline SystemSpec preset(Preset p, const std::map<std::string, double>& overrides = {}) {
    SystemSpec spec;
    switch (p) {
    case Preset::two_cell_fig2:
        spec = SystemSpec::make(2);
        spec.set_coupling(0, 1, 0.1);
        break;
    case Preset::three_cell_fig4:
        spec = SystemSpec::make(3);
        spec.set_coupling(0, 1, 0.1);
        spec.set_coupling(0, 2, 0.1);
        spec.set_coupling(1, 2, 0.1);
        spec.bath_temp = {0.0, 0.0, 0.0};
        break;
    case Preset::three_cell_fig6:
        spec = SystemSpec::make(3);
        spec.set_coupling(0, 1, 0.1);
        spec.set_coupling(0, 2, 0.1);
        spec.set_coupling(1, 2, 0.1);
        spec.bath_temp = {1.0, 0.0, 0.0};
        break;
    }
    for (const auto& [path, value] : overrides) {
        set_param(spec, path, value);
    }
    return spec;
}

inline SystemSpec preset(const std::string& name,
                         const std::map<std::string, double>& overrides = {}) {
    return preset(preset_from_name(name), overrides);
}

} // namespace qb
