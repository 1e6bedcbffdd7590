// steady_state.hpp — Fixed-point solvers for the dissipative generator and the
// RK4 time-integration oracle used to cross-validate them.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

#include "qb/lindblad.hpp"

namespace qb {

// -------------------------------- Errors --------------------------------------

struct NonUniqueSteadyState : std::runtime_error {
    int null_dim;
    explicit NonUniqueSteadyState(int dim)
        : std::runtime_error("steady_state: non-unique steady state, null-space dimension " +
                             std::to_string(dim)),
          null_dim(dim) {}
};

struct ConvergenceError : std::runtime_error {
    double residual;
    explicit ConvergenceError(double res)
        : std::runtime_error("steady_state: residual tolerance not met, achieved " +
                             std::to_string(res)),
          residual(res) {}
};

struct IntegrationError : std::runtime_error {
    double drift;
    explicit IntegrationError(double d)
        : std::runtime_error("evolve: trace drift " + std::to_string(d) +
                             " exceeds tolerance, step too large"),
          drift(d) {}
};

// ----------------------------- Solver options ---------------------------------

enum class SolverBackend { svd_null_space, least_squares };

struct SolverOptions {
    SolverBackend backend = SolverBackend::svd_null_space;
    double residual_tol = 1e-10;  // required ||L vec(rho)||_2
    double null_tol = 1e-8;       // singular values below this count as zero
};

// ------------------------------ State helpers ---------------------------------

inline double trace_distance(const Matrix& a, const Matrix& b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double min_eigenvalue(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

namespace detail {

// Hermitize and normalize a null-space candidate into a unit-trace state.
inline Matrix finalize_state(Matrix rho) {
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-14) {
        throw std::runtime_error("steady_state: null vector has vanishing trace");
    }
    rho /= tr;
    return 0.5 * (rho + rho.adjoint()).eval();
}

} // namespace detail

// ------------------------------ Steady state ----------------------------------

// Unique trace-one fixed point of L. Backends: null-space extraction via SVD,
// or least squares on the system augmented with the trace-one row; both
// finish by Hermitizing and renormalizing. Degenerate null spaces are an
// error, never silently resolved.
inline Matrix steady_state(const Superoperator& l, const SolverOptions& opts = {}) {
    const Eigen::Index d = l.dim;
    const Eigen::Index d2 = d * d;
    Matrix rho;
    if (opts.backend == SolverBackend::svd_null_space) {
        Eigen::JacobiSVD<Matrix> svd(l.mat, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int null_dim = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) < opts.null_tol) ++null_dim;
        }
        if (null_dim != 1) throw NonUniqueSteadyState(null_dim);
        rho = detail::finalize_state(unvec(svd.matrixV().col(d2 - 1), d));
    } else {
        Matrix sys(d2 + 1, d2);
        sys.topRows(d2) = l.mat;
        sys.row(d2).setZero();
        for (Eigen::Index i = 0; i < d; ++i) sys(d2, i * d + i) = 1.0;
        Vector rhs = Vector::Zero(d2 + 1);
        rhs(d2) = 1.0;
        const Vector sol = sys.colPivHouseholderQr().solve(rhs);
        rho = detail::finalize_state(unvec(sol, d));
    }
    const double residual = (l.mat * vec(rho)).norm();
    if (residual > opts.residual_tol) throw ConvergenceError(residual);
    return rho;
}

// --------------------------- Time-evolution oracle -----------------------------

// Fixed-step RK4 on vec(rho_dot) = L vec(rho). Independent of the algebraic
// solvers; used to confirm their fixed points.
inline Matrix evolve(const Matrix& rho0, const Superoperator& l, double t_final, double dt,
                     double drift_tol = 1e-6) {
    if (dt <= 0.0 || t_final <= 0.0) {
        throw std::invalid_argument("evolve: t_final and dt must be positive");
    }
    Vector v = vec(rho0);
    const auto n_steps = static_cast<long>(std::ceil(t_final / dt));
    const double h = t_final / static_cast<double>(n_steps);
    Vector k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
    for (long s = 0; s < n_steps; ++s) {
        k1.noalias() = l.mat * v;
        k2.noalias() = l.mat * (v + 0.5 * h * k1);
        k3.noalias() = l.mat * (v + 0.5 * h * k2);
        k4.noalias() = l.mat * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    Matrix rho = unvec(v, l.dim);
    const double drift = std::abs(rho.trace() - Complex{1.0, 0.0});
    if (!(drift <= drift_tol)) throw IntegrationError(drift);  // catches NaN too
    return rho;
}

// Integration horizon long enough for the slowest relaxation mode: relaxation
// rates scale with kappa * J(omega), so 50 / (kappa * min positive gap) bounds
// the transient for every parameter set the harness visits.
inline double default_horizon(const SystemSpec& spec, const Spectrum& sp) {
    double min_gap = 0.0;
    for (const auto& cls : sp.bohr) {
        bool couples = false;
        for (int site = 0; site < spec.n_cells && !couples; ++site) {
            couples = jump_operator(sp, site, cls.omega).cwiseAbs().maxCoeff() > 0.0;
        }
        if (couples && (min_gap == 0.0 || cls.omega < min_gap)) min_gap = cls.omega;
    }
    if (min_gap == 0.0) {
        throw std::runtime_error("default_horizon: no dissipative transition present");
    }
    return 50.0 / (spec.kappa * min_gap);
}

// Step size keeping ||L|| * dt < 0.1 (infinity norm bounds the spectral radius).
inline double stable_timestep(const Superoperator& l) {
    const double norm_inf = l.mat.cwiseAbs().rowwise().sum().maxCoeff();
    return 0.1 / norm_inf;
}

// ------------------------------- Gibbs state -----------------------------------

// e^{-H/T} / Z via the eigendecomposition of H, exponentials shifted by the
// ground energy for overflow safety.
inline Matrix gibbs_state(const Matrix& h, double temperature) {
    if (temperature <= 0.0) {
        throw std::invalid_argument("gibbs_state: temperature must be positive");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("gibbs_state: eigendecomposition failed");
    }
    const Eigen::VectorXd shifted =
        ((es.eigenvalues().array() - es.eigenvalues().minCoeff()) / -temperature).exp();
    const Eigen::VectorXd weights = shifted / shifted.sum();
    return es.eigenvectors() * weights.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

} // namespace qb
