// ergotropy.hpp — Internal energy, passive states, and the maximum unitarily
// extractable work of a state relative to the system Hamiltonian.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

#include "qb/spin_ops.hpp"

namespace qb {

inline double internal_energy(const Matrix& rho, const Matrix& h) {
    if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
        throw std::invalid_argument("internal_energy: dimension mismatch");
    }
    return (rho * h).trace().real();
}

struct ErgotropyReport {
    double internal_energy = 0.0;   // tr(rho H)
    double passive_energy = 0.0;    // tr(pi H)
    double ergotropy = 0.0;         // difference of the two
    Eigen::VectorXd populations;    // eigenvalues of rho, descending
    double clamped_weight = 0.0;    // negative weight zeroed by round-off clamping
};

namespace detail {

// Eigenvalues of rho sorted descending, with round-off negatives in
// [-1e-8, 0) clamped to zero and the vector renormalized. Genuine positivity
// violations indicate an upstream bug and are rejected.
inline Eigen::VectorXd clamped_populations(const Matrix& rho, double* clamped_weight) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    Eigen::VectorXd p = es.eigenvalues().reverse();
    double clamped = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < -1e-8) {
            throw std::invalid_argument("ergotropy: density matrix has negative eigenvalue");
        }
        if (p(i) < 0.0) {
            clamped -= p(i);
            p(i) = 0.0;
        }
    }
    p /= p.sum();
    if (clamped_weight != nullptr) *clamped_weight = clamped;
    return p;
}

} // namespace detail

// Passive state: eigenvalues of rho sorted descending placed on the
// H-eigenvectors sorted by ascending energy. Ties are broken by index order;
// the passive energy is unaffected by the choice within degenerate blocks.
inline Matrix passive_state(const Matrix& rho, const Matrix& h) {
    if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
        throw std::invalid_argument("passive_state: dimension mismatch");
    }
    const Eigen::VectorXd populations = detail::clamped_populations(rho, nullptr);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    return es.eigenvectors() * populations.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

// W = tr(rho H) - tr(pi H).
inline ErgotropyReport ergotropy(const Matrix& rho, const Matrix& h) {
    if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
        throw std::invalid_argument("ergotropy: dimension mismatch");
    }
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-8) {
        throw std::invalid_argument("ergotropy: density matrix trace is not 1");
    }
    ErgotropyReport report;
    report.populations = detail::clamped_populations(rho, &report.clamped_weight);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    report.internal_energy = internal_energy(rho, h);
    report.passive_energy = report.populations.dot(es.eigenvalues());
    report.ergotropy = report.internal_energy - report.passive_energy;
    return report;
}

} // namespace qb
