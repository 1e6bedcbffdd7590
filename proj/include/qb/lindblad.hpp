// lindblad.hpp — Frequency-resolved jump operators, thermal rates, per-bath
// dissipators, and the vectorized Liouvillian of the global master equation.
//
// Vectorization is column-stacking throughout: vec(A X B) = (B^T kron A) vec(X),
// so the unitary part reads -i (I kron H - H^T kron I).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "qb/model.hpp"
#include "qb/spin_ops.hpp"

namespace qb {

// ------------------------------ Thermal rates --------------------------------

// Bose-Einstein occupation n(omega, T) = 1 / (e^{omega/T} - 1); the T = 0
// limit is exactly 0.
inline double thermal_occupation(double omega, double temperature) {
    if (omega <= 0.0) {
        throw std::invalid_argument("thermal_occupation: omega must be positive");
    }
    if (temperature < 0.0) {
        throw std::invalid_argument("thermal_occupation: temperature must be nonnegative");
    }
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

// Ohmic spectral density J(omega) = kappa * omega.
inline double spectral_density(double omega, double kappa) {
    return kappa * omega;
}

// ---------------------------- Vectorization ----------------------------------

inline Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index dim) {
    if (v.size() != dim * dim) {
        throw std::invalid_argument("unvec: size is not dim^2");
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// ----------------------------- Superoperator ---------------------------------

// Dense generator acting on column-stacked density matrices. `mat` has
// dimension dim^2 x dim^2 for Hilbert dimension `dim`.
struct Superoperator {
    Eigen::Index dim = 0;
    Matrix mat;

    Matrix apply(const Matrix& rho) const { return unvec(mat * vec(rho), dim); }
};

// Lindblad superoperator of a single jump operator:
//   A rho A^dag - 1/2 {A^dag A, rho}  in vectorized form.
inline Matrix lindblad_term(const Matrix& a) {
    const Eigen::Index d = a.rows();
    const Matrix gram = a.adjoint() * a;
    const Matrix id = identity(d);
    return kron(a.conjugate(), a) -
           0.5 * (kron(id, gram) + kron(gram.transpose(), id));
}

// ----------------------------- Jump operators --------------------------------

// A_i(omega) for the transition class at `omega`: the eigenprojected part of
// sigma_x^site connecting pairs with gap omega. Lowers energy by omega, so at
// T = 0 only emission survives and the steady state is the ground state.
inline Matrix jump_operator(const Spectrum& sp, int site, double omega) {
    const BohrClass* cls = sp.find_class(omega);
    if (cls == nullptr) {
        throw std::invalid_argument("jump_operator: omega not in Bohr table");
    }
    const Eigen::Index d = sp.energies.size();
    int n_sites = 0;
    while ((Eigen::Index{1} << n_sites) < d) ++n_sites;
    const Matrix sx = embed(pauli(PauliAxis::x), site, n_sites);

    Matrix a = Matrix::Zero(d, d);
    for (const auto& [hi, lo] : cls->pairs) {
        const Complex amp = (sp.states.col(lo).adjoint() * sx * sp.states.col(hi)).value();
        if (amp != Complex{0.0, 0.0}) {
            a += amp * (sp.states.col(lo) * sp.states.col(hi).adjoint());
        }
    }
    return a;
}

// ------------------------------- Dissipators ---------------------------------

// Per-bath dissipator: sum over positive transition frequencies of
//   J(omega) [ (1 + n_i(omega)) * D[A_i(omega)] + n_i(omega) * D[A_i^dag(omega)] ].
inline Superoperator dissipator(const SystemSpec& spec, const Spectrum& sp, int site) {
    if (site < 0 || site >= spec.n_cells) {
        throw std::invalid_argument("dissipator: site out of range");
    }
    const Eigen::Index d = sp.energies.size();
    Superoperator diss{d, Matrix::Zero(d * d, d * d)};
    const double temperature = spec.bath_temp[static_cast<std::size_t>(site)];
    for (const auto& cls : sp.bohr) {
        const Matrix a = jump_operator(sp, site, cls.omega);
        if (a.cwiseAbs().maxCoeff() == 0.0) continue;
        const double j = spectral_density(cls.omega, spec.kappa);
        const double n = thermal_occupation(cls.omega, temperature);
        diss.mat += j * (1.0 + n) * lindblad_term(a);
        if (n > 0.0) {
            diss.mat += j * n * lindblad_term(a.adjoint());
        }
    }
    return diss;
}

// ------------------------------- Liouvillian ---------------------------------

// Full generator: -i [H, .] plus one dissipator per cell.
inline Superoperator liouvillian(const SystemSpec& spec, const Spectrum& sp) {
    const Eigen::Index d = sp.energies.size();
    if (d != spec.dim()) {
        throw std::invalid_argument("liouvillian: spectrum does not match the spec dimension");
    }
    const Matrix h =
        sp.states * sp.energies.cast<Complex>().asDiagonal() * sp.states.adjoint();
    const Matrix id = identity(d);
    Superoperator l{d, Matrix::Zero(d * d, d * d)};
    l.mat = -kImag * (kron(id, h) - kron(h.transpose(), id));
    for (int site = 0; site < spec.n_cells; ++site) {
        l.mat += dissipator(spec, sp, site).mat;
    }
    return l;
}

inline Superoperator liouvillian(const SystemSpec& spec, double freq_tol = kDefaultFreqTol) {
    return liouvillian(spec, spectrum(build_hamiltonian(spec), freq_tol));
}

} // namespace qb
