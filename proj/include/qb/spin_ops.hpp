// spin_ops.hpp — Pauli matrices, Kronecker products, and multi-qubit operator embedding

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

enum class PauliAxis { x, y, z };

// 2x2 Pauli matrix in the (|up>, |down>) basis, sigma_z|up> = +|up>.
inline Matrix pauli(PauliAxis axis) {
    Matrix s = Matrix::Zero(2, 2);
    switch (axis) {
    case PauliAxis::x:
        s(0, 1) = 1.0;
        s(1, 0) = 1.0;
        break;
    case PauliAxis::y:
        s(0, 1) = -kImag;
        s(1, 0) = kImag;
        break;
    case PauliAxis::z:
        s(0, 0) = 1.0;
        s(1, 1) = -1.0;
        break;
    }
    return s;
}

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

// Standard Kronecker product, dim = a.dim * b.dim.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// I (x) ... (x) op (x) ... (x) I with op at position `site`; site 0 is the
// leftmost tensor factor (cell L).
inline Matrix embed(const Matrix& op, int site, int n_sites) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("embed: operator must be 2x2");
    }
    if (n_sites != 2 && n_sites != 3) {
        throw std::invalid_argument("embed: n_sites must be 2 or 3");
    }
    if (site < 0 || site >= n_sites) {
        throw std::invalid_argument("embed: site out of range");
    }
    Matrix out = (site == 0) ? op : Matrix(identity(2));
    for (int k = 1; k < n_sites; ++k) {
        out = kron(out, (k == site) ? op : Matrix(identity(2)));
    }
    return out;
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

} // namespace qb
