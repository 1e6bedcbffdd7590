#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qb/spin_ops.hpp"
#include "test_support.hpp"

using namespace qb;

TEST_CASE("pauli matrices match their definitions") {
    const Matrix sz = pauli(PauliAxis::z);
    CHECK(sz(0, 0) == Complex{1.0, 0.0});
    CHECK(sz(1, 1) == Complex{-1.0, 0.0});
    CHECK(sz(0, 1) == Complex{0.0, 0.0});

    const Matrix sx = pauli(PauliAxis::x);
    CHECK(sx(0, 1) == Complex{1.0, 0.0});
    CHECK(sx(1, 0) == Complex{1.0, 0.0});
    CHECK(sx(0, 0) == Complex{0.0, 0.0});

    const Matrix sy = pauli(PauliAxis::y);
    CHECK(sy(0, 1) == -kImag);
    CHECK(sy(1, 0) == kImag);
}

TEST_CASE("pauli matrices are Hermitian, traceless, and square to identity") {
    for (auto axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
        const Matrix s = pauli(axis);
        CHECK(is_hermitian(s));
        CHECK(std::abs(s.trace()) < 1e-15);
        CHECK((s * s - identity(2)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("embed places the operator at the requested site") {
    const Matrix sz = pauli(PauliAxis::z);

    const Matrix z0 = embed(sz, 0, 2);
    const Eigen::Vector4d d0{1.0, 1.0, -1.0, -1.0};
    CHECK((z0.diagonal().real() - d0).cwiseAbs().maxCoeff() < 1e-15);

    const Matrix z1 = embed(sz, 1, 2);
    const Eigen::Vector4d d1{1.0, -1.0, 1.0, -1.0};
    CHECK((z1.diagonal().real() - d1).cwiseAbs().maxCoeff() < 1e-15);

    // sigma_x on site 2 flips the rightmost spin: |uuu> -> |uud>
    const Matrix x2 = embed(pauli(PauliAxis::x), 2, 3);
    Vector up = Vector::Zero(8);
    up(0) = 1.0;
    const Vector flipped = x2 * up;
    CHECK(std::abs(flipped(1) - Complex{1.0, 0.0}) < 1e-15);
    CHECK(flipped.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("embed rejects out-of-range sites") {
    CHECK_THROWS_AS(embed(pauli(PauliAxis::x), 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(embed(pauli(PauliAxis::x), -1, 2), std::invalid_argument);
    CHECK_THROWS_AS(embed(pauli(PauliAxis::x), 0, 4), std::invalid_argument);
}

TEST_CASE("kron identities") {
    CHECK((kron(identity(2), identity(2)) - identity(4)).cwiseAbs().maxCoeff() == 0.0);

    const Matrix zz = kron(pauli(PauliAxis::z), pauli(PauliAxis::z));
    const Eigen::Vector4d signs{1.0, -1.0, -1.0, 1.0};
    CHECK((zz.diagonal().real() - signs).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("trace of kron factorizes") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = qbtest::random_matrix(rng, 2);
        const Matrix b = qbtest::random_matrix(rng, 2);
        const Complex expected = a.trace() * b.trace();
        CHECK(std::abs(kron(a, b).trace() - expected) < 1e-13);
    }
}

TEST_CASE("kron is associative") {
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> unit(-0.7, 0.7);
    auto bounded = [&] {
        Matrix m(2, 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) m(i, j) = Complex{unit(rng), unit(rng)};
        }
        return m;
    };
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = bounded();
        const Matrix b = bounded();
        const Matrix c = bounded();
        const Matrix lhs = kron(kron(a, b), c);
        const Matrix rhs = kron(a, kron(b, c));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("embedded single-site operators on distinct sites commute") {
    std::mt19937 rng(23);
    for (int n_sites : {2, 3}) {
        for (int i = 0; i < n_sites; ++i) {
            for (int j = 0; j < n_sites; ++j) {
                if (i == j) continue;
                const Matrix a = embed(qbtest::random_matrix(rng, 2), i, n_sites);
                const Matrix b = embed(qbtest::random_matrix(rng, 2), j, n_sites);
                CHECK((a * b - b * a).norm() < 1e-12);
            }
        }
    }
}
