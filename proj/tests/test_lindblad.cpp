#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qb/lindblad.hpp"
#include "test_support.hpp"

using namespace qb;

TEST_CASE("thermal occupation values") {
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);
    CHECK(thermal_occupation(1.0, 1.0) ==
          doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
    const double high_t = thermal_occupation(1.0, 10.0);
    CHECK(high_t == doctest::Approx(9.50833).epsilon(1e-5));
    // high-temperature expansion n ~ T/omega - 1/2
    CHECK(high_t == doctest::Approx(10.0 - 0.5).epsilon(1e-2));
    CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(thermal_occupation(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("spectral density is linear") {
    CHECK(spectral_density(1.0, 0.05) == doctest::Approx(0.05));
    CHECK(spectral_density(0.9, 0.05) == doctest::Approx(0.045));
    CHECK(spectral_density(0.0, 0.3) == 0.0);
}

TEST_CASE("vec and unvec round-trip with column stacking") {
    std::mt19937 rng(31);
    const Matrix m = qbtest::random_matrix(rng, 4);
    const Vector v = vec(m);
    // column stacking: entry (i, j) lands at j*dim + i
    CHECK(v(1) == m(1, 0));
    CHECK(v(4) == m(0, 1));
    CHECK((unvec(v, 4) - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(unvec(v, 3), std::invalid_argument);
}

TEST_CASE("two-cell jump operator at 1.1 lowers |uu> to |du>") {
    const Spectrum sp = spectrum(build_hamiltonian(preset(Preset::two_cell_fig2)));
    const Matrix a = jump_operator(sp, 0, 1.1);
    // single unit entry: row |du> (index 2), column |uu> (index 0)
    CHECK(std::abs(a(2, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    int nonzeros = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (std::abs(a(i, j)) > 1e-14) ++nonzeros;
        }
    }
    CHECK(nonzeros == 1);
}

TEST_CASE("jump operators have zero diagonal") {
    const Spectrum sp = spectrum(build_hamiltonian(preset(Preset::three_cell_fig4)));
    for (int site = 0; site < 3; ++site) {
        for (const auto& cls : sp.bohr) {
            const Matrix a = jump_operator(sp, site, cls.omega);
            CHECK(a.diagonal().cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("uncoupled two-cell jump operator covers both spectator sectors") {
    SystemSpec spec = SystemSpec::make(2);
    const Spectrum sp = spectrum(build_hamiltonian(spec));
    const Matrix a = jump_operator(sp, 0, 1.0);
    int unit_entries = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double mag = std::abs(a(i, j));
            if (mag > 1e-14) {
                CHECK(mag == doctest::Approx(1.0).epsilon(1e-12));
                ++unit_entries;
            }
        }
    }
    CHECK(unit_entries == 2);
}

TEST_CASE("jump operator rejects frequencies outside the table") {
    const Spectrum sp = spectrum(build_hamiltonian(preset(Preset::two_cell_fig2)));
    CHECK_THROWS_AS(jump_operator(sp, 0, 0.5), std::invalid_argument);
}

TEST_CASE("zero-temperature dissipator has no excitation part") {
    const SystemSpec spec = preset(Preset::two_cell_fig2);  // T_L = T_R = 0
    const Spectrum sp = spectrum(build_hamiltonian(spec));
    const Superoperator diss = dissipator(spec, sp, 0);
    Matrix emission_only = Matrix::Zero(16, 16);
    for (const auto& cls : sp.bohr) {
        const Matrix a = jump_operator(sp, 0, cls.omega);
        if (a.cwiseAbs().maxCoeff() == 0.0) continue;
        emission_only += spectral_density(cls.omega, spec.kappa) * lindblad_term(a);
    }
    CHECK((diss.mat - emission_only).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("detailed balance: downward/upward prefactors satisfy e^{omega/T}") {
    // uncoupled cell so the rate entries can be read off the superoperator:
    // the population-transfer element |du><du| <- |uu><uu| carries the full rate
    const double temperature = 0.5;
    SystemSpec spec = SystemSpec::make(2);
    spec.bath_temp = {temperature, 0.0};
    const Spectrum sp = spectrum(build_hamiltonian(spec));
    const Superoperator diss = dissipator(spec, sp, 0);
    // vec index of |i><i| is i*4+i; site-0 flip connects |uu>(0) and |du>(2)
    const double down = diss.mat(2 * 4 + 2, 0).real();
    const double up = diss.mat(0, 2 * 4 + 2).real();
    CHECK(down / up == doctest::Approx(std::exp(1.0 / temperature)).epsilon(1e-12));
    CHECK(down / up == doctest::Approx(7.389056).epsilon(1e-6));

    // per assembled class, the same ratio by construction
    for (const auto& cls : sp.bohr) {
        const double n = thermal_occupation(cls.omega, temperature);
        if (n > 0.0) {
            CHECK((1.0 + n) / n ==
                  doctest::Approx(std::exp(cls.omega / temperature)).epsilon(1e-12));
        }
    }
}

TEST_CASE("each dissipator preserves the trace on its own") {
    std::mt19937 rng(44);
    const SystemSpec spec = preset(Preset::three_cell_fig4, {{"T_L", 1.0}, {"T_M", 0.5}});
    const Spectrum sp = spectrum(build_hamiltonian(spec));
    for (int site = 0; site < 3; ++site) {
        const Superoperator diss = dissipator(spec, sp, site);
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix rho = qbtest::random_hermitian(rng, 8);
            CHECK(std::abs(diss.apply(rho).trace()) < 1e-12);
        }
    }
}

TEST_CASE("liouvillian dimensions") {
    const Superoperator two = liouvillian(preset(Preset::two_cell_fig2));
    CHECK(two.dim == 4);
    CHECK(two.mat.rows() == 16);
    CHECK(two.mat.cols() == 16);
    const Superoperator three = liouvillian(preset(Preset::three_cell_fig4));
    CHECK(three.dim == 8);
    CHECK(three.mat.rows() == 64);
    CHECK(three.mat.cols() == 64);
}

TEST_CASE("generator preserves trace") {
    std::mt19937 rng(41);
    for (auto p : {Preset::two_cell_fig2, Preset::three_cell_fig4}) {
        const SystemSpec spec = preset(p, {{"T_L", 0.8}, {"T_R", 0.3}});
        const Superoperator l = liouvillian(spec);
        // trace functional annihilates the generator from the left
        CHECK((vec(identity(l.dim)).adjoint() * l.mat).cwiseAbs().maxCoeff() < 1e-10);
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix rho = qbtest::random_hermitian(rng, l.dim);
            CHECK(std::abs(l.apply(rho).trace()) < 1e-10);
        }
    }
}

TEST_CASE("generator preserves Hermiticity") {
    std::mt19937 rng(42);
    const Superoperator l =
        liouvillian(preset(Preset::three_cell_fig4, {{"T_L", 1.0}, {"T_M", 0.2}}));
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix image = l.apply(qbtest::random_hermitian(rng, l.dim));
        CHECK((image - image.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("unitary part vanishes on diagonal states") {
    const SystemSpec spec = preset(Preset::two_cell_fig2);
    const Matrix h = build_hamiltonian(spec);
    const Matrix id = identity(4);
    const Matrix unitary = -kImag * (kron(id, h) - kron(h.transpose(), id));
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Matrix rho = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) rho(i, i) = dist(rng);
    CHECK((unitary * vec(rho)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("equal-temperature Gibbs state is a fixed point") {
    const double temperature = 0.6;
    for (auto p : {Preset::two_cell_fig2, Preset::three_cell_fig4}) {
        SystemSpec spec = preset(p);
        for (auto& t : spec.bath_temp) t = temperature;
        const Matrix h = build_hamiltonian(spec);
        const Superoperator l = liouvillian(spec);
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const Eigen::VectorXd boltz =
            ((es.eigenvalues().array() - es.eigenvalues().minCoeff()) / -temperature).exp();
        const Matrix gibbs = es.eigenvectors() *
                             (boltz / boltz.sum()).cast<Complex>().asDiagonal() *
                             es.eigenvectors().adjoint();
        CHECK((l.mat * vec(gibbs)).norm() < 1e-10);
    }
}

TEST_CASE("liouvillian spectrum: one zero mode, no positive real parts") {
    const Superoperator l =
        liouvillian(preset(Preset::two_cell_fig2, {{"T_L", 1.2}, {"T_R", 0.4}}));
    Eigen::ComplexEigenSolver<Matrix> es(l.mat);
    int near_zero = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const Complex ev = es.eigenvalues()(i);
        CHECK(ev.real() <= 1e-10);
        if (std::abs(ev) < 1e-10) ++near_zero;
    }
    CHECK(near_zero >= 1);
}
