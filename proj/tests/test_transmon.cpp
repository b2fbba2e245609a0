#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "sechsim/pulse.hpp"
#include "sechsim/transmon.hpp"

using namespace sechsim;
using cd = std::complex<double>;

TEST_CASE("two-level Hamiltonian on resonance") {
    TransmonParams p;
    p.n_levels = 2;
    p.delta = 0.0;
    const double env = kTwoPi * 20e6;
    const Eigen::MatrixXcd h = build_drive_frame_hamiltonian(p, env);
    CHECK(h(0, 0) == cd(0.0, 0.0));
    CHECK(h(1, 1) == cd(0.0, 0.0));
    CHECK(h(0, 1) == cd(env / 2.0, 0.0));
    CHECK(h(1, 0) == cd(env / 2.0, 0.0));
}

TEST_CASE("four-level diagonal carries detuning and anharmonicity") {
    TransmonParams p; // defaults: dim 4, alpha = 2*pi*200MHz
    p.delta = 0.0;
    const Eigen::MatrixXcd h = build_drive_frame_hamiltonian(p, 0.0);
    CHECK(h(0, 0).real() == 0.0);
    CHECK(h(1, 1).real() == 0.0);
    CHECK(h(2, 2).real() == -p.alpha);
    CHECK(h(3, 3).real() == -3.0 * p.alpha);

    p.delta = kTwoPi * 3e6;
    const Eigen::MatrixXcd hd = build_drive_frame_hamiltonian(p, 0.0);
    for (int n = 0; n < 4; ++n)
        CHECK(std::abs(hd(n, n).real() - (h(n, n).real() - n * p.delta)) < 1e-6);
}

TEST_CASE("ladder couplings scale as sqrt(n+1)") {
    TransmonParams p;
    p.n_levels = 3;
    const double env = 1e8;
    const Eigen::MatrixXcd h = build_drive_frame_hamiltonian(p, env);
    CHECK(std::abs(h(0, 1).real() - env / 2.0) < 1e-9);
    CHECK(std::abs(h(1, 2).real() - std::sqrt(2.0) * env / 2.0) < 1e-6);
    CHECK(h(0, 2) == cd(0.0, 0.0)); // no direct 0<->2 drive term
}

TEST_CASE("Hamiltonian is exactly Hermitian") {
    TransmonParams p;
    p.delta = kTwoPi * 7.3e6;
    const Eigen::MatrixXcd h = build_drive_frame_hamiltonian(p, 1.234e8);
    for (int i = 0; i < p.n_levels; ++i)
        for (int j = 0; j < p.n_levels; ++j)
            CHECK(h(i, j) == std::conj(h(j, i)));
}

TEST_CASE("two-level eigensplitting is the generalized Rabi rate") {
    TransmonParams p;
    p.n_levels = 2;
    p.delta = kTwoPi * 4e6;
    const double env = kTwoPi * 9e6;
    const Eigen::MatrixXcd h = build_drive_frame_hamiltonian(p, env);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const double split = es.eigenvalues()(1) - es.eigenvalues()(0);
    const double want = std::sqrt(p.delta * p.delta + env * env);
    CHECK(std::abs(split - want) < 1e-12 * want);
}

TEST_CASE("frame transform basics") {
    QuantumState s;
    s.rho = Eigen::MatrixXcd::Zero(2, 2);
    s.rho(0, 0) = 0.5;
    s.rho(1, 1) = 0.5;
    s.rho(0, 1) = cd(0.5, 0.0);
    s.rho(1, 0) = cd(0.5, 0.0);
    s.frame = Frame::QubitFrame;

    QuantumState d = enter_drive_frame(s);
    CHECK(d.frame == Frame::DriveFrame);
    CHECK((d.rho - s.rho).cwiseAbs().maxCoeff() == 0.0); // tag flip only
    CHECK_THROWS_AS(enter_drive_frame(d), std::invalid_argument);

    // delta = 0 or elapsed = 0: identity
    QuantumState q0 = to_qubit_frame(d, 0.0, 200e-9);
    CHECK(q0.frame == Frame::QubitFrame);
    CHECK((q0.rho - s.rho).cwiseAbs().maxCoeff() == 0.0);
    QuantumState q1 = to_qubit_frame(d, kTwoPi * 10e6, 0.0);
    CHECK((q1.rho - s.rho).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(to_qubit_frame(s, 0.0, 1e-9), std::invalid_argument);
}

TEST_CASE("frame rotation: delta*elapsed = 4*pi wraps to the start") {
    // |+> at delta = 2*pi*10 MHz for 200 ns accumulates azimuth 4*pi = 0
    QuantumState s;
    s.rho = Eigen::MatrixXcd::Constant(2, 2, cd(0.5, 0.0));
    s.frame = Frame::DriveFrame;
    QuantumState q = to_qubit_frame(s, kTwoPi * 10e6, 200e-9);
    const double azimuth = std::arg(q.rho(1, 0));
    CHECK(std::abs(azimuth) < 1e-12);
}

TEST_CASE("frame rotation preserves trace, hermiticity, spectrum") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd a(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) a(i, j) = cd(u(rng), u(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();

    QuantumState s{rho, Frame::DriveFrame};
    QuantumState q = to_qubit_frame(s, kTwoPi * 6.7e6, 137e-9);
    CHECK(std::abs(q.rho.trace().real() - 1.0) < 1e-12);
    CHECK((q.rho - q.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(rho), e2(q.rho);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(e1.eigenvalues()(i) - e2.eigenvalues()(i)) < 1e-12);
    // populations untouched, coherences only rotated
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(q.rho(i, i).real() - rho(i, i).real()) < 1e-14);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(std::abs(q.rho(i, j)) - std::abs(rho(i, j))) < 1e-12);
}

TEST_CASE("thermal state") {
    QuantumState s = initial_thermal_state(0.10, 4);
    CHECK(s.frame == Frame::QubitFrame);
    REQUIRE(s.dim() == 4);
    CHECK(s.rho(0, 0).real() == 0.90);
    CHECK(s.rho(1, 1).real() == 0.10);
    CHECK(s.rho(2, 2).real() == 0.0);
    CHECK(s.rho(3, 3).real() == 0.0);
    CHECK(s.rho(0, 1) == cd(0.0, 0.0));

    QuantumState pure = initial_thermal_state(0.0, 2);
    CHECK(pure.rho(0, 0).real() == 1.0);
    QuantumState t9 = initial_thermal_state(0.09, 4);
    CHECK(t9.rho(1, 1).real() == 0.09);

    CHECK_THROWS_AS(initial_thermal_state(-0.01, 4), std::invalid_argument);
    CHECK_THROWS_AS(initial_thermal_state(1.2, 4), std::invalid_argument);
    CHECK_THROWS_AS(initial_thermal_state(0.1, 1), std::invalid_argument);
}

TEST_CASE("parameter and state validation") {
    TransmonParams ok;
    CHECK_NOTHROW(validate(ok));
    TransmonParams bad = ok;
    bad.n_levels = 1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.n_levels = 11;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.omega10 = -1.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    QuantumState s = initial_thermal_state(0.1, 2);
    CHECK_NOTHROW(validate(s));
    QuantumState t = s;
    t.rho(0, 1) = cd(0.3, 0.1); // not Hermitian vs (1,0)=0
    CHECK_THROWS_AS(validate(t), std::invalid_argument);
    t = s;
    t.rho *= 2.0; // trace 2
    CHECK_THROWS_AS(validate(t), std::invalid_argument);
    t = s;
    t.rho(0, 0) = 1.2;
    t.rho(1, 1) = -0.2; // negative eigenvalue
    CHECK_THROWS_AS(validate(t), std::invalid_argument);
}
