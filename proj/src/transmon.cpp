#include "sechsim/transmon.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sechsim {

void validate(const TransmonParams& p) {
    if (p.n_levels < 2 || p.n_levels > 10)
        throw std::invalid_argument("n_levels must be in [2, 10]");
    if (!(p.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
    if (!(p.omega10 > 0.0)) throw std::invalid_argument("omega10 must be > 0");
}

void validate(const QuantumState& s) {
    const auto& r = s.rho;
    if (r.rows() != r.cols() || r.rows() < 2)
        throw std::invalid_argument("rho must be square, dim >= 2");
    if ((r - r.adjoint()).norm() > 1e-12)
        throw std::invalid_argument("rho not Hermitian");
    if (std::abs(r.trace().real() - 1.0) > 1e-12 ||
        std::abs(r.trace().imag()) > 1e-12)
        throw std::invalid_argument("trace(rho) != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("rho has negative eigenvalue");
}

Eigen::MatrixXcd build_drive_frame_hamiltonian(const TransmonParams& p,
                                               double envelope) {
    validate(p);
    if (envelope < 0.0) throw std::invalid_argument("envelope must be >= 0");
    const int d = p.n_levels;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n)
        h(n, n) = -n * p.delta - 0.5 * p.alpha * n * (n - 1);
    for (int n = 0; n + 1 < d; ++n) {
        const double c = 0.5 * envelope * std::sqrt(n + 1.0);
        h(n, n + 1) = c;
        h(n + 1, n) = c; // mirror: exactly Hermitian by construction
    }
    return h;
}

QuantumState enter_drive_frame(const QuantumState& s) {
    if (s.frame != Frame::QubitFrame)
        throw std::invalid_argument("enter_drive_frame: state not in qubit frame");
    QuantumState out = s;
    out.frame = Frame::DriveFrame;
    return out;
}

QuantumState to_qubit_frame(const QuantumState& s, double delta, double elapsed) {
    if (s.frame != Frame::DriveFrame)
        throw std::invalid_argument("to_qubit_frame: state not in drive frame");
    const int d = s.dim();
    Eigen::VectorXcd r(d);
    for (int n = 0; n < d; ++n) {
        const double phase = -static_cast<double>(n) * delta * elapsed;
        r(n) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
    QuantumState out;
    out.rho.resize(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            out.rho(i, j) = r(i) * s.rho(i, j) * std::conj(r(j));
    out.frame = Frame::QubitFrame;
    return out;
}

QuantumState initial_thermal_state(double p_excited, int dim) {
    if (p_excited < 0.0 || p_excited > 1.0)
        throw std::invalid_argument("p_excited must be in [0, 1]");
    if (dim < 2) throw std::invalid_argument("dim must be >= 2");
    QuantumState s;
    s.rho = Eigen::MatrixXcd::Zero(dim, dim);
    s.rho(0, 0) = 1.0 - p_excited;
    s.rho(1, 1) = p_excited;
    s.frame = Frame::QubitFrame;
    return s;
}

} // namespace sechsim
