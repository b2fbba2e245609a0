#include "sechsim/tomography.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sechsim/evolve.hpp"
#include "sechsim/rosen_zener.hpp"

namespace sechsim {

namespace {
const std::complex<double> kI{0.0, 1.0};

Eigen::Matrix2cd rot_x(double angle) {
    const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    Eigen::Matrix2cd u;
    u << c, -kI * s, -kI * s, c;
    return u;
}

Eigen::Matrix2cd rot_y(double angle) {
    const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    Eigen::Matrix2cd u;
    u << c, -s, s, c;
    return u;
}

// (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)), the 2x2 PSD square root.
Eigen::Matrix2cd sqrtm_psd2(const Eigen::Matrix2cd& m) {
    const double det = std::max(0.0, m.determinant().real());
    const double tr = m.trace().real();
    const double s = std::sqrt(det);
    const double denom2 = tr + 2.0 * s;
    if (denom2 <= 0.0) return Eigen::Matrix2cd::Zero();
    return (m + s * Eigen::Matrix2cd::Identity()) / std::sqrt(denom2);
}

void require_density_matrix(const Eigen::Matrix2cd& rho, const char* who) {
    if ((rho - rho.adjoint()).norm() > 1e-9)
        throw std::invalid_argument(std::string(who) + ": matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(who) + ": trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument(std::string(who) + ": matrix not PSD");
}

} // namespace

const char* prep_name(PrepLabel p) {
    switch (p) {
        case PrepLabel::YMinus90: return "Y-90";
        case PrepLabel::YPlus90: return "Y+90";
        case PrepLabel::XPlus90: return "X+90";
        case PrepLabel::XMinus90: return "X-90";
        case PrepLabel::X180: return "X180";
        case PrepLabel::Identity: return "I";
    }
    throw std::logic_error("prep_name: bad label");
}

PrepLabel prep_from_name(const std::string& name) {
    for (PrepLabel p : kAllPreps)
        if (name == prep_name(p)) return p;
    throw std::invalid_argument("unknown preparation \"" + name + "\"");
}

Eigen::Matrix2cd prep_rotation(PrepLabel label) {
    switch (label) {
        case PrepLabel::YMinus90: return rot_y(-M_PI_2);
        case PrepLabel::YPlus90: return rot_y(M_PI_2);
        case PrepLabel::XPlus90: return rot_x(M_PI_2);
        case PrepLabel::XMinus90: return rot_x(-M_PI_2);
        case PrepLabel::X180: return rot_x(M_PI);
        case PrepLabel::Identity: return Eigen::Matrix2cd::Identity();
    }
    throw std::logic_error("prep_rotation: bad label");
}

QuantumState prepare(PrepLabel label, const QuantumState& rho_init) {
    if (rho_init.frame != Frame::QubitFrame)
        throw std::invalid_argument("prepare: state must be in the qubit frame");
    if (label == PrepLabel::Identity) return rho_init;
    const int d = rho_init.dim();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    u.topLeftCorner<2, 2>() = prep_rotation(label);
    QuantumState out = rho_init;
    out.rho = u * rho_init.rho * u.adjoint();
    return out;
}

PauliExpectations measure_pauli(const QuantumState& s) {
    if (s.frame != Frame::QubitFrame)
        throw std::invalid_argument("measure_pauli: state must be in the qubit frame");
    PauliExpectations e;
    e.x = 2.0 * s.rho(0, 1).real();
    e.y = -2.0 * s.rho(0, 1).imag();
    e.z = s.rho(0, 0).real() - s.rho(1, 1).real();
    e.leakage = 1.0 - s.rho(0, 0).real() - s.rho(1, 1).real();
    return e;
}

BlochAngles bloch_angles(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (!(r > 1e-6))
        throw std::domain_error("bloch_angles: degenerate Bloch vector");
    BlochAngles a;
    a.theta = std::acos(std::clamp(z / r, -1.0, 1.0));
    // at the poles phi carries no information; report 0 by convention
    a.phi = (std::hypot(x, y) <= 1e-12 * r) ? 0.0 : std::atan2(y, x);
    return a;
}

Eigen::Matrix2cd reconstruct_qubit_dm(double x, double y, double z,
                                      double leakage) {
    const double p = 1.0 - leakage;
    if (!(p > 0.0) || leakage < -1e-9)
        throw std::invalid_argument("reconstruct_qubit_dm: bad leakage");
    const double r2 = x * x + y * y + z * z;
    if (r2 > p * p + 1e-9)
        throw std::invalid_argument("reconstruct_qubit_dm: Bloch norm exceeds 1 - leakage");

    Eigen::Matrix2cd rho;
    rho(0, 0) = (p + z) / (2.0 * p);
    rho(1, 1) = (p - z) / (2.0 * p);
    rho(0, 1) = std::complex<double>(x, -y) / (2.0 * p);
    rho(1, 0) = std::conj(rho(0, 1));

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    if (es.eigenvalues().minCoeff() >= 0.0) return rho;
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("reconstruct_qubit_dm: negative eigenvalue beyond clip");
    Eigen::Vector2d lam = es.eigenvalues().cwiseMax(0.0);
    lam /= lam.sum();
    return es.eigenvectors() * lam.cast<std::complex<double>>().asDiagonal() *
           es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const Eigen::Matrix2cd& rho1,
                        const Eigen::Matrix2cd& rho2) {
    require_density_matrix(rho1, "uhlmann_fidelity(rho1)");
    require_density_matrix(rho2, "uhlmann_fidelity(rho2)");
    const Eigen::Matrix2cd sq1 = sqrtm_psd2(rho1);
    const Eigen::Matrix2cd m = sq1 * rho2 * sq1;
    const double f = sqrtm_psd2(m).trace().real();
    return std::clamp(f, 0.0, 1.0);
}

Eigen::Matrix2cd theory_qubit_state(double delta, PrepLabel prep,
                                    const ExperimentConfig& cfg) {
    const double q = cfg.theory_excited;
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    rho(0, 0) = 1.0 - q;
    rho(1, 1) = q;
    const Eigen::Matrix2cd u = prep_rotation(prep);
    rho = u * rho * u.adjoint();
    // delta = 0 is the branch point of the phase law; both limits give a pure
    // global phase, so the reference gate degenerates to the identity there.
    if (delta == 0.0) return rho;
    const Eigen::Matrix2cd g = rz_2pi_propagator(cfg.pulse.rho, delta);
    return g * rho * g.adjoint();
}

TomographyRecord zgate_tomography(double delta, PrepLabel prep,
                                  const ExperimentConfig& cfg) {
    TransmonParams model = cfg.model;
    model.delta = delta;

    QuantumState s = initial_thermal_state(cfg.thermal_excited, model.n_levels);
    s = prepare(prep, s);
    s = enter_drive_frame(s);
    const SampledWaveform wf = sample_waveform(cfg.pulse);
    if (cfg.dissipation.enabled)
        s = evolve_lindblad(s, wf, model, cfg.dissipation, cfg.evolution);
    else
        s = evolve(s, cfg.pulse, model, cfg.evolution);
    s = to_qubit_frame(s, delta, wf.duration());

    const PauliExpectations e = measure_pauli(s);
    const BlochAngles a = bloch_angles(e.x, e.y, e.z);
    TomographyRecord rec;
    rec.delta = delta;
    rec.prep = prep;
    rec.exp_x = e.x;
    rec.exp_y = e.y;
    rec.exp_z = e.z;
    rec.leakage = e.leakage;
    rec.theta = a.theta;
    rec.phi = a.phi;
    return rec;
}

} // namespace sechsim
