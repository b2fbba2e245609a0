#include "sechsim/evolve.hpp"
#include "sechsim/kernels.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace sechsim {

const char* method_name(Method m) {
    return m == Method::PiecewiseExponential ? "pe" : "ark";
}

Method method_from_name(const std::string& name) {
    if (name == "pe") return Method::PiecewiseExponential;
    if (name == "ark") return Method::AdaptiveRK;
    throw std::invalid_argument("unknown method \"" + name + "\" (expected pe|ark)");
}

void validate(const EvolutionConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || cfg.rel_tol > 1e-4)
        throw std::invalid_argument("rel_tol must be in (0, 1e-4]");
    if (cfg.substeps_per_sample < 1)
        throw std::invalid_argument("substeps_per_sample must be >= 1");
}

void validate(const DissipationConfig& d) {
    if (!(d.t1 > 0.0) || !(d.t2_star > 0.0))
        throw std::invalid_argument("T1 and T2* must be > 0");
    if (d.enabled && d.t2_star > 2.0 * d.t1 * (1.0 + 1e-12))
        throw std::invalid_argument("T2* must be <= 2*T1");
}

Eigen::MatrixXcd matrix_exp_skew_hermitian(const Eigen::MatrixXcd& h, double dt) {
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > 1e-10 * scale)
        throw std::invalid_argument("matrix_exp_skew_hermitian: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    const auto& lam = es.eigenvalues();
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::VectorXcd ph(lam.size());
    for (long i = 0; i < lam.size(); ++i) {
        const double a = -lam(i) * dt;
        ph(i) = std::complex<double>(std::cos(a), std::sin(a));
    }
    return v * ph.asDiagonal() * v.adjoint();
}

namespace {

// Shared workspace for the hot product loop; one per call, reused per sample.
struct PeWork {
    Eigen::MatrixXcd h, w, vh, u, acc, tmp;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;

    explicit PeWork(const TransmonParams& p) {
        const int d = p.n_levels;
        h = Eigen::MatrixXcd::Zero(d, d);
        for (int n = 0; n < d; ++n)
            h(n, n) = -n * p.delta - 0.5 * p.alpha * n * (n - 1);
        w.resize(d, d);
        vh.resize(d, d);
        u.resize(d, d);
        acc = Eigen::MatrixXcd::Identity(d, d);
        tmp.resize(d, d);
    }

    void step(const TransmonParams& p, double env, double dt,
              const kernels::Ops& k) {
        const int d = p.n_levels;
        for (int n = 0; n + 1 < d; ++n) {
            const double c = 0.5 * env * std::sqrt(n + 1.0);
            h(n, n + 1) = c;
            h(n + 1, n) = c;
        }
        es.compute(h);
        const auto& lam = es.eigenvalues();
        const Eigen::MatrixXcd& v = es.eigenvectors();
        for (int j = 0; j < d; ++j) {
            const double a = -lam(j) * dt;
            w.col(j) = v.col(j) * std::complex<double>(std::cos(a), std::sin(a));
        }
        vh = v.adjoint();
        k.matmul(d, w.data(), vh.data(), u.data());
        k.matmul(d, u.data(), acc.data(), tmp.data());
        acc.swap(tmp);
    }
};

} // namespace

Eigen::MatrixXcd pe_propagator(const SampledWaveform& wf,
                               const TransmonParams& p) {
    validate(p);
    const auto& k = kernels::active();
    PeWork work(p);
    for (double env : wf.samples) work.step(p, env, wf.dt, k);
    return work.acc;
}

Eigen::MatrixXcd pe_propagator(const PulseSpec& spec, const TransmonParams& p,
                               int substeps) {
    if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
    const SampledWaveform wf = sample_waveform(spec);
    if (substeps == 1 || spec.bit_depth > 0) return pe_propagator(wf, p);
    validate(p);
    const auto& k = kernels::active();
    const double sub = wf.dt / substeps;
    PeWork work(p);
    for (size_t i = 0; i < wf.samples.size(); ++i) {
        const double tk = wf.t0 + wf.dt * static_cast<double>(i);
        for (int j = 0; j < substeps; ++j)
            work.step(p, eval_envelope(spec, tk + sub * j), sub, k);
    }
    return work.acc;
}

namespace {

// Dormand-Prince 5(4) with FSAL and a standard scaled-RMS error norm.
using Rhs = std::function<void(double, const Eigen::MatrixXcd&, Eigen::MatrixXcd&)>;

void integrate_adaptive(const Rhs& rhs, Eigen::MatrixXcd& y, double t0,
                        double t1, double rtol) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;

    const double atol = 1e-2 * rtol;
    const double span = t1 - t0;
    if (!(span > 0.0)) return;

    Eigen::MatrixXcd k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y,
                     yt = y, ynew = y, err = y;
    rhs(t0, y, k1);
    double t = t0;
    double h = span * 1e-3;
    long evals = 0;
    const long budget = 30'000'000;

    while (t < t1) {
        if (h > t1 - t) h = t1 - t;
        yt = y + h * a21 * k1;
        rhs(t + c2 * h, yt, k2);
        yt = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, yt, k3);
        yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, yt, k4);
        yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, yt, k5);
        yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, yt, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        evals += 6;
        if (evals > budget)
            throw std::runtime_error("adaptive integrator: step budget exhausted");

        double sum = 0.0;
        const long n = y.size();
        for (long i = 0; i < n; ++i) {
            const double sc =
                atol + rtol * std::max(std::abs(y.data()[i]), std::abs(ynew.data()[i]));
            const double q = std::abs(err.data()[i]) / sc;
            sum += q * q;
        }
        const double enorm = std::sqrt(sum / static_cast<double>(n));

        if (enorm <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7); // FSAL
        }
        const double fac =
            enorm > 0.0 ? 0.9 * std::pow(enorm, -0.2) : 5.0;
        h *= std::min(5.0, std::max(0.2, fac));
        if (!(h > 0.0) || t + h == t)
            throw std::runtime_error("adaptive integrator: step size underflow");
    }
}

Eigen::MatrixXcd commutator_rhs(const Eigen::MatrixXcd& h,
                                const Eigen::MatrixXcd& rho) {
    const std::complex<double> mi(0.0, -1.0);
    return mi * (h * rho - rho * h);
}

} // namespace

QuantumState evolve(const QuantumState& state, const SampledWaveform& wf,
                    const TransmonParams& p, const EvolutionConfig& cfg) {
    validate(cfg);
    validate(p);
    if (state.frame != Frame::DriveFrame)
        throw std::invalid_argument("evolve: state must be in the drive frame");
    if (state.dim() != p.n_levels)
        throw std::invalid_argument("evolve: state/model dimension mismatch");

    QuantumState out = state;
    if (cfg.method == Method::PiecewiseExponential) {
        const Eigen::MatrixXcd u = pe_propagator(wf, p);
        out.rho = u * state.rho * u.adjoint();
        return out;
    }
    // AdaptiveRK over the held samples: each hold interval is a smooth
    // (constant-H) stretch, so integrate run by run.
    const int d = p.n_levels;
    Eigen::MatrixXcd hmat = build_drive_frame_hamiltonian(p, 0.0);
    size_t i = 0;
    double t = wf.t0;
    while (i < wf.samples.size()) {
        size_t j = i + 1;
        while (j < wf.samples.size() && wf.samples[j] == wf.samples[i]) ++j;
        for (int n = 0; n + 1 < d; ++n) {
            const double c = 0.5 * wf.samples[i] * std::sqrt(n + 1.0);
            hmat(n, n + 1) = c;
            hmat(n + 1, n) = c;
        }
        const double t_end = t + wf.dt * static_cast<double>(j - i);
        integrate_adaptive(
            [&](double, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) {
                dy = commutator_rhs(hmat, y);
            },
            out.rho, t, t_end, cfg.rel_tol);
        t = t_end;
        i = j;
    }
    return out;
}

QuantumState evolve(const QuantumState& state, const PulseSpec& spec,
                    const TransmonParams& p, const EvolutionConfig& cfg) {
    validate(cfg);
    validate(p);
    if (state.frame != Frame::DriveFrame)
        throw std::invalid_argument("evolve: state must be in the drive frame");
    if (state.dim() != p.n_levels)
        throw std::invalid_argument("evolve: state/model dimension mismatch");
    if (cfg.method == Method::PiecewiseExponential) {
        const Eigen::MatrixXcd u = pe_propagator(spec, p, cfg.substeps_per_sample);
        QuantumState out = state;
        out.rho = u * state.rho * u.adjoint();
        return out;
    }
    // Continuous analytic envelope, integrated over the same zero-order-hold
    // duration as the sampled path.
    const SampledWaveform wf = sample_waveform(spec);
    QuantumState out = state;
    integrate_adaptive(
        [&](double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) {
            dy = commutator_rhs(build_drive_frame_hamiltonian(p, eval_envelope(spec, t)), y);
        },
        out.rho, wf.t0, wf.t0 + wf.duration(), cfg.rel_tol);
    return out;
}

QuantumState evolve_lindblad(const QuantumState& state,
                             const SampledWaveform& wf,
                             const TransmonParams& p,
                             const DissipationConfig& diss,
                             const EvolutionConfig& cfg) {
    validate(cfg);
    validate(p);
    validate(diss);
    if (!diss.enabled) return evolve(state, wf, p, cfg);
    if (state.frame != Frame::DriveFrame)
        throw std::invalid_argument("evolve_lindblad: state must be in the drive frame");
    if (state.dim() != p.n_levels)
        throw std::invalid_argument("evolve_lindblad: state/model dimension mismatch");

    const int d = p.n_levels;
    const double g1 = 1.0 / diss.t1;
    const double gphi = 1.0 / diss.t2_star - 0.5 / diss.t1;
    if (gphi < -1e-12)
        throw std::invalid_argument("dephasing rate negative (T2* > 2*T1)");

    Eigen::MatrixXcd low = Eigen::MatrixXcd::Zero(d, d); // lowering operator
    for (int n = 0; n + 1 < d; ++n) low(n, n + 1) = std::sqrt(n + 1.0);
    Eigen::VectorXd num(d); // number operator diagonal
    for (int n = 0; n < d; ++n) num(n) = n;

    Eigen::MatrixXcd hmat = build_drive_frame_hamiltonian(p, 0.0);
    auto rhs = [&](double, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) {
        dy = commutator_rhs(hmat, y);
        // relaxation D[a], rate 1/T1
        const Eigen::MatrixXcd ay = low * y * low.adjoint();
        dy += g1 * ay;
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i)
                dy(i, j) -= 0.5 * g1 * (num(i) + num(j)) * y(i, j);
        // pure dephasing D[sqrt(2 gphi) N]: the qubit coherence then decays
        // at g1/2 + gphi = 1/T2* as defined
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) {
                const double dn = num(i) - num(j);
                dy(i, j) -= gphi * dn * dn * y(i, j);
            }
    };

    QuantumState out = state;
    size_t i = 0;
    double t = wf.t0;
    while (i < wf.samples.size()) {
        size_t j = i + 1;
        while (j < wf.samples.size() && wf.samples[j] == wf.samples[i]) ++j;
        for (int n = 0; n + 1 < d; ++n) {
            const double c = 0.5 * wf.samples[i] * std::sqrt(n + 1.0);
            hmat(n, n + 1) = c;
            hmat(n + 1, n) = c;
        }
        const double t_end = t + wf.dt * static_cast<double>(j - i);
        integrate_adaptive(rhs, out.rho, t, t_end, cfg.rel_tol);
        t = t_end;
        i = j;
    }
    return out;
}

} // namespace sechsim
