#include "sechsim/pulse.hpp"
#include "sechsim/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace sechsim {

const char* shape_name(Shape s) {
    switch (s) {
        case Shape::Sech: return "sech";
        case Shape::Gaussian: return "gaussian";
        case Shape::Square: return "square";
    }
    return "?";
}

Shape shape_from_name(const std::string& name) {
    if (name == "sech") return Shape::Sech;
    if (name == "gaussian" || name == "gauss") return Shape::Gaussian;
    if (name == "square") return Shape::Square;
    throw std::invalid_argument("unknown pulse shape: " + name);
}

PulseSpec make_pulse(Shape shape, double omega0, double rho,
                     double window_sigmas, double sample_period,
                     int bit_depth) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
    PulseSpec spec;
    spec.shape = shape;
    spec.omega0 = omega0;
    spec.rho = rho;
    spec.sigma = M_PI / (2.0 * rho);
    spec.window_sigmas = window_sigmas;
    spec.sample_period = sample_period;
    spec.bit_depth = bit_depth;
    validate(spec);
    return spec;
}

void validate(const PulseSpec& spec) {
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    if (!(spec.omega0 >= 0.0)) throw std::invalid_argument("omega0 must be >= 0");
    if (!(spec.window_sigmas > 0.0))
        throw std::invalid_argument("window_sigmas must be > 0");
    if (!(spec.sample_period > 0.0))
        throw std::invalid_argument("sample_period must be > 0");
    if (spec.sample_period >= spec.sigma)
        throw std::invalid_argument("sample_period must be < sigma");
    if (spec.bit_depth < 0 || spec.bit_depth > 16)
        throw std::invalid_argument("bit_depth out of range");
    if (spec.rho > 0.0 &&
        std::abs(spec.sigma * spec.rho - M_PI / 2.0) > 1e-9 * (M_PI / 2.0))
        throw std::invalid_argument("sigma*rho must equal pi/2");
}

double sech_cyclic_amplitude(int n, double rho) {
    if (n < 1) throw std::invalid_argument("cyclic index n must be >= 1");
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
    return 2.0 * n * rho;
}

double eval_envelope(const PulseSpec& spec, double t) {
    const double half = spec.window_sigmas * spec.sigma;
    if (std::abs(t) > half * (1.0 + 1e-12)) return 0.0; // edge sample stays in
    switch (spec.shape) {
        case Shape::Sech: return spec.omega0 / std::cosh(spec.rho * t);
        case Shape::Gaussian:
            return spec.omega0 * std::exp(-t * t / (2.0 * spec.sigma * spec.sigma));
        case Shape::Square: return spec.omega0;
    }
    return 0.0;
}

SampledWaveform sample_waveform(const PulseSpec& spec) {
    validate(spec);
    if (spec.sample_period >= spec.sigma)
        throw std::invalid_argument("sample_period >= sigma: undersampled waveform");
    const double half = spec.window_sigmas * spec.sigma;
    // the 1e-9 keeps an exact-ratio window (200.0 that rounds down to
    // 199.99...) from dropping its final sample
    const long n = static_cast<long>(
                       std::floor(2.0 * half / spec.sample_period + 1e-9)) +
                   1;

    SampledWaveform wf;
    wf.t0 = -half;
    wf.dt = spec.sample_period;
    wf.quantized = spec.bit_depth > 0;
    wf.samples.resize(static_cast<size_t>(n));

    if (!wf.quantized) {
        // no DAC: the grid carries the analytic envelope exactly
        for (long k = 0; k < n; ++k)
            wf.samples[static_cast<size_t>(k)] =
                eval_envelope(spec, wf.t0 + spec.sample_period * k);
        return wf;
    }

    std::vector<double> shape(static_cast<size_t>(n));
    const double a = spec.omega0 > 0.0 ? spec.omega0 : 1.0;
    for (long k = 0; k < n; ++k)
        shape[static_cast<size_t>(k)] =
            eval_envelope(spec, wf.t0 + spec.sample_period * k) / a;
    const double levels = static_cast<double>((1 << spec.bit_depth) - 1);
    kernels::active().quantize(static_cast<int>(n), shape.data(), levels,
                               shape.data());
    for (long k = 0; k < n; ++k)
        wf.samples[static_cast<size_t>(k)] = spec.omega0 * shape[static_cast<size_t>(k)];
    return wf;
}

namespace {

double simpson(const PulseSpec& spec, double a, double b, double fa, double fm,
               double fb, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval_envelope(spec, lm), frm = eval_envelope(spec, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 1e-13 * std::abs(whole) + 1e-30)
        return left + right + (left + right - whole) / 15.0;
    return simpson(spec, a, m, fa, flm, fm, left, depth - 1) +
           simpson(spec, m, b, fm, frm, fb, right, depth - 1);
}

} // namespace

double pulse_area(const PulseSpec& spec) {
    validate(spec);
    const double half = spec.window_sigmas * spec.sigma;
    if (spec.shape == Shape::Square) return spec.omega0 * 2.0 * half;
    const double fa = eval_envelope(spec, -half);
    const double fm = eval_envelope(spec, 0.0);
    const double fb = eval_envelope(spec, half);
    const double whole = 2.0 * half / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(spec, -half, half, fa, fm, fb, whole, 40);
}

} // namespace sechsim
