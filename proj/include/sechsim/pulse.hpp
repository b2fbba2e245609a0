#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace sechsim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class Shape { Sech, Gaussian, Square };

const char* shape_name(Shape s);
Shape shape_from_name(const std::string& name);

// One drive envelope. omega0 is the rotating-frame Rabi peak: the two-level
// Hamiltonian is -Delta|1><1| + (env(t)/2)(|0><1|+|1><0|), so the sech cyclic
// condition reads omega0 = 2*n*rho (area 2*pi*n). sigma*rho = pi/2 always.
struct PulseSpec {
    Shape shape = Shape::Sech;
    double omega0 = 0.0;        // rad/s
    double rho = 0.0;           // rad/s
    double sigma = 0.0;         // s
    double window_sigmas = 4.0; // half-window in sigmas
    double sample_period = 1e-9;
    int bit_depth = 8;          // 0 = no quantization
};

// sigma derived from rho; validates invariants.
PulseSpec make_pulse(Shape shape, double omega0, double rho,
                     double window_sigmas = 4.0, double sample_period = 1e-9,
                     int bit_depth = 8);
void validate(const PulseSpec& spec);

// n=1,2,...: amplitude of the exactly cyclic sech pulse, 2*n*rho.
double sech_cyclic_amplitude(int n, double rho);

struct SampledWaveform {
    double t0 = 0.0;  // s, first sample time
    double dt = 0.0;  // s
    std::vector<double> samples; // rad/s, one per hold interval
    bool quantized = false;

    // AWG zero-order-hold duration: every sample is held for dt.
    double duration() const { return dt * static_cast<double>(samples.size()); }
};

double eval_envelope(const PulseSpec& spec, double t);

// Uniform grid over [-w*sigma, +w*sigma]; floor(2*w*sigma/dt)+1 samples.
// bit_depth b>0 rounds each sample to omega0 * (code/(2^b-1)); the codes
// depend only on the normalized shape, not on omega0.
SampledWaveform sample_waveform(const PulseSpec& spec);

// Integral of the envelope over the window (adaptive Simpson quadrature).
double pulse_area(const PulseSpec& spec);

} // namespace sechsim
