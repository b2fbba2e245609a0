#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sechsim/pulse.hpp"

using namespace sechsim;

namespace {
const double kRho = kTwoPi * 10e6; // sigma = 25 ns
PulseSpec ideal(Shape s, double omega0, double w = 4.0) {
    return make_pulse(s, omega0, kRho, w, 1e-9, 0);
}
} // namespace

TEST_CASE("shape names round-trip") {
    CHECK(shape_name(Shape::Sech) == std::string("sech"));
    CHECK(shape_name(Shape::Gaussian) == std::string("gaussian"));
    CHECK(shape_name(Shape::Square) == std::string("square"));
    for (Shape s : {Shape::Sech, Shape::Gaussian, Shape::Square})
        CHECK(shape_from_name(shape_name(s)) == s);
    CHECK(shape_from_name("gauss") == Shape::Gaussian);
    CHECK_THROWS_AS(shape_from_name("lorentzian"), std::invalid_argument);
}

TEST_CASE("make_pulse derives sigma from rho") {
    const PulseSpec p = ideal(Shape::Sech, 2.0 * kRho);
    CHECK(std::abs(p.sigma - 25e-9) < 1e-22);
    CHECK(std::abs(p.sigma * p.rho - M_PI / 2.0) < 1e-15);
}

TEST_CASE("envelope values at the landmarks") {
    const double w0 = 1.7e8;
    const PulseSpec sech = ideal(Shape::Sech, w0);
    CHECK(eval_envelope(sech, 0.0) == w0);
    // sech(t=sigma) = sech(pi/2) = 0.39854...
    CHECK(std::abs(eval_envelope(sech, sech.sigma) / w0 - 0.39854) < 1e-5);
    CHECK(eval_envelope(sech, -sech.sigma) == eval_envelope(sech, sech.sigma));

    const PulseSpec gauss = ideal(Shape::Gaussian, w0);
    CHECK(std::abs(eval_envelope(gauss, gauss.sigma) / w0 - 0.60653) < 1e-5);

    const PulseSpec sq = ideal(Shape::Square, w0);
    CHECK(eval_envelope(sq, 0.0) == w0);
    CHECK(eval_envelope(sq, 3.99 * sq.sigma) == w0);
    CHECK(eval_envelope(sq, 4.0 * sq.sigma) == w0); // boundary sample stays in

    for (const PulseSpec& p : {sech, gauss, sq}) {
        CHECK(eval_envelope(p, 4.001 * p.sigma) == 0.0);
        CHECK(eval_envelope(p, -4.001 * p.sigma) == 0.0);
    }
}

TEST_CASE("sampling grid: 201 samples, peak dead center") {
    // sigma=25ns, w=4, dt=1ns: window [-100ns,+100ns] inclusive
    PulseSpec p = make_pulse(Shape::Sech, 2.0 * kRho, kRho, 4.0, 1e-9, 8);
    const SampledWaveform wf = sample_waveform(p);
    REQUIRE(wf.samples.size() == 201);
    CHECK(std::abs(wf.t0 + 100e-9) < 1e-18);
    CHECK(wf.dt == 1e-9);
    CHECK(std::abs(wf.duration() - 201e-9) < 1e-18);
    CHECK(wf.samples[100] == p.omega0); // peak index (size-1)/2, code 255
    for (size_t i = 1; i < wf.samples.size(); ++i)
        CHECK(wf.samples[i] >= 0.0);
    // symmetric envelope -> symmetric codes
    for (size_t i = 0; i < 100; ++i)
        CHECK(wf.samples[i] == wf.samples[200 - i]);
}

TEST_CASE("bit_depth=0 reproduces the analytic envelope on the grid") {
    PulseSpec p = ideal(Shape::Sech, 2.0 * kRho);
    const SampledWaveform wf = sample_waveform(p);
    CHECK_FALSE(wf.quantized);
    for (size_t i = 0; i < wf.samples.size(); ++i) {
        const double t = wf.t0 + static_cast<double>(i) * wf.dt;
        CHECK(wf.samples[i] == eval_envelope(p, t));
    }
}

TEST_CASE("8-bit quantization: bound, flag, amplitude-independent codes") {
    PulseSpec p = make_pulse(Shape::Sech, 2.0 * kRho, kRho, 4.0, 1e-9, 8);
    PulseSpec raw = p;
    raw.bit_depth = 0;
    const SampledWaveform q = sample_waveform(p);
    const SampledWaveform r = sample_waveform(raw);
    CHECK(q.quantized);
    REQUIRE(q.samples.size() == r.samples.size());
    const double lsb = p.omega0 / 255.0;
    for (size_t i = 0; i < q.samples.size(); ++i)
        CHECK(std::abs(q.samples[i] - r.samples[i]) <= 0.5 * lsb * (1.0 + 1e-12));

    // codes scale with omega0: doubling the amplitude doubles every sample
    PulseSpec p2 = p;
    p2.omega0 = 2.0 * p.omega0;
    const SampledWaveform q2 = sample_waveform(p2);
    for (size_t i = 0; i < q.samples.size(); ++i)
        CHECK(q2.samples[i] == 2.0 * q.samples[i]);
}

TEST_CASE("pulse areas against closed forms") {
    const double w0 = 2.0 * kRho;

    // square: exactly omega0 * 2*w*sigma
    const PulseSpec sq = ideal(Shape::Square, w0);
    CHECK(std::abs(pulse_area(sq) - w0 * 8.0 * sq.sigma) < 1e-6 * w0 * sq.sigma);

    // sech: full integral is pi*omega0/rho; the truncated window keeps
    // 2*atan(sinh(w*pi/2))/pi of it (Gudermannian antiderivative)
    for (double w : {4.0, 8.0, 12.0}) {
        const PulseSpec p = ideal(Shape::Sech, w0, w);
        const double full = M_PI * w0 / kRho;
        const double kept = 2.0 * std::atan(std::sinh(w * M_PI / 2.0)) / M_PI;
        CHECK(std::abs(pulse_area(p) / full - kept) < 1e-10);
    }
    // at the default +-4 sigma the deficit is 0.2378%, not negligible
    const PulseSpec p4 = ideal(Shape::Sech, w0, 4.0);
    const double deficit = 1.0 - pulse_area(p4) / (M_PI * w0 / kRho);
    CHECK(std::abs(deficit - 0.0023776) < 1e-6);
    // +-8 sigma is within 1e-3 of the full area
    const PulseSpec p8 = ideal(Shape::Sech, w0, 8.0);
    CHECK(std::abs(pulse_area(p8) - M_PI * w0 / kRho) < 1e-3 * M_PI * w0 / kRho);

    // gaussian, wide window: sigma*sqrt(2*pi)*omega0
    const PulseSpec g = ideal(Shape::Gaussian, w0, 12.0);
    CHECK(std::abs(pulse_area(g) - w0 * g.sigma * std::sqrt(2.0 * M_PI)) <
          1e-11 * w0 * g.sigma);

    // linear in omega0
    PulseSpec pa = ideal(Shape::Sech, w0);
    PulseSpec pb = ideal(Shape::Sech, 2.0 * w0);
    CHECK(std::abs(pulse_area(pb) - 2.0 * pulse_area(pa)) <
          1e-12 * pulse_area(pb));
    CHECK(pulse_area(pb) > pulse_area(pa));
}

TEST_CASE("sech cyclic amplitude is 2*n*rho") {
    // rho = 2*pi*10 MHz: the n=1 return needs 2*rho = 1.2566e8 rad/s
    CHECK(std::abs(sech_cyclic_amplitude(1, kRho) - 1.2566e8) < 1e4);
    CHECK(sech_cyclic_amplitude(2, kRho) == 2.0 * sech_cyclic_amplitude(1, kRho));
    CHECK(sech_cyclic_amplitude(3, kRho) == 6.0 * kRho);
    CHECK_THROWS_AS(sech_cyclic_amplitude(0, kRho), std::invalid_argument);
    CHECK_THROWS_AS(sech_cyclic_amplitude(1, -kRho), std::invalid_argument);
}

TEST_CASE("validation rejects broken specs") {
    CHECK_THROWS_AS(make_pulse(Shape::Sech, 1e8, kRho, 4.0, 30e-9, 8),
                    std::invalid_argument); // dt > sigma
    CHECK_THROWS_AS(make_pulse(Shape::Sech, -1e8, kRho), std::invalid_argument);
    CHECK_THROWS_AS(make_pulse(Shape::Sech, 1e8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_pulse(Shape::Sech, 1e8, kRho, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_pulse(Shape::Sech, 1e8, kRho, 4.0, 1e-9, 17),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_pulse(Shape::Sech, 1e8, kRho, 4.0, 1e-9, -1),
                    std::invalid_argument);

    PulseSpec p = ideal(Shape::Sech, 1e8);
    p.sigma = 30e-9; // breaks sigma*rho = pi/2
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}
