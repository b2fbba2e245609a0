#pragma once
#include <string>

#include "sechsim/pulse.hpp"
#include "sechsim/transmon.hpp"

namespace sechsim {

enum class Method { PiecewiseExponential, AdaptiveRK };

const char* method_name(Method m); // "pe" / "ark"
Method method_from_name(const std::string& name);

struct EvolutionConfig {
    Method method = Method::PiecewiseExponential;
    double rel_tol = 1e-10;      // AdaptiveRK
    int substeps_per_sample = 1; // PiecewiseExponential, continuous-envelope path
};

void validate(const EvolutionConfig& cfg);

struct DissipationConfig {
    double t1 = 8.6e-6;
    double t2_star = 10.25e-6;
    bool enabled = false;
};

void validate(const DissipationConfig& d);

// exp(-i H dt) via eigendecomposition; H must be Hermitian.
Eigen::MatrixXcd matrix_exp_skew_hermitian(const Eigen::MatrixXcd& h, double dt);

// Product of per-sample propagators for the zero-order-hold waveform: each
// sample value held constant for dt. Exact for what the AWG emits.
Eigen::MatrixXcd pe_propagator(const SampledWaveform& wf,
                               const TransmonParams& p);

// Same, but slicing each sample period into `substeps` equal slices with the
// continuous envelope re-evaluated at every slice start. substeps=1 is the
// sampled path above; quantized specs ignore substeps (the held code is the
// envelope).
Eigen::MatrixXcd pe_propagator(const PulseSpec& spec, const TransmonParams& p,
                               int substeps);

QuantumState evolve(const QuantumState& state, const SampledWaveform& wf,
                    const TransmonParams& p, const EvolutionConfig& cfg);

// Continuous-envelope entry point; AdaptiveRK integrates the analytic
// envelope, PiecewiseExponential goes through sample_waveform.
QuantumState evolve(const QuantumState& state, const PulseSpec& spec,
                    const TransmonParams& p, const EvolutionConfig& cfg);

QuantumState evolve_lindblad(const QuantumState& state,
                             const SampledWaveform& wf,
                             const TransmonParams& p,
                             const DissipationConfig& diss,
                             const EvolutionConfig& cfg);

} // namespace sechsim
