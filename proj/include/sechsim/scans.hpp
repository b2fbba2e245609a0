#pragma once
#include <vector>

#include "sechsim/config.hpp"
#include "sechsim/tomography.hpp"

namespace sechsim {

struct ScanGrid {
    std::vector<double> amplitudes; // rad/s
    std::vector<double> detunings;  // rad/s
};

void validate(const ScanGrid& g); // nonempty, strictly increasing axes

// Paper-style map: amplitudes 0..amplitude_max_ratio x (2 rho), detunings
// +/- detuning_max.
ScanGrid default_scan_grid(const ExperimentConfig& cfg);

struct ScanResult {
    ScanGrid grid;
    Shape shape = Shape::Sech;
    // values[i][j] = P(excited) at amplitudes[i], detunings[j]
    std::vector<std::vector<double>> values;
};

// Thermal init, digitized waveform, P(excited) = 1 - rho00: readout only
// distinguishes ground from not-ground, so leakage counts as excited.
ScanResult rabi_scan_2d(Shape shape, const ScanGrid& grid,
                        const ExperimentConfig& cfg);

struct LineCut {
    double delta = 0.0; // grid detuning actually selected
    std::vector<double> amplitudes;
    std::vector<double> probabilities;
};

// Nearest grid detuning; ties resolve to the lower index.
LineCut line_cut(const ScanResult& result, double delta);

struct CyclicFit {
    double amplitude = 0.0; // fitted valley position, rad/s
    double residual = 0.0;  // rms misfit of the 5-point parabola
};

// Quadratic fit to the 5 points around the discrete minimum inside
// [bracket_lo, bracket_hi]. Throws when the bracket holds no interior
// minimum or the fit is not convex.
CyclicFit find_cyclic_amplitude(const std::vector<double>& amplitudes,
                                const std::vector<double>& probabilities,
                                double bracket_lo, double bracket_hi);

struct CyclicCurve {
    std::vector<double> detunings;     // ascending; columns that fit
    std::vector<double> amplitudes;    // A*(delta)
    std::vector<double> fit_residuals;
};

// First-return amplitude per detuning column. Seeds at the column nearest
// delta = 0 (first real peak, then the following valley) and follows the
// nearest local minimum outward, so the curve tracks one Rabi branch instead
// of hopping to whichever minimum is globally deepest. Columns with no
// interior minimum or a non-convex fit are dropped.
CyclicCurve cyclic_amplitude_curve(const ScanResult& result);

// 100 * (max - min) / A*(0) over |delta| <= delta_bound. Throws when the
// curve does not cover the range or has no point near zero detuning.
double amplitude_variation(const CyclicCurve& curve, double delta_bound);

// Y+90 prep tomography per detuning; phi unwrapped per detuning sign from the
// far ends inward, landing on the (0, 2pi) / (-2pi, 0) branches of the sech
// phase law. The grid must not contain 0.
std::vector<TomographyRecord> phase_curve(const std::vector<double>& deltas,
                                          const ExperimentConfig& cfg);

struct FidelityPoint {
    double delta = 0.0;
    double f_avg = 0.0; // mean over the six input states
};

std::vector<FidelityPoint> fidelity_sweep(const std::vector<double>& deltas,
                                          const ExperimentConfig& cfg);

// curve_max / curve_step grid, symmetric about zero.
std::vector<double> default_curve_deltas(const ExperimentConfig& cfg,
                                         bool exclude_zero);

// Amplitude giving pulse area 2 pi n over the spec's window (quadrature on
// the unquantized envelope). On resonance a 2 pi n area returns the
// population exactly, so this is the analytic seed for calibration.
double area_matched_amplitude(const PulseSpec& spec, int n = 1);

// n-th full-Rabi-cycle amplitude. Sech: the closed form 2 n rho. Other
// shapes: 1D amplitude scan at delta = 0 around the area-matched seed, valley
// located by the quadratic fit. Throws when the bracket holds no valley.
double calibrate_amplitude(Shape shape, const PulseSpec& ref, int n,
                           const TransmonParams& model,
                           const EvolutionConfig& evo);

} // namespace sechsim
