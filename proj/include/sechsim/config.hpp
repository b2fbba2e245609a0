#pragma once
#include <stdexcept>
#include <string>

#include "sechsim/evolve.hpp"
#include "sechsim/pulse.hpp"
#include "sechsim/transmon.hpp"

namespace sechsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    int amplitude_points = 101;
    double amplitude_max_ratio = 3.2; // in units of the n=1 cyclic amplitude 2*rho
    int detuning_points = 81;
    double detuning_max = kTwoPi * 20e6; // rad/s, 2D scans run +/- this
    double curve_step = kTwoPi * 0.5e6;  // rad/s, 1D phase/fidelity curves
    double curve_max = kTwoPi * 20e6;    // rad/s
};

struct ExperimentConfig {
    TransmonParams model;
    PulseSpec pulse;
    EvolutionConfig evolution;
    DissipationConfig dissipation;
    double thermal_excited = 0.10; // initial |1> population before prep
    double theory_excited = 0.09;  // mixture inside the fidelity reference state
    GridConfig grids;
    int parallelism = 0; // 0 = hardware thread count
    std::string output_dir = ".";
};

// Device defaults: 5.18 GHz / 200 MHz four-level model, sech sigma = 25 ns
// (rho = 2pi x 10 MHz), +/-4 sigma window, 1 ns AWG period, 8-bit DAC.
ExperimentConfig default_config();

void validate(const ExperimentConfig& c);

// JSON file, sections mirroring the struct. Frequencies carry their unit in
// the key (omega10_ghz, alpha_mhz, ...); everything is rad/s once loaded.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
void save_config(const ExperimentConfig& c, const std::string& path);

// Canonical serialized form (also what save_config writes); kept as text so
// the public header stays free of the json library.
std::string to_json_text(const ExperimentConfig& c);

} // namespace sechsim
