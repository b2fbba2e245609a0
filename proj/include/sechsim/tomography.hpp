#pragma once
#include <Eigen/Dense>
#include <array>
#include <string>

#include "sechsim/config.hpp"
#include "sechsim/transmon.hpp"

namespace sechsim {

// Six tomography input states; rotation angles are halved inside the unitary
// (Y+90 on |0> is the Hadamard-like prep landing on +x).
enum class PrepLabel { YMinus90, YPlus90, XPlus90, XMinus90, X180, Identity };

inline constexpr std::array<PrepLabel, 6> kAllPreps = {
    PrepLabel::YMinus90, PrepLabel::YPlus90,  PrepLabel::XPlus90,
    PrepLabel::XMinus90, PrepLabel::X180,     PrepLabel::Identity};

const char* prep_name(PrepLabel p); // "Y-90" etc, CSV-safe
PrepLabel prep_from_name(const std::string& name);

struct TomographyRecord {
    double delta = 0.0; // rad/s
    PrepLabel prep = PrepLabel::Identity;
    double exp_x = 0.0, exp_y = 0.0, exp_z = 0.0;
    double leakage = 0.0;
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // (-pi, pi] per record; curve unwrapping is scans' job
};

struct PauliExpectations {
    double x = 0.0, y = 0.0, z = 0.0;
    double leakage = 0.0;
};

struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;
};

// Qubit-block rotation for the label (2x2); identity on levels >= 2 when
// embedded by prepare().
Eigen::Matrix2cd prep_rotation(PrepLabel label);

QuantumState prepare(PrepLabel label, const QuantumState& rho_init);

PauliExpectations measure_pauli(const QuantumState& s);

// theta = arccos(z/r), phi = atan2(y, x); poles report phi = 0. Throws on
// r <= 1e-6 where the angles stop meaning anything.
BlochAngles bloch_angles(double x, double y, double z);

// (p*I + x*sx + y*sy + z*sz)/(2p), p = 1 - leakage: leakage is renormalized
// away rather than folded in, since the experiment reconstructs only the
// qubit block. Eigenvalues down to -1e-9 are clipped to zero.
Eigen::Matrix2cd reconstruct_qubit_dm(double x, double y, double z,
                                      double leakage);

double uhlmann_fidelity(const Eigen::Matrix2cd& rho1,
                        const Eigen::Matrix2cd& rho2);

// Reference state for the fidelity sweep: ideal gate applied to the prepared
// mixture diag(1-q, q) with q = theory_excited.
Eigen::Matrix2cd theory_qubit_state(double delta, PrepLabel prep,
                                    const ExperimentConfig& cfg);

// Full pipeline: thermal init -> prep -> drive frame -> pulse -> qubit frame
// -> Pauli readout -> angles.
TomographyRecord zgate_tomography(double delta, PrepLabel prep,
                                  const ExperimentConfig& cfg);

} // namespace sechsim
