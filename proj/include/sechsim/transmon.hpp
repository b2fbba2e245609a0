#pragma once
#include <Eigen/Dense>

namespace sechsim {

struct TransmonParams {
    int n_levels = 4;
    double omega10 = 2.0 * M_PI * 5.18e9; // rad/s
    double alpha = 2.0 * M_PI * 200e6;    // rad/s, omega10 - omega21
    double delta = 0.0;                   // rad/s, omega_D - omega10
};

void validate(const TransmonParams& p);

enum class Frame { DriveFrame, QubitFrame };

struct QuantumState {
    Eigen::MatrixXcd rho;
    Frame frame = Frame::QubitFrame;

    int dim() const { return static_cast<int>(rho.rows()); }
};

// Throws if rho is not a density matrix (Hermitian, unit trace, PSD).
void validate(const QuantumState& s);

// Drive-frame RWA Hamiltonian (rad/s):
//   diagonal  d_n = -n*Delta - (alpha/2)*n*(n-1)
//   (n, n+1)  = (envelope/2)*sqrt(n+1)
Eigen::MatrixXcd build_drive_frame_hamiltonian(const TransmonParams& p,
                                               double envelope);

// Drive frame and qubit frame share the t=0 phase origin, so entering the
// drive frame at pulse start is just the tag flip.
QuantumState enter_drive_frame(const QuantumState& s);

// rho <- R rho R+ with R = diag(e^{-i n Delta elapsed}); the frame sign was
// fixed during bring-up against the analytic phase law and is frozen here.
// elapsed must be the zero-order-hold duration N*dt of the played waveform.
QuantumState to_qubit_frame(const QuantumState& s, double delta, double elapsed);

QuantumState initial_thermal_state(double p_excited, int dim);

} // namespace sechsim
