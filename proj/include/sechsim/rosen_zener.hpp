#pragma once
#include <Eigen/Dense>

namespace sechsim {

struct RZParams {
    double omega0 = 0.0; // rad/s, rotating-frame peak
    double rho = 0.0;    // rad/s
    double delta = 0.0;  // rad/s
};

// phi = 4*atan(rho/delta), the relative |1> vs |0> phase after the n=1 cyclic
// sech pulse; (0, 2pi) for delta > 0, (-2pi, 0) for delta < 0.
double sech_phase(double rho, double delta);

// Infinite-window sech transition probability from |0>:
//   P = sin^2(pi*omega0 / (2*rho)) * sech^2(pi*delta / (2*rho))
// Zero for omega0 = 2*n*rho, unity for the resonant pi pulse omega0 = rho.
double rz_transition_probability(const RZParams& p);

// Ideal n=1 gate diag(e^{-i phi/2}, e^{+i phi/2}); the sign pairs with the
// frozen frame sign in to_qubit_frame so the extracted azimuth equals
// sech_phase.
Eigen::Matrix2cd rz_2pi_propagator(double rho, double delta);

} // namespace sechsim
