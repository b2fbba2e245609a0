#include "sechsim/rosen_zener.hpp"

#include <cmath>
#include <stdexcept>

namespace sechsim {

double sech_phase(double rho, double delta) {
    if (!(rho > 0.0)) throw std::invalid_argument("sech_phase: rho must be > 0");
    if (delta == 0.0) throw std::invalid_argument("sech_phase: delta = 0 is the branch point");
    return 4.0 * std::atan(rho / delta);
}

double rz_transition_probability(const RZParams& p) {
    if (!(p.rho > 0.0)) throw std::invalid_argument("rz_transition_probability: rho must be > 0");
    if (p.omega0 < 0.0) throw std::invalid_argument("rz_transition_probability: omega0 must be >= 0");
    const double s = std::sin(M_PI * p.omega0 / (2.0 * p.rho));
    const double c = 1.0 / std::cosh(M_PI * p.delta / (2.0 * p.rho));
    return s * s * c * c;
}

Eigen::Matrix2cd rz_2pi_propagator(double rho, double delta) {
    const double phi = sech_phase(rho, delta);
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
    u(0, 0) = std::exp(std::complex<double>(0.0, -0.5 * phi));
    u(1, 1) = std::exp(std::complex<double>(0.0, +0.5 * phi));
    return u;
}

} // namespace sechsim
