#include "sechsim/fitting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace sechsim {

QuadraticVertex fit_quadratic_vertex(const double* x, const double* y, std::size_t n) {
    if (n < 3) throw std::invalid_argument("fit_quadratic_vertex: need at least 3 points");

    // Center and scale the abscissa before forming normal equations; raw grid
    // values can be ~1e9 and would wreck the conditioning of the Vandermonde.
    double x0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) x0 += x[i];
    x0 /= static_cast<double>(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(x[i] - x0));
    if (scale == 0.0) throw std::invalid_argument("fit_quadratic_vertex: degenerate abscissa");

    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (x[i] - x0) / scale;
        a(i, 0) = u * u;
        a(i, 1) = u;
        a(i, 2) = 1.0;
        b(i) = y[i];
    }
    const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(b);
    const double ca = coef(0), cb = coef(1), cc = coef(2);
    if (ca == 0.0) throw std::runtime_error("fit_quadratic_vertex: zero curvature");

    const double u_star = -cb / (2.0 * ca);
    QuadraticVertex v;
    v.x_star = x0 + scale * u_star;
    v.y_star = cc - cb * cb / (4.0 * ca);
    v.curvature = 2.0 * ca / (scale * scale);
    const Eigen::VectorXd r = a * coef - b;
    v.residual = std::sqrt(r.squaredNorm() / static_cast<double>(n));
    return v;
}

} // namespace sechsim
