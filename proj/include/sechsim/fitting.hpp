#pragma once
#include <cstddef>

namespace sechsim {

struct QuadraticVertex {
    double x_star = 0.0;    // vertex abscissa
    double y_star = 0.0;    // fitted ordinate at the vertex
    double residual = 0.0;  // rms misfit over the points used
    double curvature = 0.0; // 2a; > 0 for a minimum
};

// Least-squares parabola through n >= 3 points; callers hand in the 5 samples
// bracketing a grid minimum, the vertex is the sub-grid estimate.
QuadraticVertex fit_quadratic_vertex(const double* x, const double* y, std::size_t n);

} // namespace sechsim
