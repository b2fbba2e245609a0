#include "sechsim/kernels.hpp"

#ifdef SECHSIM_HAVE_NEON
#include <arm_neon.h>
#include <cmath>

namespace sechsim::kernels {
namespace {

// One complex<double> per float64x2_t, [re im]. Mirrors the scalar operation
// order; the -t2[0] negation is exact so results stay bitwise identical.
void matmul_neon(int n, const std::complex<double>* a,
                 const std::complex<double>* b, std::complex<double>* c) {
    const double* ad = reinterpret_cast<const double*>(a);
    double* cd = reinterpret_cast<double*>(c);
    const float64x2_t sign = {-1.0, 1.0};
    for (int j = 0; j < n; ++j) {
        double* cj = cd + 2L * j * n;
        for (int i = 0; i < 2 * n; ++i) cj[i] = 0.0;
        for (int k = 0; k < n; ++k) {
            const std::complex<double> bk = b[static_cast<long>(j) * n + k];
            const float64x2_t br = vdupq_n_f64(bk.real());
            const float64x2_t bi = vdupq_n_f64(bk.imag());
            const double* ak = ad + 2L * k * n;
            for (int i = 0; i < n; ++i) {
                const float64x2_t av = vld1q_f64(ak + 2 * i);
                const float64x2_t sw = vextq_f64(av, av, 1);
                const float64x2_t t1 = vmulq_f64(av, br);
                const float64x2_t t2 = vmulq_f64(vmulq_f64(sw, bi), sign);
                const float64x2_t cv = vld1q_f64(cj + 2 * i);
                vst1q_f64(cj + 2 * i, vaddq_f64(cv, vaddq_f64(t1, t2)));
            }
        }
    }
}

void quantize_neon(int n, const double* shape, double levels, double* out) {
    const float64x2_t lv = vdupq_n_f64(levels);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vmulq_f64(vld1q_f64(shape + i), lv);
        vst1q_f64(out + i, vdivq_f64(vrndnq_f64(x), lv));
    }
    for (; i < n; ++i) out[i] = std::nearbyint(shape[i] * levels) / levels;
}

} // namespace

const Ops* neon() {
    static const Ops ops{"neon", matmul_neon, quantize_neon};
    return &ops;
}

} // namespace sechsim::kernels

#endif
