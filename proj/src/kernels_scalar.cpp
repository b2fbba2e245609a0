#include "sechsim/kernels.hpp"
#include <cmath>

namespace sechsim::kernels {
namespace {

// Reference kernel. Loop order and operation order are the contract: the SIMD
// variants replicate them exactly (j, k outer; accumulate down column j; each
// complex product is re = ar*br - ai*bi, im = ai*br + ar*bi).
void matmul_scalar(int n, const std::complex<double>* a,
                   const std::complex<double>* b, std::complex<double>* c) {
    for (int j = 0; j < n; ++j) {
        std::complex<double>* cj = c + static_cast<long>(j) * n;
        for (int i = 0; i < n; ++i) cj[i] = {0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            const std::complex<double> bk = b[static_cast<long>(j) * n + k];
            const double br = bk.real(), bi = bk.imag();
            const std::complex<double>* ak = a + static_cast<long>(k) * n;
            for (int i = 0; i < n; ++i) {
                const double ar = ak[i].real(), ai = ak[i].imag();
                const double pr = ar * br - ai * bi;
                const double pi = ai * br + ar * bi;
                cj[i] = {cj[i].real() + pr, cj[i].imag() + pi};
            }
        }
    }
}

void quantize_scalar(int n, const double* shape, double levels, double* out) {
    for (int i = 0; i < n; ++i)
        out[i] = std::nearbyint(shape[i] * levels) / levels;
}

} // namespace

const Ops& scalar() {
    static const Ops ops{"scalar", matmul_scalar, quantize_scalar};
    return ops;
}

} // namespace sechsim::kernels
