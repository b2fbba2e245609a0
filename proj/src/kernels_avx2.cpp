#include "sechsim/kernels.hpp"

#ifdef SECHSIM_HAVE_AVX2
#include <immintrin.h>

namespace sechsim::kernels {
namespace {

// Two complex<double> per __m256d, interleaved [re0 im0 re1 im1].
// Complex product against a scalar b = br + i*bi:
//   t1 = a * [br br br br]
//   t2 = swap_pairs(a) * [bi bi bi bi]
//   addsub(t1, t2) = [ar*br - ai*bi, ai*br + ar*bi, ...]
// Same multiplies and the same single add/sub as the scalar reference; no FMA.
void matmul_avx2(int n, const std::complex<double>* a,
                 const std::complex<double>* b, std::complex<double>* c) {
    const double* ad = reinterpret_cast<const double*>(a);
    double* cd = reinterpret_cast<double*>(c);
    const int vec = n & ~1; // pairs of complex elements
    for (int j = 0; j < n; ++j) {
        double* cj = cd + 2L * j * n;
        for (int i = 0; i < 2 * n; ++i) cj[i] = 0.0;
        for (int k = 0; k < n; ++k) {
            const std::complex<double> bk = b[static_cast<long>(j) * n + k];
            const __m256d br = _mm256_set1_pd(bk.real());
            const __m256d bi = _mm256_set1_pd(bk.imag());
            const double* ak = ad + 2L * k * n;
            int i = 0;
            for (; i < vec; i += 2) {
                const __m256d av = _mm256_loadu_pd(ak + 2 * i);
                const __m256d sw = _mm256_permute_pd(av, 0x5);
                const __m256d t1 = _mm256_mul_pd(av, br);
                const __m256d t2 = _mm256_mul_pd(sw, bi);
                const __m256d pr = _mm256_addsub_pd(t1, t2);
                const __m256d cv = _mm256_loadu_pd(cj + 2 * i);
                _mm256_storeu_pd(cj + 2 * i, _mm256_add_pd(cv, pr));
            }
            for (; i < n; ++i) { // odd remainder, scalar formula
                const double ar = ak[2 * i], ai = ak[2 * i + 1];
                const double pr = ar * bk.real() - ai * bk.imag();
                const double pi = ai * bk.real() + ar * bk.imag();
                cj[2 * i] += pr;
                cj[2 * i + 1] += pi;
            }
        }
    }
}

void quantize_avx2(int n, const double* shape, double levels, double* out) {
    const __m256d lv = _mm256_set1_pd(levels);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(shape + i), lv);
        const __m256d r =
            _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        _mm256_storeu_pd(out + i, _mm256_div_pd(r, lv));
    }
    for (; i < n; ++i) out[i] = __builtin_nearbyint(shape[i] * levels) / levels;
}

} // namespace

const Ops* avx2() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Ops ops{"avx2", matmul_avx2, quantize_avx2};
    return &ops;
}

} // namespace sechsim::kernels

#else

namespace sechsim::kernels {
const Ops* avx2() { return nullptr; }
} // namespace sechsim::kernels

#endif
