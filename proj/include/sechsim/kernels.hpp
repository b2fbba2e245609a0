#pragma once
#include <complex>

// Small dense kernels under the propagator hot loop. A scalar reference
// implementation is always available; SIMD variants (AVX2 on x86-64, NEON on
// aarch64) are selected at runtime. All variants compute bitwise-identical
// results: the complex multiply is two multiplies plus one add/sub per lane,
// never fused, and the kernel translation units are built with
// -ffp-contract=off.

namespace sechsim::kernels {

struct Ops {
    const char* name;
    // C = A*B for column-major n x n complex matrices; C must not alias A or B.
    void (*matmul)(int n, const std::complex<double>* a,
                   const std::complex<double>* b, std::complex<double>* c);
    // out[i] = nearbyint(shape[i]*levels)/levels (round-half-even, as the
    // vector rounding instructions do).
    void (*quantize)(int n, const double* shape, double levels, double* out);
};

const Ops& scalar();
const Ops* avx2();   // nullptr when unsupported by build or CPU
const Ops* neon();   // nullptr when unsupported by build
const Ops& active(); // best variant for this machine, chosen once

} // namespace sechsim::kernels
