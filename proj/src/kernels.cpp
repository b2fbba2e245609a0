#include "sechsim/kernels.hpp"

namespace sechsim::kernels {

#ifndef SECHSIM_HAVE_AVX2
const Ops* avx2() { return nullptr; }
#endif
#ifndef SECHSIM_HAVE_NEON
const Ops* neon() { return nullptr; }
#endif

const Ops& active() {
    static const Ops& chosen = []() -> const Ops& {
        if (const Ops* v = avx2()) return *v;
        if (const Ops* v = neon()) return *v;
        return scalar();
    }();
    return chosen;
}

} // namespace sechsim::kernels
