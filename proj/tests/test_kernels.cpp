#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "sechsim/kernels.hpp"

using namespace sechsim;
using cd = std::complex<double>;

namespace {

std::vector<cd> random_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cd> m(static_cast<size_t>(n) * n);
    for (auto& z : m) z = {u(rng), u(rng)};
    return m;
}

} // namespace

TEST_CASE("scalar matmul matches Eigen") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4, 5, 6}) {
        const auto a = random_matrix(n, rng);
        const auto b = random_matrix(n, rng);
        std::vector<cd> c(static_cast<size_t>(n) * n);
        kernels::scalar().matmul(n, a.data(), b.data(), c.data());

        using Mat = Eigen::Map<const Eigen::MatrixXcd>;
        const Eigen::MatrixXcd ref = Mat(a.data(), n, n) * Mat(b.data(), n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(c[static_cast<size_t>(j) * n + i] - ref(i, j)) < 1e-13);
    }
}

TEST_CASE("active kernel is bitwise-identical to the scalar reference") {
    const kernels::Ops& act = kernels::active();
    const kernels::Ops& ref = kernels::scalar();
    INFO("active kernel: ", act.name);
    std::mt19937_64 rng(99);
    for (int n = 1; n <= 8; ++n) { // odd sizes exercise the SIMD remainder
        const auto a = random_matrix(n, rng);
        const auto b = random_matrix(n, rng);
        std::vector<cd> c1(static_cast<size_t>(n) * n), c2(c1.size());
        ref.matmul(n, a.data(), b.data(), c1.data());
        act.matmul(n, a.data(), b.data(), c2.data());
        CHECK(std::memcmp(c1.data(), c2.data(), c1.size() * sizeof(cd)) == 0);
    }
}

TEST_CASE("quantizer code arithmetic") {
    const double levels = 255.0;
    auto q1 = [&](double x) {
        double out = 0.0;
        kernels::scalar().quantize(1, &x, levels, &out);
        return out;
    };
    CHECK(q1(0.0) == 0.0);
    CHECK(q1(1.0) == 1.0);
    CHECK(q1(0.5) == 128.0 / 255.0); // 127.5 rounds to the even code
    CHECK(q1(0.4 / 255.0) == 0.0);
    CHECK(q1(0.5 / 255.0) == 0.0);   // tie to even: code 0
    CHECK(q1(1.5 / 255.0) == 2.0 / 255.0); // tie to even: code 2
    CHECK(q1(254.5 / 255.0) == 254.0 / 255.0);
}

TEST_CASE("quantizer bound and scalar/SIMD equality") {
    const kernels::Ops& act = kernels::active();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n : {1, 3, 8, 17, 101}) {
        std::vector<double> in(static_cast<size_t>(n)), q_ref(in.size()),
            q_act(in.size());
        for (auto& x : in) x = u(rng);
        const double levels = 255.0;
        kernels::scalar().quantize(n, in.data(), levels, q_ref.data());
        act.quantize(n, in.data(), levels, q_act.data());
        CHECK(std::memcmp(q_ref.data(), q_act.data(), q_ref.size() * sizeof(double)) == 0);
        for (size_t i = 0; i < in.size(); ++i)
            CHECK(std::abs(q_ref[i] - in[i]) <= 0.5 / levels + 1e-15);
    }
}

TEST_CASE("runtime dispatch names a kernel") {
    CHECK(kernels::active().name != nullptr);
    CHECK(kernels::active().matmul != nullptr);
    CHECK(kernels::active().quantize != nullptr);
#if defined(__AVX2__) || defined(SECHSIM_HAVE_AVX2)
    // when the build has the AVX2 TU and the host supports it, it must win
    if (__builtin_cpu_supports("avx2"))
        CHECK(std::string(kernels::active().name) == "avx2");
#endif
}
