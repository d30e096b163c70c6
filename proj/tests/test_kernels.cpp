#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sfgap/kernels.hpp"
#include "sfgap/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace sfgap;

namespace {

std::vector<double> random_block(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(rng, -3.0, 3.0);
    return v;
}

} // namespace

TEST_CASE("dispatched kernels match the scalar references") {
    INFO("active isa: ", std::string(kernels::active_isa()));
    std::mt19937_64 rng(42);
    // sizes straddling the vector width, including remainders and empties
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 64u, 129u}) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto a = random_block(rng, n);
            const auto b = random_block(rng, n);
            const double alpha = uniform(rng, -2.0, 2.0);

            const double d_ref = kernels::dot_scalar(a.data(), b.data(), n);
            const double d_vec = kernels::dot(a.data(), b.data(), n);
            CHECK(std::fabs(d_ref - d_vec) <= 1e-12 * (1.0 + std::fabs(d_ref)));

            const double s_ref = kernels::sum_scalar(a.data(), n);
            const double s_vec = kernels::sum(a.data(), n);
            CHECK(std::fabs(s_ref - s_vec) <= 1e-12 * (1.0 + std::fabs(s_ref)));

            // max is exactly associative, so vector and scalar reductions agree bitwise
            CHECK(kernels::max_abs(a.data(), n) == kernels::max_abs_scalar(a.data(), n));

            auto y_ref = b, y_vec = b;
            kernels::axpy_scalar(alpha, a.data(), y_ref.data(), n);
            kernels::axpy(alpha, a.data(), y_vec.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::fabs(y_ref[i] - y_vec[i]) <= 1e-14 * (1.0 + std::fabs(y_ref[i])));

            auto x_ref = a, x_vec = a;
            kernels::scale_scalar(x_ref.data(), alpha, n);
            kernels::scale(x_vec.data(), alpha, n);
            for (std::size_t i = 0; i < n; ++i) CHECK(x_ref[i] == x_vec[i]);
        }
    }
}

TEST_CASE("scalar forcing switches the dispatch table and back") {
    const std::string before = kernels::active_isa();
    kernels::use_scalar();
    CHECK(std::string(kernels::active_isa()) == "scalar");
    const double a[3] = {1.0, 2.0, 3.0};
    CHECK(kernels::dot(a, a, 3) == 14.0);
    kernels::use_best();
    CHECK(std::string(kernels::active_isa()) == before);
}
