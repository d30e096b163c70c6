#include "sfgap/kernels.hpp"

#include <cmath>

namespace sfgap::kernels {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += a[i] * b[i];
    return r;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double* x, double alpha, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double sum_scalar(const double* x, std::size_t n) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += x[i];
    return r;
}

double max_abs_scalar(const double* x, std::size_t n) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

double (*dot)(const double*, const double*, std::size_t) = dot_scalar;
void (*axpy)(double, const double*, double*, std::size_t) = axpy_scalar;
void (*scale)(double*, double, std::size_t) = scale_scalar;
double (*sum)(const double*, std::size_t) = sum_scalar;
double (*max_abs)(const double*, std::size_t) = max_abs_scalar;

namespace {
const char* g_isa = "scalar";
} // namespace

const char* active_isa() { return g_isa; }

void use_scalar() {
    dot = dot_scalar;
    axpy = axpy_scalar;
    scale = scale_scalar;
    sum = sum_scalar;
    max_abs = max_abs_scalar;
    g_isa = "scalar";
}

void use_best() {
    use_scalar();
#if defined(SFGAP_BUILD_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        dot = dot_avx2;
        axpy = axpy_avx2;
        scale = scale_avx2;
        sum = sum_avx2;
        max_abs = max_abs_avx2;
        g_isa = "avx2";
    }
#elif defined(__aarch64__)
    dot = dot_neon;
    axpy = axpy_neon;
    scale = scale_neon;
    sum = sum_neon;
    max_abs = max_abs_neon;
    g_isa = "neon";
#endif
}

namespace {
struct install_best {
    install_best() { use_best(); }
};
const install_best g_install;
} // namespace

} // namespace sfgap::kernels
