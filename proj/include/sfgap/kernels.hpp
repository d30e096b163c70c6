#pragma once

#include <cstddef>

namespace sfgap::kernels {

// Dense double-precision kernels behind the simplex tableau and the vector
// math in the geometry code. Scalar reference implementations are always
// available; on x86-64 an AVX2/FMA variant of each is installed at startup
// when the CPU supports it (NEON on aarch64). Reductions may differ from the
// scalar path in the last bits because of reassociation; the equivalence
// tests compare at 1e-12 relative.

double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n); // y += alpha*x
void scale_scalar(double* x, double alpha, std::size_t n);                 // x *= alpha
double sum_scalar(const double* x, std::size_t n);
double max_abs_scalar(const double* x, std::size_t n);

extern double (*dot)(const double*, const double*, std::size_t);
extern void (*axpy)(double, const double*, double*, std::size_t);
extern void (*scale)(double*, double, std::size_t);
extern double (*sum)(const double*, std::size_t);
extern double (*max_abs)(const double*, std::size_t);

// Name of the active implementation: "avx2", "neon" or "scalar".
const char* active_isa();

// Force the scalar path / reinstall the best one (used by equivalence tests).
void use_scalar();
void use_best();

#if defined(__AVX2__) || defined(SFGAP_BUILD_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void scale_avx2(double* x, double alpha, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
double max_abs_avx2(const double* x, std::size_t n);
#endif

#if defined(__aarch64__)
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void scale_neon(double* x, double alpha, std::size_t n);
double sum_neon(const double* x, std::size_t n);
double max_abs_neon(const double* x, std::size_t n);
#endif

} // namespace sfgap::kernels
