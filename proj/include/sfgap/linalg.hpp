#pragma once

#include "sfgap/config.hpp"
#include "sfgap/errors.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sfgap {

// Dense vector with explicit dimension. The checked entry points (list
// construction, from()) reject NaN/inf; element writes are unchecked since
// the numeric code owns its intermediates.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n, double fill = 0.0) : x_(n, fill) {}
    Vec(std::initializer_list<double> xs);

    static Vec from(std::vector<double> xs); // validates finiteness

    std::size_t size() const { return x_.size(); }
    bool empty() const { return x_.empty(); }
    double& operator[](std::size_t i) { return x_[i]; }
    const double& operator[](std::size_t i) const { return x_[i]; }
    double* data() { return x_.data(); }
    const double* data() const { return x_.data(); }
    const std::vector<double>& raw() const { return x_; }

    bool finite() const;

private:
    std::vector<double> x_;
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& a);
Vec& operator+=(Vec& a, const Vec& b);
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
double norm1(const Vec& a);
bool approx_equal(const Vec& a, const Vec& b, double tol);

// Dense row-major matrix.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    double* row(std::size_t r) { return a_.data() + r * cols_; }
    const double* row(std::size_t r) const { return a_.data() + r * cols_; }

    Vec col(std::size_t c) const;
    Mat transposed() const;
    Vec mul(const Vec& x) const;        // A x
    Vec mul_transposed(const Vec& y) const; // A^T y

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Singular values of a (rows x cols) matrix, descending, via one-sided
// Jacobi rotations. Also exposes the accumulated right factor V so callers
// can read null-space directions (columns of V paired with ~0 values).
struct SvdResult {
    std::vector<double> values; // descending
    Mat v;                      // cols x cols orthogonal, matching `values` order
};
SvdResult jacobi_svd(const Mat& a);

std::vector<double> singular_values(const Mat& a);

// Rank of the difference set {p_t - p_0} with singular values thresholded at
// tol * max(1, sigma_max). Throws invalid_input on an empty list or mixed
// dimensions.
int affine_rank(const std::vector<Vec>& points, double tol = tol::rank);

// Orthonormal extension: returns a dim x dim orthogonal matrix whose first
// columns span the same subspace as partial_basis (modified Gram-Schmidt,
// reorthogonalized). Remaining columns are picked greedily from the standard
// basis by largest residual, lowest index on ties. Throws invalid_input if
// the partial basis is dependent at tolerance tol.
Mat orthonormal_frame(const std::vector<Vec>& partial_basis, std::size_t dim,
                      double tol = tol::rank);

// Maximal independent orthonormal set spanning the given vectors (same MGS
// core as orthonormal_frame, dependent vectors skipped).
std::vector<Vec> orthonormal_span(const std::vector<Vec>& vectors, double tol = tol::rank);

} // namespace sfgap
