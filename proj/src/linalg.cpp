#include "sfgap/linalg.hpp"

#include "sfgap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sfgap {

Vec::Vec(std::initializer_list<double> xs) : x_(xs) {
    if (!finite()) throw invalid_input("Vec: non-finite entry");
}

Vec Vec::from(std::vector<double> xs) {
    Vec v;
    v.x_ = std::move(xs);
    if (!v.finite()) throw invalid_input("Vec: non-finite entry");
    return v;
}

bool Vec::finite() const {
    for (double x : x_)
        if (!std::isfinite(x)) return false;
    return true;
}

namespace {
void require_same_size(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw invalid_input("Vec: dimension mismatch");
}
} // namespace

Vec operator+(const Vec& a, const Vec& b) {
    require_same_size(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    require_same_size(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator*(double s, const Vec& a) {
    Vec r = a;
    kernels::scale(r.data(), s, r.size());
    return r;
}

Vec& operator+=(Vec& a, const Vec& b) {
    require_same_size(a, b);
    kernels::axpy(1.0, b.data(), a.data(), a.size());
    return a;
}

double dot(const Vec& a, const Vec& b) {
    require_same_size(a, b);
    return kernels::dot(a.data(), b.data(), a.size());
}

double norm2(const Vec& a) { return std::sqrt(kernels::dot(a.data(), a.data(), a.size())); }

double norm_inf(const Vec& a) { return kernels::max_abs(a.data(), a.size()); }

double norm1(const Vec& a) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r += std::fabs(a[i]);
    return r;
}

bool approx_equal(const Vec& a, const Vec& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > tol) return false;
    return true;
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec Mat::col(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vec Mat::mul(const Vec& x) const {
    if (x.size() != cols_) throw invalid_input("Mat::mul: dimension mismatch");
    Vec y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) y[r] = kernels::dot(row(r), x.data(), cols_);
    return y;
}

Vec Mat::mul_transposed(const Vec& y) const {
    if (y.size() != rows_) throw invalid_input("Mat::mul_transposed: dimension mismatch");
    Vec x(cols_);
    for (std::size_t r = 0; r < rows_; ++r) kernels::axpy(y[r], row(r), x.data(), cols_);
    return x;
}

SvdResult jacobi_svd(const Mat& a) {
    // One-sided Jacobi on columns: work = a * V with pairwise-orthogonal
    // columns at convergence; column norms are the singular values. Wide
    // matrices are fine (this is cyclic Jacobi on the Gram matrix), the
    // extra columns just converge to zero norm - their V columns are the
    // null directions the Caratheodory reduction reads off.
    const std::size_t rows = a.rows(), cols = a.cols();

    // column-major workspace for contiguous column ops
    std::vector<std::vector<double>> col(cols, std::vector<double>(rows));
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) col[c][r] = a(r, c);

    Mat v = Mat::identity(cols);
    const double eps = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool changed = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                const double app = kernels::dot(col[p].data(), col[p].data(), rows);
                const double aqq = kernels::dot(col[q].data(), col[q].data(), rows);
                const double apq = kernels::dot(col[p].data(), col[q].data(), rows);
                if (std::fabs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
                changed = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const double xp = col[p][r], xq = col[q][r];
                    col[p][r] = cs * xp - sn * xq;
                    col[q][r] = sn * xp + cs * xq;
                }
                for (std::size_t r = 0; r < cols; ++r) {
                    const double vp = v(r, p), vq = v(r, q);
                    v(r, p) = cs * vp - sn * vq;
                    v(r, q) = sn * vp + cs * vq;
                }
            }
        }
        if (!changed) break;
    }

    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c)
        sv[c] = std::sqrt(kernels::dot(col[c].data(), col[c].data(), rows));

    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sv[i] > sv[j]; });

    SvdResult res;
    res.values.resize(cols);
    res.v = Mat(cols, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        res.values[c] = sv[order[c]];
        for (std::size_t r = 0; r < cols; ++r) res.v(r, c) = v(r, order[c]);
    }
    return res;
}

std::vector<double> singular_values(const Mat& a) { return jacobi_svd(a).values; }

int affine_rank(const std::vector<Vec>& points, double tol) {
    if (points.empty()) throw invalid_input("affine_rank: empty point list");
    const std::size_t m = points[0].size();
    for (const Vec& p : points)
        if (p.size() != m) throw invalid_input("affine_rank: mixed dimensions");
    if (points.size() == 1) return 0;

    Mat d(points.size() - 1, m);
    for (std::size_t t = 1; t < points.size(); ++t)
        for (std::size_t c = 0; c < m; ++c) d(t - 1, c) = points[t][c] - points[0][c];

    std::vector<double> sv = singular_values(d);
    if (sv.empty()) return 0;
    const double cut = tol * std::max(1.0, sv.front());
    int rank = 0;
    for (double s : sv)
        if (s > cut) ++rank;
    return rank;
}

namespace {

// Project prev columns out of w twice (reorthogonalization keeps the frame
// orthonormal to ~1e-15 even for nearly dependent input).
void project_out(Vec& w, const std::vector<Vec>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const Vec& u : basis) {
            const double c = dot(u, w);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * u[i];
        }
}

} // namespace

Mat orthonormal_frame(const std::vector<Vec>& partial_basis, std::size_t dim, double tol) {
    std::vector<Vec> cols;
    cols.reserve(dim);
    for (const Vec& b : partial_basis) {
        if (b.size() != dim) throw invalid_input("orthonormal_frame: dimension mismatch");
        Vec w = b;
        project_out(w, cols);
        const double nrm = norm2(w);
        if (nrm <= tol * std::max(1.0, norm2(b)))
            throw invalid_input("orthonormal_frame: dependent basis vectors");
        cols.push_back((1.0 / nrm) * w);
    }
    while (cols.size() < dim) {
        // greedy: the standard basis vector with the largest residual
        std::size_t best = dim;
        double best_nrm = -1.0;
        Vec best_w;
        for (std::size_t j = 0; j < dim; ++j) {
            Vec w(dim);
            w[j] = 1.0;
            project_out(w, cols);
            const double nrm = norm2(w);
            if (nrm > best_nrm + 1e-12) {
                best_nrm = nrm;
                best = j;
                best_w = w;
            }
        }
        if (best == dim || best_nrm <= tol)
            throw numeric_breakdown("orthonormal_frame: could not extend basis");
        cols.push_back((1.0 / best_nrm) * best_w);
    }
    Mat q(dim, dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) q(r, c) = cols[c][r];
    return q;
}

std::vector<Vec> orthonormal_span(const std::vector<Vec>& vectors, double tol) {
    std::vector<Vec> basis;
    for (const Vec& v : vectors) {
        Vec w = v;
        project_out(w, basis);
        const double nrm = norm2(w);
        if (nrm > tol * std::max(1.0, norm2(v))) basis.push_back((1.0 / nrm) * w);
    }
    return basis;
}

} // namespace sfgap
