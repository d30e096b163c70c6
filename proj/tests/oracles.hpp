#pragma once

// Test-only oracles, deliberately independent of the library's solvers:
// Gaussian elimination + exhaustive vertex enumeration stand in for the
// simplex, plain recursion stands in for the allocation DP, and grid brute
// force stands in for the closed-form conjugates.

#include "sfgap/lp.hpp"
#include "sfgap/nonconvexity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracles {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Solves a dense square system by Gaussian elimination with partial pivoting;
// nullopt when the matrix is singular at the given tolerance.
inline std::optional<std::vector<double>> gauss_solve(std::vector<std::vector<double>> a,
                                                      std::vector<double> b,
                                                      double tol = 1e-11) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < tol) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

struct VertexOptimum {
    sfgap::lp::Status status = sfgap::lp::Status::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

// Brute-force LP oracle: enumerate all basis subsets of [A_eq; A_ub | I],
// solve each square system, keep feasible vertices. Only meaningful for
// problems whose feasible set is a polytope (tests add box rows), where the
// optimum is attained at an enumerated vertex.
inline VertexOptimum enumerate_lp(const sfgap::lp::Problem& p, double feas_tol = 1e-9) {
    const std::size_t n = p.vars();
    const std::size_t me = p.eq_rows.size(), mu = p.ub_rows.size();
    const std::size_t rows = me + mu, cols = n + mu;

    std::vector<std::vector<double>> a(rows, std::vector<double>(cols, 0.0));
    std::vector<double> rhs(rows);
    for (std::size_t r = 0; r < me; ++r) {
        for (std::size_t j = 0; j < n; ++j) a[r][j] = p.eq_rows[r][j];
        rhs[r] = p.eq_rhs[r];
    }
    for (std::size_t r = 0; r < mu; ++r) {
        for (std::size_t j = 0; j < n; ++j) a[me + r][j] = p.ub_rows[r][j];
        a[me + r][n + r] = 1.0;
        rhs[me + r] = p.ub_rhs[r];
    }
    // shift x = lower + u
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < n; ++j) rhs[r] -= a[r][j] * p.lower[j];

    VertexOptimum best;
    if (rows == 0) return best; // not used by the tests

    std::vector<int> pick(rows);
    std::vector<char> chosen(cols, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t depth) {
        if (depth == rows) {
            std::vector<std::vector<double>> bmat(rows, std::vector<double>(rows));
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < rows; ++c) bmat[r][c] = a[r][pick[c]];
            const auto sol = gauss_solve(bmat, rhs);
            if (!sol) return;
            std::vector<double> u(cols, 0.0);
            bool nonneg = true;
            for (std::size_t c = 0; c < rows; ++c) {
                u[pick[c]] = (*sol)[c];
                nonneg &= (*sol)[c] >= -feas_tol;
            }
            if (!nonneg) return;
            double obj = 0.0;
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) {
                x[j] = p.lower[j] + u[j];
                obj += p.c[j] * x[j];
            }
            if (best.status == sfgap::lp::Status::Infeasible || obj < best.objective) {
                best.status = sfgap::lp::Status::Optimal;
                best.objective = obj;
                best.x = x;
            }
            return;
        }
        for (std::size_t j = from; j < cols; ++j) {
            pick[depth] = static_cast<int>(j);
            rec(j + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

// Exhaustive allocation oracle: all k vectors in [1, m+1]^n with sum <= m+n.
struct AllocOracle {
    double value = -kInf;
    std::vector<int> k;
};

inline AllocOracle enumerate_allocation(const sfgap::rho::Table& t, int m) {
    const int n = static_cast<int>(t.blocks());
    AllocOracle best;
    std::vector<int> k(n, 1);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == n) {
            double v = 0.0;
            for (int b = 0; b < n; ++b) v += t.rows[b][k[b] - 1].value;
            if (v > best.value) {
                best.value = v;
                best.k = k;
            }
            return;
        }
        for (int ki = 1; ki <= m + 1 && used + (ki - 1) <= m; ++ki) {
            k[i] = ki;
            rec(i + 1, used + ki - 1);
        }
    };
    rec(0, 0);
    return best;
}

} // namespace oracles
