#pragma once

#include "sfgap/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sfgap::rho {

enum class Flag { exact, upper_bound };

struct Value {
    double value = 0.0;
    Flag flag = Flag::exact;
};

// k-th nonconvexity of min(x_1..x_n) on the unit box: (k-1)/k up to k = n,
// then (n-1)/n. Exact for every k.
Value min_box(int n, int k);

// k-th nonconvexity of -log max(x_1..x_n) on the nonnegative orthant minus
// the origin: log min(k, n). Exact for every k.
Value neg_log_max(int n, int k);

// Upper bound log(k/sigma) for the crosstalk rate function h_sigma; the k = 1
// column is exactly zero. Requires 0 < sigma <= 1.
Value h_sigma_bound(int k, double sigma);

// h_sigma(x) = sum_s log((|x|_1 - x_s + sigma) / (|x|_1 + sigma)) on [0,1]^n.
double eval_h_sigma(const Vec& x, double sigma);

// The product form H(x; sigma) = exp(h_sigma(x)), used by the monotonicity /
// squeeze property tests.
double eval_H(const Vec& x, double sigma);

// Values of one block function per k column, k = 1..m+1, with per-entry
// exact / upper-bound provenance.
struct Table {
    std::vector<std::string> labels;
    std::vector<std::vector<Value>> rows;

    std::size_t blocks() const { return rows.size(); }
    int m() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()) - 1; }
    void validate() const; // k=1 column zero, rows non-decreasing and >= 0
};

Table table_min_box(const std::vector<int>& n_per_block, int m, double scale = 1.0);
Table table_neg_log_max(const std::vector<int>& n_per_block, int m);
Table table_h_sigma(const std::vector<double>& sigmas, int m, double scale = 1.0);

// Function samples on a box grid; +inf marks points outside the effective
// domain. `exact`, when set, evaluates the underlying function anywhere in
// the box (combination points otherwise only count when they land on the grid).
struct SampledFunction {
    Vec box_lo, box_hi;
    std::vector<Vec> points;
    std::vector<double> values;
    std::function<double(const Vec&)> exact;

    std::size_t dim() const { return box_lo.size(); }
    std::vector<int> finite_indices() const;
    void validate() const;
};

struct GridOptions {
    int weight_steps = 8;          // simplex lattice resolution (multiples of 1/steps)
    std::size_t subset_cap = caps::subsets;
    double grid_match_tol = 1e-9;  // snap tolerance for combination points
};

// Lower bound on the k-th nonconvexity from enumerated k-point supports and
// lattice weights. The exact uniform weight vector (1/k,..,1/k) is always
// included so the canonical equal-weight witnesses are evaluated even when
// 1/k is not a lattice multiple.
double rho_k_grid(const SampledFunction& f, int k, const GridOptions& opts = {});

// Discretized k-th envelope at x: the least achievable weighted value over
// k-subsets of the finite grid points whose weights reproduce x. An upper
// approximation of the true envelope that tightens under grid refinement.
// Throws infeasible_error when no k-subset can reproduce x.
double envelope_k(const SampledFunction& f, int k, const Vec& x, const GridOptions& opts = {});

} // namespace sfgap::rho
