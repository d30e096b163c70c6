#pragma once

#include "sfgap/nonconvexity.hpp"

#include <vector>

namespace sfgap::bounds {

// Worst-case k-allocation: maximize sum_i rho^{k_i}_i over integer k_i in
// [1, m+1] with sum k_i <= m + n.
struct Allocation {
    double value = 0.0;        // B
    std::vector<int> k;        // maximizing allocation, lexicographically smallest
    rho::Flag flag = rho::Flag::exact; // upper_bound if any selected entry is one
};

// Exact dynamic program over the extra-units budget e_i = k_i - 1,
// sum e_i <= m (O(n m^2) states); ties resolved toward smaller k_i.
Allocation solve_allocation(const rho::Table& table, int m);

// min{m+1, n} * max_i rho_i.
double bound_classic(const std::vector<double>& rhos, int m);

// Sum of the min{m, n} largest rho_i.
double bound_udell(std::vector<double> rhos, int m);

// Closed-form optima of the allocation problem for the two route-choice
// utility families (valid when every block has at least m+1 choices) and for
// the per-tone crosstalk family.
double closed_form_num_throughput(int users, int links, double c_max);
double closed_form_num_log(int users, int links);

struct DsmClosedForm {
    double refined;     // (min{N,L}/N) log((1 + L/min{N,L}) / sigma_min)
    double udell_form;  // (min{N,L}/N) log((L+1) / sigma_min)
};
DsmClosedForm closed_form_dsm(int tones, int users, double sigma_min);

} // namespace sfgap::bounds
