#pragma once

#include "sfgap/linalg.hpp"

#include <vector>

namespace sfgap::lp {

enum class Status { Optimal, Infeasible, Unbounded };

// minimize c.x  s.t.  eq_rows x = eq_rhs,  ub_rows x <= ub_rhs,  x >= lower.
// lower defaults to zero. All data must be finite and dimension-consistent.
struct Problem {
    Problem() = default;
    explicit Problem(std::size_t nvars) : c(nvars), lower(nvars, 0.0) {}

    Vec c;
    std::vector<Vec> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<Vec> ub_rows;
    std::vector<double> ub_rhs;
    Vec lower;

    std::size_t vars() const { return c.size(); }
    void add_eq(Vec row, double rhs);
    void add_ub(Vec row, double rhs);
    void validate() const; // throws invalid_input
};

// A basic (vertex) solution. `basis` holds the final basic column labels in
// row order: label < vars() is an original variable, vars() + r is the slack
// of inequality row r. When Optimal, x has at most |basis| entries away from
// its lower bound, i.e. the solution is a vertex of the feasible polyhedron.
struct Solution {
    Status status = Status::Infeasible;
    Vec x;
    std::vector<int> basis;
    double objective = 0.0;
};

struct Options {
    double tol = tol::lp;            // feasibility / optimality tolerance
    double tol_pivot = tol::pivot;   // smallest acceptable pivot magnitude
    int bland_after_factor = 50;     // switch to Bland after factor*(rows+cols) pivots
};

// Two-phase dense tableau simplex. Dantzig pricing with lowest-index ties,
// automatic switch to Bland's rule for termination; ratio-test ties broken
// by the smallest basic label, so results are deterministic. Throws
// numeric_breakdown when pivots degrade past tol_pivot or the iteration
// guard trips.
Solution solve(const Problem& p, const Options& opt = {});

} // namespace sfgap::lp
