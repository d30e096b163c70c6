#pragma once

#include "sfgap/gapbounds.hpp"
#include "sfgap/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sfgap::apps {

// Both applications are minimizations internally (negated utilities), so the
// duality-gap machinery applies with its stated sign conventions; the CLI
// layer displays both conventions.

enum class UtilityKind { throughput, log_rate };

std::string to_string(UtilityKind k);
UtilityKind utility_kind_from_string(const std::string& s);

// Multi-path routing instance: `users` senders, `links` capacities, user i
// choosing among paths[i] paths with 0/1 routing matrix routing[i]
// (links x paths[i], every path crossing at least one link).
struct NumInstance {
    int links = 0;
    int users = 0;
    std::vector<int> paths;   // sorted descending
    std::vector<Mat> routing;
    Vec capacity;             // strictly positive
    UtilityKind kind = UtilityKind::throughput;
    std::uint64_t seed = 0;   // generator provenance, 0 for handmade instances

    double cmax() const;
    void validate() const;
};

// Deterministic pseudo-random instance: Bernoulli(1/2) link memberships with
// empty columns repaired, capacities in [0.5, 1]. Same seed, same instance,
// on every platform.
NumInstance build_num(std::uint64_t seed, int links, int users, int paths_each,
                      UtilityKind kind);

struct NumOracleOptions {
    std::size_t assignment_cap = 100000;
    double ascent_tol = 1e-8; // log-utility inner ascent convergence
    int ascent_starts = 4;
};

// Exact optimum of the minimization form. Optimal flows concentrate on one
// path per user (off-path flow burns capacity without utility), so the oracle
// enumerates single-path assignments; the inner rate problem is an LP for
// throughput and a damped multi-start coordinate ascent for log utility.
double num_primal_exact(const NumInstance& inst, const NumOracleOptions& opts = {});

// Primal optimum with capacity replaced by capacity + z (the function domain
// boxes stay those of the unperturbed instance); +inf when infeasible.
double perturbed_primal(const NumInstance& inst, const Vec& z,
                        const NumOracleOptions& opts = {});

// Dual function value q(y), via closed-form block conjugates; exact.
double num_dual_value(const NumInstance& inst, const Vec& y);

struct NumDualOptions {
    double y_cap = 10.0;
    int grid_per_axis = 21;
    int refine_steps = 500;
    int starts = 5;
    int polish_rounds = 16; // shrinking local grids around the incumbent
};

struct DualEstimate {
    double value = 0.0; // lower estimate of the dual optimum
    Vec argbest;
};

// Coarse grid over [0, y_cap]^links followed by projected supergradient
// ascent (diminishing 1/t steps) from the best grid points; returns the best
// dual value seen. Every evaluation is a true q(y), so the estimate is a
// certified lower bound on d.
DualEstimate num_dual_opt(const NumInstance& inst, const NumDualOptions& opts = {});

// Exact dual optimum for the throughput family: the biconjugate of
// -max_s(x_s) on the box [0,M]^K is -min(M, sum_s x_s), so the convexified
// problem is an LP whose optimum equals d (LP strong duality).
double num_dual_convexified(const NumInstance& inst);

// Power-allocation instance: `users` budgets, `tones` noise levels, both
// pre-scaled into (0,1].
struct DsmInstance {
    int users = 0; // L
    int tones = 0; // N
    Vec noise;     // sigma_i per tone
    Vec budget;    // p_l per user
    std::uint64_t seed = 0;

    void validate() const;
};

DsmInstance build_dsm(std::uint64_t seed, int users, int tones);
DsmInstance uniform_dsm(int users, int tones, double sigma, double budget);

struct DsmOracleOptions {
    double step = 1.0 / 16.0;      // power grid resolution, must divide 1
    std::size_t per_tone_cap = 10000;
    double y_cap_scale = 2.0;      // dual multiplier cap = scale * L / (N * sigma_min)
    int y_grid_per_axis = 21;
    int y_refine_rounds = 2;
};

struct GridEstimate {
    double value = 0.0;      // primal: upper estimate; dual: certified lower estimate
    double step_error = 0.0; // analytic grid-resolution error budget (proportional to step)
};

// Exhaustive per-tone power grids combined by dynamic programming over
// discretized budget usage; value >= true minimum.
GridEstimate dsm_primal_grid(const DsmInstance& inst, const DsmOracleOptions& opts = {});

// Dual function on the same tone grids maximized over a refined y-grid. The
// raw grid inner minimum over-estimates q, so the reported value subtracts a
// Lipschitz step correction, making it a certified lower estimate of d.
GridEstimate dsm_dual_grid(const DsmInstance& inst, const DsmOracleOptions& opts = {});

// Primal grid oracle with budgets replaced by budget + z; +inf when some
// budget turns negative.
double perturbed_primal(const DsmInstance& inst, const Vec& z,
                        const DsmOracleOptions& opts = {});

// End-to-end gap analysis: oracle values, the allocation bound B with its
// maximizer, the two coarser bounds, family closed forms, and the ordering
// verdicts, with estimate directions kept honest.
struct GapReport {
    std::string family;           // "num" | "dsm"
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;             // primal - dual, an upper estimate of the true gap
    std::string primal_direction; // "exact" | "upper"
    std::string dual_direction;   // "exact" | "lower"
    double slack = 0.0;           // tolerance used by the gap <= B verdict
    rho::Table table;
    bounds::Allocation alloc;
    double bound_udell = 0.0;
    double bound_classic = 0.0;
    std::optional<double> closed_form;
    std::optional<double> closed_form_comparison;
    bool verdict_gap_le_bound = false;
    bool verdict_bound_le_udell = false;
    bool verdict_udell_le_classic = false;
    double grid_step = 0.0; // dsm only
    std::uint64_t seed = 0;

    bool verdicts_ok() const {
        return verdict_gap_le_bound && verdict_bound_le_udell && verdict_udell_le_classic;
    }
};

GapReport gap_report(const NumInstance& inst, const NumOracleOptions& oracle = {},
                     const NumDualOptions& dual = {});
GapReport gap_report(const DsmInstance& inst, const DsmOracleOptions& opts = {});

} // namespace sfgap::apps
