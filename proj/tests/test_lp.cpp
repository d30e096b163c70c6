#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sfgap/lp.hpp"
#include "sfgap/rng.hpp"

#include <cmath>

using namespace sfgap;

namespace {

// random LP over a polytope: objective in [-1,1], a few <= rows, box x <= u
lp::Problem random_lp(std::mt19937_64& rng, std::size_t nvars, std::size_t nrows) {
    lp::Problem p(nvars);
    for (std::size_t j = 0; j < nvars; ++j) p.c[j] = uniform(rng, -1.0, 1.0);
    for (std::size_t r = 0; r < nrows; ++r) {
        Vec row(nvars);
        for (std::size_t j = 0; j < nvars; ++j) row[j] = uniform(rng, -1.0, 1.0);
        p.add_ub(std::move(row), uniform(rng, -0.2, 1.0));
    }
    for (std::size_t j = 0; j < nvars; ++j) {
        Vec row(nvars);
        row[j] = 1.0;
        p.add_ub(std::move(row), uniform(rng, 0.5, 2.0));
    }
    return p;
}

} // namespace

TEST_CASE("textbook examples") {
    SUBCASE("tie on the entering variable resolves to the lowest index") {
        lp::Problem p(2);
        p.c = Vec{-1.0, -1.0};
        p.add_ub(Vec{1.0, 1.0}, 1.0);
        const auto sol = lp::solve(p);
        REQUIRE(sol.status == lp::Status::Optimal);
        CHECK(sol.objective == doctest::Approx(-1.0));
        CHECK(sol.x[0] == doctest::Approx(1.0));
        CHECK(sol.x[1] == doctest::Approx(0.0));
    }
    SUBCASE("forced equality") {
        lp::Problem p(1);
        p.add_eq(Vec{1.0}, 1.0);
        const auto sol = lp::solve(p);
        REQUIRE(sol.status == lp::Status::Optimal);
        CHECK(sol.x[0] == doctest::Approx(1.0));
    }
    SUBCASE("empty feasible set") {
        lp::Problem p(1);
        p.add_ub(Vec{1.0}, -1.0); // x <= -1 against x >= 0
        CHECK(lp::solve(p).status == lp::Status::Infeasible);
    }
    SUBCASE("unbounded ray") {
        lp::Problem p(1);
        p.c = Vec{-1.0};
        CHECK(lp::solve(p).status == lp::Status::Unbounded);
    }
    SUBCASE("nonzero lower bounds shift the solution") {
        lp::Problem p(2);
        p.c = Vec{1.0, 1.0};
        p.lower = Vec{-1.0, 2.0};
        p.add_ub(Vec{1.0, 1.0}, 5.0);
        const auto sol = lp::solve(p);
        REQUIRE(sol.status == lp::Status::Optimal);
        CHECK(sol.x[0] == doctest::Approx(-1.0));
        CHECK(sol.x[1] == doctest::Approx(2.0));
    }
    SUBCASE("degenerate/redundant equalities are dropped") {
        lp::Problem p(2);
        p.c = Vec{1.0, 0.0};
        p.add_eq(Vec{1.0, 1.0}, 1.0);
        p.add_eq(Vec{2.0, 2.0}, 2.0); // same hyperplane
        const auto sol = lp::solve(p);
        REQUIRE(sol.status == lp::Status::Optimal);
        CHECK(sol.objective == doctest::Approx(0.0));
    }
}

TEST_CASE("solver agrees with exhaustive vertex enumeration on 500 random LPs") {
    std::mt19937_64 rng(2024);
    int optimal_count = 0;
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t nvars = 1 + uniform_index(rng, 6);
        const std::size_t nrows = 1 + uniform_index(rng, 6);
        const lp::Problem p = random_lp(rng, nvars, nrows);

        const auto oracle = oracles::enumerate_lp(p);
        const auto sol = lp::solve(p);
        REQUIRE(sol.status != lp::Status::Unbounded); // box rows forbid rays
        CHECK((sol.status == lp::Status::Optimal) ==
              (oracle.status == lp::Status::Optimal));
        if (sol.status == lp::Status::Optimal) {
            ++optimal_count;
            CHECK(std::fabs(sol.objective - oracle.objective) <= 1e-9);
        }
    }
    CHECK(optimal_count > 300); // the generator must actually produce feasible LPs
}

TEST_CASE("optimal solutions are basic: support bounded by the active rows") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t nvars = 1 + uniform_index(rng, 6);
        const std::size_t nrows = 1 + uniform_index(rng, 6);
        const lp::Problem p = random_lp(rng, nvars, nrows);
        const auto sol = lp::solve(p);
        if (sol.status != lp::Status::Optimal) continue;

        std::size_t nonzeros = 0;
        for (std::size_t j = 0; j < nvars; ++j)
            if (sol.x[j] > 1e-9) ++nonzeros;
        std::size_t active = 0;
        for (std::size_t r = 0; r < p.ub_rows.size(); ++r)
            if (std::fabs(dot(p.ub_rows[r], sol.x) - p.ub_rhs[r]) <= 1e-7) ++active;
        CHECK(nonzeros <= p.eq_rows.size() + active);
        CHECK(sol.basis.size() <= p.eq_rows.size() + p.ub_rows.size());
    }
}

TEST_CASE("residuals stay within tolerance on equality-heavy systems") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t nvars = 3 + uniform_index(rng, 4);
        lp::Problem p(nvars);
        // build a feasible equality system from a known interior-ish point
        Vec x0(nvars);
        for (std::size_t j = 0; j < nvars; ++j) x0[j] = uniform(rng, 0.0, 1.0);
        for (std::size_t r = 0; r < 2; ++r) {
            Vec row(nvars);
            for (std::size_t j = 0; j < nvars; ++j) row[j] = uniform(rng, -1.0, 1.0);
            p.add_eq(row, dot(row, x0));
        }
        for (std::size_t j = 0; j < nvars; ++j) p.c[j] = uniform(rng, -1.0, 1.0);
        for (std::size_t j = 0; j < nvars; ++j) {
            Vec row(nvars);
            row[j] = 1.0;
            p.add_ub(std::move(row), 2.0);
        }
        const auto sol = lp::solve(p);
        REQUIRE(sol.status == lp::Status::Optimal);
        for (std::size_t r = 0; r < p.eq_rows.size(); ++r)
            CHECK(std::fabs(dot(p.eq_rows[r], sol.x) - p.eq_rhs[r]) <= 1e-9);
    }
}
