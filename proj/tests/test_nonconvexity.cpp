#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sfgap/json_io.hpp"
#include "sfgap/nonconvexity.hpp"
#include "sfgap/rng.hpp"

#include <cmath>

using namespace sfgap;

namespace {

// 1-D uniform grid with piecewise-linear interpolation as the exact callback
rho::SampledFunction sampled_1d(std::vector<double> xs, std::vector<double> ys) {
    rho::SampledFunction f;
    f.box_lo = Vec{xs.front()};
    f.box_hi = Vec{xs.back()};
    for (double x : xs) f.points.push_back(Vec{x});
    f.values = ys;
    f.exact = [xs, ys](const Vec& p) {
        const double x = p[0];
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (x <= xs[i] + 1e-12) {
                const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
                return (1 - t) * ys[i - 1] + t * ys[i];
            }
        return ys.back();
    };
    return f;
}

// corners of [0,1]^n sampling min(x_1..x_n), callback evaluating min anywhere
rho::SampledFunction min_box_corners(int n) {
    rho::SampledFunction f;
    f.box_lo = Vec(n, 0.0);
    f.box_hi = Vec(n, 1.0);
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec p(n);
        for (int c = 0; c < n; ++c) p[c] = (mask >> c) & 1 ? 1.0 : 0.0;
        double mn = p[0];
        for (int c = 1; c < n; ++c) mn = std::min(mn, p[c]);
        f.points.push_back(std::move(p));
        f.values.push_back(mn);
    }
    f.exact = [](const Vec& p) {
        double mn = p[0];
        for (std::size_t c = 1; c < p.size(); ++c) mn = std::min(mn, p[c]);
        return mn;
    };
    return f;
}

} // namespace

TEST_CASE("closed forms reproduce the two-branch conclusions") {
    SUBCASE("min on the box") {
        CHECK(rho::min_box(3, 2).value == doctest::Approx(0.5));
        CHECK(rho::min_box(7, 1).value == 0.0);
        CHECK(rho::min_box(3, 5).value == doctest::Approx(2.0 / 3));
        for (int n = 1; n <= 6; ++n)
            for (int k = 1; k <= 8; ++k) {
                const auto v = rho::min_box(n, k);
                CHECK(v.flag == rho::Flag::exact);
                CHECK(v.value == (k <= n ? double(k - 1) / k : double(n - 1) / n));
            }
    }
    SUBCASE("negative log max") {
        CHECK(rho::neg_log_max(4, 3).value == doctest::Approx(std::log(3.0)));
        CHECK(rho::neg_log_max(9, 1).value == 0.0);
        CHECK(rho::neg_log_max(4, 10).value == doctest::Approx(std::log(4.0)));
        for (int n = 1; n <= 6; ++n)
            for (int k = 1; k <= 8; ++k)
                CHECK(rho::neg_log_max(n, k).value == std::log(double(std::min(k, n))));
    }
    SUBCASE("crosstalk rate upper bounds") {
        const auto v = rho::h_sigma_bound(2, 1.0);
        CHECK(v.value == doctest::Approx(std::log(2.0)));
        CHECK(v.flag == rho::Flag::upper_bound);
        const auto v1 = rho::h_sigma_bound(1, 0.5);
        CHECK(v1.value == 0.0); // k = 1 is exactly zero, overriding log(1/sigma)
        CHECK(v1.flag == rho::Flag::exact);
        CHECK(rho::h_sigma_bound(4, 0.5).value == doctest::Approx(std::log(8.0)));
        CHECK_THROWS_AS(rho::h_sigma_bound(2, 0.0), invalid_input);
        CHECK_THROWS_AS(rho::h_sigma_bound(2, 1.5), invalid_input);
    }
}

TEST_CASE("h_sigma evaluation") {
    CHECK(rho::eval_h_sigma(Vec{0.0, 0.0, 0.0}, 0.7) == doctest::Approx(0.0));
    CHECK(rho::eval_h_sigma(Vec{1.0, 0.0}, 1.0) == doctest::Approx(std::log(0.5)));
    // log H == h everywhere sampled
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + rep % 3;
        const double sigma = uniform(rng, 0.1, 1.0);
        Vec x(n);
        for (int c = 0; c < n; ++c) x[c] = uniform(rng, 0.0, 1.0);
        CHECK(std::log(rho::eval_H(x, sigma)) ==
              doctest::Approx(rho::eval_h_sigma(x, sigma)).epsilon(1e-12));
    }
}

TEST_CASE("H-function lemma properties on sampled points") {
    std::mt19937_64 rng(12);
    for (const int n : {2, 3}) {
        for (const double sigma : {0.3, 0.7, 1.0}) {
            for (int rep = 0; rep < 500; ++rep) {
                // (a) coordinatewise monotone decreasing on [0, sigma]^n
                Vec x(n), y(n);
                for (int c = 0; c < n; ++c) {
                    x[c] = uniform(rng, 0.0, sigma);
                    y[c] = x[c] * uniform01(rng);
                }
                CHECK(rho::eval_H(y, sigma) >= rho::eval_H(x, sigma) - 1e-12);
                // (b) squeeze between H(.;1) and sigma*H(.;1) on [0,1]^n
                Vec u(n);
                for (int c = 0; c < n; ++c) u[c] = uniform(rng, 0.0, 1.0);
                const double h1 = rho::eval_H(u, 1.0);
                const double hs = rho::eval_H(u, sigma);
                CHECK(hs <= h1 + 1e-12);
                CHECK(hs >= sigma * h1 - 1e-12);
            }
        }
    }
}

TEST_CASE("grid estimator on canonical families") {
    SUBCASE("min on the square corners hits 1/2 at k = 2") {
        const auto f = min_box_corners(2);
        CHECK(rho::rho_k_grid(f, 2) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rho::rho_k_grid(f, 1) == 0.0);
    }
    SUBCASE("convex quadratic stays at zero") {
        auto g = sampled_1d({-1.0, -0.5, 0.0, 0.5, 1.0}, {1.0, 0.25, 0.0, 0.25, 1.0});
        g.exact = [](const Vec& p) { return p[0] * p[0]; };
        for (int k = 1; k <= 4; ++k) CHECK(rho::rho_k_grid(g, k) == doctest::Approx(0.0));
    }
    SUBCASE("estimates never exceed the closed form and hit it with witnesses") {
        for (const int n : {2, 3}) {
            const auto f = min_box_corners(n);
            for (int k = 2; k <= n + 2; ++k) {
                const double est = rho::rho_k_grid(f, k);
                const double exact = rho::min_box(n, k).value;
                CHECK(est <= exact + 1e-12);
                CHECK(est == doctest::Approx(exact).epsilon(1e-9)); // uniform witness included
            }
        }
    }
    SUBCASE("negative log max family on basis points") {
        const int n = 3;
        rho::SampledFunction f;
        f.box_lo = Vec(n, 0.0);
        f.box_hi = Vec(n, 1.0);
        for (int i = 0; i < n; ++i) {
            Vec p(n);
            p[i] = 1.0;
            f.points.push_back(std::move(p));
            f.values.push_back(0.0);
        }
        f.exact = [](const Vec& p) {
            double mx = 0.0;
            for (std::size_t c = 0; c < p.size(); ++c) mx = std::max(mx, p[c]);
            return -std::log(mx);
        };
        for (int k = 2; k <= n; ++k)
            CHECK(rho::rho_k_grid(f, k) == doctest::Approx(std::log(double(k))).epsilon(1e-12));
    }
    SUBCASE("monotone in k and stabilized past dim + 1") {
        const auto w = sampled_1d({0, 0.25, 0.5, 0.75, 1.0}, {0.0, 0.8, 1.0, 0.3, 0.0});
        rho::GridOptions opts;
        opts.weight_steps = 24;
        double prev = 0.0;
        for (int k = 1; k <= 4; ++k) {
            const double est = rho::rho_k_grid(w, k, opts);
            CHECK(est >= prev - 1e-12);
            prev = est;
        }
        CHECK(std::fabs(rho::rho_k_grid(w, 2, opts) - rho::rho_k_grid(w, 3, opts)) <= 1e-9);
    }
    SUBCASE("off-grid combinations are rejected without a callback") {
        auto f = sampled_1d({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
        f.exact = nullptr;
        // only combinations landing exactly on grid points are counted
        CHECK(rho::rho_k_grid(f, 2) == doctest::Approx(1.0));
    }
    SUBCASE("cap and validation errors") {
        auto f = min_box_corners(2);
        rho::GridOptions opts;
        opts.subset_cap = 2;
        CHECK_THROWS_AS(rho::rho_k_grid(f, 2, opts), cap_exceeded);
        rho::SampledFunction empty;
        empty.box_lo = Vec{0.0};
        empty.box_hi = Vec{1.0};
        empty.points.push_back(Vec{0.0});
        empty.values.push_back(std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(rho::rho_k_grid(empty, 2), invalid_input); // no finite values
    }
}

TEST_CASE("discretized envelopes") {
    SUBCASE("convex samples interpolate") {
        const auto f = sampled_1d({0, 0.25, 0.5, 0.75, 1.0}, {0.0, 0.0625, 0.25, 0.5625, 1.0});
        CHECK(rho::envelope_k(f, 2, Vec{0.5}) == doctest::Approx(0.25));
        CHECK(rho::envelope_k(f, 2, Vec{0.375}) == doctest::Approx((0.0625 + 0.25) / 2));
    }
    SUBCASE("tent function drops to the endpoint chord") {
        const auto f = sampled_1d({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
        CHECK(rho::envelope_k(f, 2, Vec{0.5}) == doctest::Approx(0.0));
        CHECK(rho::envelope_k(f, 1, Vec{0.5}) == doctest::Approx(1.0)); // only the point itself
    }
    SUBCASE("k = dim + 1 equals the exhaustive (dim+1)-subset minimum") {
        std::mt19937_64 rng(9);
        rho::SampledFunction f;
        f.box_lo = Vec{0.0, 0.0};
        f.box_hi = Vec{1.0, 1.0};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                f.points.push_back(Vec{a / 2.0, b / 2.0});
                f.values.push_back(uniform(rng, -1.0, 1.0));
            }
        for (const Vec& x : {Vec{0.5, 0.5}, Vec{0.25, 0.75}, Vec{1.0, 0.0}}) {
            const double whole = rho::envelope_k(f, 3, x);
            // oracle: minimum over all explicit 3-point subsets
            double best = std::numeric_limits<double>::infinity();
            const auto& pts = f.points;
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j)
                    for (std::size_t l = j + 1; l < pts.size(); ++l) {
                        rho::SampledFunction sub;
                        sub.box_lo = f.box_lo;
                        sub.box_hi = f.box_hi;
                        sub.points = {pts[i], pts[j], pts[l]};
                        sub.values = {f.values[i], f.values[j], f.values[l]};
                        try {
                            best = std::min(best, rho::envelope_k(sub, 3, x));
                        } catch (const infeasible_error&) {
                        }
                    }
            CHECK(whole == doctest::Approx(best).epsilon(1e-9));
        }
    }
    SUBCASE("unreachable points throw") {
        const auto f = sampled_1d({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
        CHECK_THROWS_AS(rho::envelope_k(f, 1, Vec{0.3}), infeasible_error);
        CHECK_THROWS_AS(rho::envelope_k(f, 2, Vec{1.5}), invalid_input); // outside the box
    }
}

TEST_CASE("envelope duality on one-dimensional grids") {
    // sup(f - envelope_k) over the grid equals the grid nonconvexity estimate
    // when the lattice covers the envelope weights (quarter grid, steps 24)
    rho::GridOptions opts;
    opts.weight_steps = 24;
    for (const auto& ys : {std::vector<double>{0.0, 0.8, 1.0, 0.3, 0.0},
                           std::vector<double>{0.2, 0.0, 0.9, 0.1, 0.5},
                           std::vector<double>{1.0, 0.1, 0.4, 0.0, 0.7}}) {
        const auto f = sampled_1d({0, 0.25, 0.5, 0.75, 1.0}, ys);
        for (int k = 2; k <= 3; ++k) {
            double sup = 0.0;
            for (std::size_t j = 0; j < f.points.size(); ++j)
                sup = std::max(sup, f.values[j] - rho::envelope_k(f, k, f.points[j], opts));
            CHECK(std::fabs(sup - rho::rho_k_grid(f, k, opts)) <= 1e-9);
        }
    }
}

TEST_CASE("rho table invariants and JSON round trip") {
    auto t = rho::table_min_box({3, 2, 4}, 2, 1.0);
    CHECK(t.m() == 2);
    CHECK(t.rows[0][0].value == 0.0);
    CHECK_NOTHROW(t.validate());

    const auto j = io::to_json(t);
    const auto back = io::rho_table_from_json(j);
    REQUIRE(back.blocks() == t.blocks());
    for (std::size_t i = 0; i < t.blocks(); ++i)
        for (int k = 0; k <= t.m(); ++k) {
            CHECK(back.rows[i][k].value == t.rows[i][k].value);
            CHECK(back.rows[i][k].flag == t.rows[i][k].flag);
        }

    t.rows[1][2].value = -0.5; // negative entries must be rejected
    CHECK_THROWS_AS(t.validate(), invalid_input);
}

TEST_CASE("sampled function JSON accepts the inf marker") {
    const auto j = io::parse(R"({
        "dim": 1, "box_lo": [0.0], "box_hi": [1.0],
        "points": [[0.0],[0.5],[1.0]],
        "values": [0.25, "inf", 1.0]
    })");
    const auto f = io::sampled_function_from_json(j);
    CHECK(f.finite_indices() == std::vector<int>{0, 2});
    const auto round = io::sampled_function_from_json(io::to_json(f));
    CHECK(std::isinf(round.values[1]));
}
