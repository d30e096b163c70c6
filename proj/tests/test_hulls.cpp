#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sfgap/hulls.hpp"
#include "sfgap/rng.hpp"

#include <cmath>

using namespace sfgap;
using hulls::PointSet;

namespace {

PointSet triangle() { return PointSet::of("tri", {Vec{0, 0}, Vec{1, 0}, Vec{0, 1}}); }

std::vector<PointSet> unit_square_segments() {
    return {PointSet::of("seg_x", {Vec{0, 0}, Vec{1, 0}}),
            PointSet::of("seg_y", {Vec{0, 0}, Vec{0, 1}})};
}

} // namespace

TEST_CASE("two-point hull membership on the triangle") {
    const PointSet s = triangle();
    SUBCASE("edge midpoint lies on a two-point segment") {
        const auto comb = hulls::convk_member(s, 2, Vec{0.5, 0.0});
        REQUIRE(comb.has_value());
        CHECK(comb->support == std::vector<int>{0, 1});
        CHECK(comb->weights[0] == doctest::Approx(0.5));
        CHECK(comb->weights[1] == doctest::Approx(0.5));
    }
    SUBCASE("the centroid misses every edge") {
        const auto comb = hulls::convk_member(s, 2, Vec{1.0 / 3, 1.0 / 3});
        CHECK(!comb.has_value());
    }
    SUBCASE("the centroid needs all three points") {
        const auto comb = hulls::convk_member(s, 3, Vec{1.0 / 3, 1.0 / 3});
        REQUIRE(comb.has_value());
        CHECK(comb->cardinality() == 3);
    }
    SUBCASE("a vertex is its own one-point combination") {
        const auto comb = hulls::convk_member(s, 1, Vec{0, 0});
        REQUIRE(comb.has_value());
        CHECK(comb->support == std::vector<int>{0});
        CHECK(comb->weights[0] == doctest::Approx(1.0));
    }
}

TEST_CASE("full-k membership coincides with the hull membership LP") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t m = 1 + rep % 3;
        const std::size_t npts = m + 2 + rep % 3;
        std::vector<Vec> pts;
        for (std::size_t j = 0; j < npts; ++j) {
            Vec p(m);
            for (std::size_t c = 0; c < m; ++c) p[c] = uniform(rng, -1.0, 1.0);
            pts.push_back(p);
        }
        const PointSet s = PointSet::of("rand", pts);
        Vec z(m);
        if (rep % 2 == 0) {
            // inside: random combination of the points
            std::vector<double> w(npts);
            double tot = 0;
            for (auto& x : w) tot += (x = uniform(rng, 0.0, 1.0));
            for (std::size_t j = 0; j < npts; ++j)
                for (std::size_t c = 0; c < m; ++c) z[c] += w[j] / tot * pts[j][c];
        } else {
            for (std::size_t c = 0; c < m; ++c) z[c] = uniform(rng, 2.5, 3.5); // far outside
        }
        const bool inside = rep % 2 == 0;
        const auto comb = hulls::convk_member(s, static_cast<int>(npts), z);
        CHECK(comb.has_value() == inside);
        if (comb) CHECK(norm_inf(comb->combine(s) - z) <= 1e-8);
    }
}

TEST_CASE("caratheodory reduction") {
    SUBCASE("four points in the plane, equal weights") {
        const PointSet s =
            PointSet::of("quad", {Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{1, 1}});
        hulls::ConvexCombination c;
        c.support = {0, 1, 2, 3};
        c.weights = {0.25, 0.25, 0.25, 0.25};
        const Vec before = c.combine(s);
        const auto red = hulls::caratheodory_reduce(s, c);
        CHECK(red.cardinality() <= 3);
        CHECK(norm_inf(red.combine(s) - before) <= 1e-9);
    }
    SUBCASE("small support returns unchanged") {
        const PointSet s = triangle();
        hulls::ConvexCombination c;
        c.support = {0, 2};
        c.weights = {0.5, 0.5};
        const auto red = hulls::caratheodory_reduce(s, c);
        CHECK(red.support == c.support);
        CHECK(red.weights == c.weights);
    }
    SUBCASE("collinear one-dimensional data drops the middle point") {
        const PointSet s = PointSet::of("line", {Vec{0.0}, Vec{1.0}, Vec{2.0}});
        hulls::ConvexCombination c;
        c.support = {0, 1, 2};
        c.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
        const auto red = hulls::caratheodory_reduce(s, c);
        CHECK(red.cardinality() <= 2);
        CHECK(red.combine(s)[0] == doctest::Approx(1.0));
    }
    SUBCASE("random reductions preserve the sum and never grow") {
        std::mt19937_64 rng(3);
        for (int rep = 0; rep < 60; ++rep) {
            const std::size_t m = 1 + rep % 3;
            const std::size_t npts = m + 2 + rep % 4;
            std::vector<Vec> pts;
            for (std::size_t j = 0; j < npts; ++j) {
                Vec p(m);
                for (std::size_t c = 0; c < m; ++c) p[c] = uniform(rng, -2.0, 2.0);
                pts.push_back(p);
            }
            const PointSet s = PointSet::of("r", pts);
            hulls::ConvexCombination c;
            double tot = 0;
            for (std::size_t j = 0; j < npts; ++j) {
                c.support.push_back(static_cast<int>(j));
                double w = uniform(rng, 0.05, 1.0);
                c.weights.push_back(w);
                tot += w;
            }
            for (auto& w : c.weights) w /= tot;
            const Vec before = c.combine(s);
            const auto red = hulls::caratheodory_reduce(s, c);
            CHECK(red.cardinality() <= static_cast<int>(m) + 1);
            CHECK(red.cardinality() <= c.cardinality());
            CHECK(norm_inf(red.combine(s) - before) <= 1e-9);
        }
    }
}

TEST_CASE("minkowski vertex enumeration") {
    SUBCASE("two segments make the unit square") {
        const auto mk = hulls::minkowski_vertices(unit_square_segments());
        REQUIRE(mk.points.size() == 4);
        CHECK(mk.tuples.size() == 4);
    }
    SUBCASE("single set passes through") {
        const auto mk = hulls::minkowski_vertices({triangle()});
        CHECK(mk.points.size() == 3);
        CHECK(mk.tuples[0] == std::vector<std::vector<int>>{{0}});
    }
    SUBCASE("two triangles: nine sums merge to six points") {
        const auto mk = hulls::minkowski_vertices({triangle(), triangle()});
        CHECK(mk.points.size() == 6);
        std::size_t total_tuples = 0;
        for (const auto& t : mk.tuples) total_tuples += t.size();
        CHECK(total_tuples == 9); // provenance keeps all 9 index pairs
    }
    SUBCASE("cap trips loudly") {
        CHECK_THROWS_AS(hulls::minkowski_vertices({triangle(), triangle()}, 5), cap_exceeded);
    }
}

TEST_CASE("minimal faces of the unit square") {
    const auto sets = unit_square_segments();
    SUBCASE("a corner is extreme") {
        const auto face = hulls::minimal_face(sets, Vec{0, 0});
        CHECK(face.dim == 0);
        CHECK(face.vertex_ids.size() == 1);
    }
    SUBCASE("an edge midpoint is 1-extreme with the bottom edge as face") {
        const auto face = hulls::minimal_face(sets, Vec{0.5, 0.0});
        CHECK(face.dim == 1);
        CHECK(face.vertex_ids.size() == 2);
        // exposing direction is (0,1) after the margin normalization
        CHECK(face.exposing[0] == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(face.exposing[1] == doctest::Approx(1.0));
    }
    SUBCASE("the center is full-dimensional") {
        const auto face = hulls::minimal_face(sets, Vec{0.5, 0.5});
        CHECK(face.dim == 2);
        CHECK(norm_inf(face.exposing) == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("outside points are rejected") {
        CHECK_THROWS_AS(hulls::minimal_face(sets, Vec{2.0, 0.0}), infeasible_error);
    }
}

TEST_CASE("exposing directions satisfy their two defining conditions") {
    const auto sets = unit_square_segments();
    const auto mk = hulls::minkowski_vertices(sets);
    for (const Vec z : {Vec{0.5, 0.0}, Vec{0.0, 0.0}, Vec{1.0, 0.5}}) {
        const auto face = hulls::minimal_face(mk, z);
        std::vector<bool> on_face(mk.points.size(), false);
        for (int id : face.vertex_ids) on_face[id] = true;
        for (std::size_t t = 0; t < mk.points.size(); ++t) {
            const double margin = dot(face.exposing, mk.points.points[t] - z);
            if (on_face[t])
                CHECK(std::fabs(margin) <= 1e-7);
            else
                CHECK(margin >= 1.0 - 1e-7);
        }
    }
}

TEST_CASE("random minimal faces: dimension in range and z in the face's affine hull") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t m = 1 + rep % 3;
        const std::size_t nsets = 1 + rep % 3;
        std::vector<PointSet> sets;
        for (std::size_t i = 0; i < nsets; ++i) {
            std::vector<Vec> pts;
            const std::size_t npts = 1 + uniform_index(rng, 4);
            for (std::size_t j = 0; j < npts; ++j) {
                Vec p(m);
                for (std::size_t c = 0; c < m; ++c) p[c] = uniform(rng, -1.0, 1.0);
                pts.push_back(p);
            }
            sets.push_back(PointSet::of("s" + std::to_string(i), pts));
        }
        const auto mk = hulls::minkowski_vertices(sets);
        // random hull point
        Vec z(m);
        double tot = 0;
        std::vector<double> w(mk.points.size());
        for (auto& x : w) tot += (x = uniform(rng, 0.0, 1.0));
        for (std::size_t j = 0; j < mk.points.size(); ++j)
            for (std::size_t c = 0; c < m; ++c) z[c] += w[j] / tot * mk.points.points[j][c];

        const auto face = hulls::minimal_face(mk, z);
        CHECK(face.dim >= 0);
        CHECK(face.dim <= static_cast<int>(m));
        REQUIRE(!face.vertex_ids.empty());
        // z - v0 must lie in the span of the face basis
        const Vec v0 = mk.points.points[face.vertex_ids[0]];
        Vec resid = z - v0;
        for (const Vec& b : face.basis) {
            const double coef = dot(b, resid);
            for (std::size_t c = 0; c < m; ++c) resid[c] -= coef * b[c];
        }
        CHECK(norm_inf(resid) <= 1e-9 * std::max(1.0, norm_inf(z)));
    }
}
