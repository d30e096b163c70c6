#include "sfgap/hulls.hpp"

#include "sfgap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sfgap::hulls {

PointSet PointSet::of(std::string label, std::vector<Vec> pts) {
    if (pts.empty()) throw invalid_input("PointSet: empty set");
    const std::size_t m = pts[0].size();
    if (m == 0) throw invalid_input("PointSet: zero-dimensional points");
    for (const Vec& p : pts) {
        if (p.size() != m) throw invalid_input("PointSet: mixed dimensions");
        if (!p.finite()) throw invalid_input("PointSet: non-finite point");
    }
    PointSet s;
    s.label = std::move(label);
    s.points = std::move(pts);
    return s;
}

Vec ConvexCombination::combine(const PointSet& s) const {
    Vec z(s.dim());
    for (std::size_t j = 0; j < support.size(); ++j) {
        const Vec& p = s.points[support[j]];
        for (std::size_t c = 0; c < z.size(); ++c) z[c] += weights[j] * p[c];
    }
    return z;
}

ConvexCombination make_combination(std::vector<int> support, std::vector<double> weights,
                                   double prune_tol) {
    if (support.size() != weights.size())
        throw invalid_input("combination: support/weight size mismatch");
    ConvexCombination out;
    double total = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) {
        if (weights[j] < -prune_tol) throw invalid_input("combination: negative weight");
        if (weights[j] <= prune_tol) continue;
        out.support.push_back(support[j]);
        out.weights.push_back(weights[j]);
        total += weights[j];
    }
    if (out.support.empty()) throw invalid_input("combination: all weights pruned");
    if (std::fabs(total - 1.0) > 1e-6)
        throw invalid_input("combination: weights do not sum to 1");
    for (double& w : out.weights) w /= total;
    std::vector<int> sorted = out.support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw invalid_input("combination: duplicate support index");
    return out;
}

std::size_t subset_count(std::size_t n, std::size_t k, std::size_t cap) {
    if (k > n) return 0;
    std::size_t c = 1;
    for (std::size_t i = 0; i < k; ++i) {
        // c <= cap here and n fits desk scale, so c*(n-i) cannot overflow;
        // the product stays integral when divided in this order
        c = c * (n - i) / (i + 1);
        if (c > cap) return cap + 1;
    }
    return c;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<int>&)>& visit) {
    if (k > n || k == 0) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!visit(idx)) return;
        // advance to the next lexicographic k-subset
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(n - k + pos)) --pos;
        if (pos < 0) return;
        ++idx[pos];
        for (std::size_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

namespace {

lp::Options lp_options(const HullOptions& opts) {
    lp::Options o;
    o.tol = opts.tol_lp;
    return o;
}

// Feasibility system: weights over `columns` points reproducing z with unit
// total weight. Objective slots are left zero for pure membership tests.
lp::Problem weight_problem(const std::vector<const Vec*>& columns, const Vec& z) {
    const std::size_t m = z.size();
    lp::Problem p(columns.size());
    for (std::size_t s = 0; s < m; ++s) {
        Vec row(columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) row[j] = (*columns[j])[s];
        p.add_eq(std::move(row), z[s]);
    }
    p.add_eq(Vec(columns.size(), 1.0), 1.0);
    return p;
}

} // namespace

std::optional<ConvexCombination> convk_member(const PointSet& s, int k, const Vec& z,
                                              const HullOptions& opts) {
    if (k < 1 || static_cast<std::size_t>(k) > s.size())
        throw invalid_input("convk_member: k out of range");
    if (z.size() != s.dim()) throw invalid_input("convk_member: dimension mismatch");
    if (subset_count(s.size(), k, opts.subset_cap) > opts.subset_cap)
        throw cap_exceeded("convk_member: subset cap exceeded");

    std::optional<ConvexCombination> found;
    for_each_subset(s.size(), k, [&](const std::vector<int>& idx) {
        std::vector<const Vec*> cols;
        cols.reserve(idx.size());
        for (int j : idx) cols.push_back(&s.points[j]);
        lp::Solution sol = lp::solve(weight_problem(cols, z), lp_options(opts));
        if (sol.status != lp::Status::Optimal) return true;
        std::vector<double> w(sol.x.raw());
        found = make_combination(idx, std::move(w));
        return false;
    });
    return found;
}

ConvexCombination caratheodory_reduce(const PointSet& s, const ConvexCombination& comb) {
    const std::size_t m = s.dim();
    ConvexCombination cur = comb;
    while (cur.support.size() > m + 1) {
        const std::size_t cnt = cur.support.size();
        // affine dependence: gamma with  sum gamma_j v_j = 0, sum gamma_j = 0
        Mat sys(m + 1, cnt);
        for (std::size_t j = 0; j < cnt; ++j) {
            const Vec& v = s.points[cur.support[j]];
            for (std::size_t r = 0; r < m; ++r) sys(r, j) = v[r];
            sys(m, j) = 1.0;
        }
        SvdResult svd = jacobi_svd(sys);
        Vec gamma = svd.v.col(svd.values.size() - 1); // smallest singular value
        double max_pos = 0.0;
        for (std::size_t j = 0; j < cnt; ++j) max_pos = std::max(max_pos, gamma[j]);
        double max_neg = 0.0;
        for (std::size_t j = 0; j < cnt; ++j) max_neg = std::max(max_neg, -gamma[j]);
        if (max_neg > max_pos) gamma = -1.0 * gamma; // ensure a positive entry exists

        std::size_t hit = cnt;
        double t = 0.0;
        for (std::size_t j = 0; j < cnt; ++j) {
            if (gamma[j] <= 1e-14) continue;
            const double ratio = cur.weights[j] / gamma[j];
            if (hit == cnt || ratio < t) {
                t = ratio;
                hit = j;
            }
        }
        if (hit == cnt) throw numeric_breakdown("caratheodory_reduce: no usable direction");

        std::vector<int> support;
        std::vector<double> weights;
        for (std::size_t j = 0; j < cnt; ++j) {
            if (j == hit) continue;
            support.push_back(cur.support[j]);
            weights.push_back(cur.weights[j] - t * gamma[j]);
        }
        cur = make_combination(std::move(support), std::move(weights), 1e-13);
    }
    return cur;
}

MinkowskiSum minkowski_vertices(const std::vector<PointSet>& sets, std::size_t cap,
                                double merge_tol) {
    if (sets.empty()) throw invalid_input("minkowski_vertices: no sets");
    const std::size_t m = sets[0].dim();
    std::size_t total = 1;
    for (const PointSet& s : sets) {
        if (s.dim() != m) throw invalid_input("minkowski_vertices: mixed dimensions");
        if (s.size() > cap / total) throw cap_exceeded("minkowski_vertices: enumeration cap");
        total *= s.size();
    }

    std::vector<Vec> sums(total, Vec(m));
    std::vector<std::vector<int>> tuple_of(total, std::vector<int>(sets.size(), 0));
    std::vector<int> odo(sets.size(), 0);
    for (std::size_t t = 0; t < total; ++t) {
        Vec& acc = sums[t];
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const Vec& p = sets[i].points[odo[i]];
            for (std::size_t c = 0; c < m; ++c) acc[c] += p[c];
            tuple_of[t][i] = odo[i];
        }
        for (std::size_t i = sets.size(); i-- > 0;) {
            if (++odo[i] < static_cast<int>(sets[i].size())) break;
            odo[i] = 0;
        }
    }

    // merge duplicates: sort lexicographically, chain-group within merge_tol,
    // then emit groups keyed by their earliest enumeration index
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < m; ++c)
            if (sums[a][c] != sums[b][c]) return sums[a][c] < sums[b][c];
        return a < b;
    });
    std::vector<std::size_t> group_id(total, 0);
    std::size_t ngroups = 0;
    for (std::size_t i = 0; i < total; ++i) {
        if (i > 0 && approx_equal(sums[order[i]], sums[order[i - 1]], merge_tol))
            group_id[order[i]] = group_id[order[i - 1]];
        else
            group_id[order[i]] = ngroups++;
    }
    std::vector<std::size_t> first_of_group(ngroups, total);
    for (std::size_t t = 0; t < total; ++t)
        first_of_group[group_id[t]] = std::min(first_of_group[group_id[t]], t);
    std::vector<std::size_t> emit_rank(ngroups);
    std::iota(emit_rank.begin(), emit_rank.end(), 0);
    std::sort(emit_rank.begin(), emit_rank.end(),
              [&](std::size_t a, std::size_t b) { return first_of_group[a] < first_of_group[b]; });
    std::vector<std::size_t> group_pos(ngroups);
    for (std::size_t i = 0; i < ngroups; ++i) group_pos[emit_rank[i]] = i;

    MinkowskiSum out;
    out.points.label = "minkowski";
    out.points.points.resize(ngroups);
    out.tuples.resize(ngroups);
    for (std::size_t g = 0; g < ngroups; ++g)
        out.points.points[group_pos[g]] = sums[first_of_group[g]];
    for (std::size_t t = 0; t < total; ++t)
        out.tuples[group_pos[group_id[t]]].push_back(tuple_of[t]);
    return out;
}

Vec exposing_direction(const std::vector<int>& face_ids, const PointSet& all_vertices,
                       const Vec& z, const HullOptions& opts) {
    const std::size_t m = z.size();
    std::vector<bool> on_face(all_vertices.size(), false);
    for (int id : face_ids) on_face[id] = true;

    // a = a_pos - a_neg, minimize the l1 norm subject to
    //   (v - z).a  = 0  for face points,
    //   (v - z).a >= 1  for the rest.
    lp::Problem p(2 * m);
    p.c = Vec(2 * m, 1.0);
    for (std::size_t t = 0; t < all_vertices.size(); ++t) {
        Vec row(2 * m);
        const Vec& v = all_vertices.points[t];
        for (std::size_t c = 0; c < m; ++c) {
            row[c] = v[c] - z[c];
            row[m + c] = -(v[c] - z[c]);
        }
        if (on_face[t])
            p.add_eq(std::move(row), 0.0);
        else
            p.add_ub(-1.0 * row, -1.0);
    }
    lp::Solution sol = lp::solve(p, lp_options(opts));
    if (sol.status != lp::Status::Optimal)
        throw numeric_breakdown("exposing_direction: separation LP infeasible (face not minimal?)");
    Vec a(m);
    for (std::size_t c = 0; c < m; ++c) a[c] = sol.x[c] - sol.x[m + c];
    return a;
}

FaceDescription minimal_face(const MinkowskiSum& mk, const Vec& z, const HullOptions& opts) {
    const PointSet& pts = mk.points;
    const std::size_t m = pts.dim();
    if (z.size() != m) throw invalid_input("minimal_face: dimension mismatch");

    std::vector<const Vec*> cols;
    cols.reserve(pts.size());
    for (const Vec& v : pts.points) cols.push_back(&v);
    const lp::Problem base = weight_problem(cols, z);

    lp::Solution feas = lp::solve(base, lp_options(opts));
    if (feas.status != lp::Status::Optimal)
        throw infeasible_error("minimal_face: target outside the hull");

    // p_t lies on the minimal face iff some representation of z puts positive
    // weight on it; probe each candidate with a max-weight LP.
    std::vector<char> on_face(pts.size(), 0);
    parallel_for(pts.size(), [&](std::size_t t) {
        if (feas.x[t] > opts.tol_face) { // the feasibility vertex already certifies t
            on_face[t] = 1;
            return;
        }
        lp::Problem probe = base;
        probe.c = Vec(pts.size());
        probe.c[t] = -1.0; // maximize weight t
        lp::Solution sol = lp::solve(probe, lp_options(opts));
        if (sol.status != lp::Status::Optimal)
            throw numeric_breakdown("minimal_face: probe LP failed");
        on_face[t] = -sol.objective > opts.tol_face ? 1 : 0;
    });

    FaceDescription face;
    face.base = z;
    std::vector<Vec> members;
    for (std::size_t t = 0; t < pts.size(); ++t)
        if (on_face[t]) {
            face.vertex_ids.push_back(static_cast<int>(t));
            members.push_back(pts.points[t]);
        }
    if (members.empty()) throw numeric_breakdown("minimal_face: empty face support");

    face.dim = affine_rank(members, opts.tol_rank);
    std::vector<Vec> diffs;
    for (std::size_t j = 1; j < members.size(); ++j) diffs.push_back(members[j] - members[0]);
    face.basis = orthonormal_span(diffs, opts.tol_rank);
    if (static_cast<int>(face.basis.size()) != face.dim)
        throw numeric_breakdown("minimal_face: rank/basis disagreement");
    face.exposing = exposing_direction(face.vertex_ids, pts, z, opts);
    return face;
}

FaceDescription minimal_face(const std::vector<PointSet>& sets, const Vec& z,
                             const HullOptions& opts) {
    return minimal_face(minkowski_vertices(sets, opts.minkowski_cap), z, opts);
}

} // namespace sfgap::hulls
