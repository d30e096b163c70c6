#include "sfgap/sfdecomp.hpp"

#include <cmath>
#include <numeric>

namespace sfgap::sf {

std::vector<int> Decomposition::cardinalities() const {
    std::vector<int> k;
    k.reserve(blocks.size());
    for (const auto& b : blocks) k.push_back(b.cardinality());
    return k;
}

int Decomposition::blocks_with_support_ge2() const {
    int n = 0;
    for (const auto& b : blocks)
        if (b.cardinality() >= 2) ++n;
    return n;
}

namespace {

struct BlockLayout {
    std::vector<std::size_t> offset; // first variable index of each block
    std::size_t total = 0;
};

BlockLayout layout_of(const std::vector<hulls::PointSet>& sets) {
    BlockLayout l;
    l.offset.reserve(sets.size());
    for (const auto& s : sets) {
        l.offset.push_back(l.total);
        l.total += s.size();
    }
    return l;
}

void check_sets(const std::vector<hulls::PointSet>& sets) {
    if (sets.empty()) throw invalid_input("decompose: no sets");
    const std::size_t m = sets[0].dim();
    for (const auto& s : sets) {
        if (s.size() == 0) throw invalid_input("decompose: empty set");
        if (s.dim() != m) throw invalid_input("decompose: mixed dimensions");
    }
}

// Shared skeleton: one weight variable per (block, point), one convexity row
// per block, plus caller-provided coordinate rows and objective.
lp::Problem block_problem(const std::vector<hulls::PointSet>& sets, const BlockLayout& l) {
    lp::Problem p(l.total);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        Vec row(l.total);
        for (std::size_t j = 0; j < sets[i].size(); ++j) row[l.offset[i] + j] = 1.0;
        p.add_eq(std::move(row), 1.0);
    }
    return p;
}

Decomposition read_solution(const std::vector<hulls::PointSet>& sets, const BlockLayout& l,
                            const lp::Solution& sol, int face_dim, const DecompOptions& opts) {
    Decomposition d;
    d.face_dim = face_dim;
    d.blocks.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::vector<int> support;
        std::vector<double> weights;
        for (std::size_t j = 0; j < sets[i].size(); ++j) {
            support.push_back(static_cast<int>(j));
            weights.push_back(sol.x[l.offset[i] + j]);
        }
        d.blocks.push_back(hulls::make_combination(std::move(support), std::move(weights),
                                                   opts.prune));
        d.parts.push_back(d.blocks.back().combine(sets[i]));
        d.total_support += d.blocks.back().cardinality();
    }
    return d;
}

double reconstruction_residual(const Decomposition& d, const Vec& target, std::size_t coords) {
    Vec sum(target.size());
    for (const Vec& part : d.parts)
        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += part[c];
    double r = 0.0;
    for (std::size_t c = 0; c < coords; ++c) r = std::max(r, std::fabs(sum[c] - target[c]));
    return r;
}

lp::Options lp_options(const DecompOptions& opts) {
    lp::Options o;
    o.tol = opts.tol_lp;
    return o;
}

} // namespace

Decomposition decompose_plain(const std::vector<hulls::PointSet>& sets, const Vec& z,
                              const DecompOptions& opts) {
    check_sets(sets);
    const std::size_t m = sets[0].dim();
    if (z.size() != m) throw invalid_input("decompose_plain: dimension mismatch");

    const BlockLayout l = layout_of(sets);
    lp::Problem p = block_problem(sets, l);
    for (std::size_t s = 0; s < m; ++s) {
        Vec row(l.total);
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = 0; j < sets[i].size(); ++j)
                row[l.offset[i] + j] = sets[i].points[j][s];
        p.add_eq(std::move(row), z[s]);
    }
    // zero objective: any vertex of the feasible region carries the budget

    lp::Solution sol = lp::solve(p, lp_options(opts));
    if (sol.status != lp::Status::Optimal)
        throw infeasible_error("decompose_plain: target outside the hull");

    Decomposition d = read_solution(sets, l, sol, static_cast<int>(m), opts);
    d.residual = reconstruction_residual(d, z, m);
    return d;
}

Decomposition decompose_refined(const std::vector<hulls::PointSet>& sets, const Vec& z,
                                const hulls::FaceDescription& face, const DecompOptions& opts) {
    check_sets(sets);
    const std::size_t m = sets[0].dim();
    if (z.size() != m) throw invalid_input("decompose_refined: dimension mismatch");
    const int k = face.dim;
    if (k < 0 || static_cast<std::size_t>(k) > m)
        throw invalid_input("decompose_refined: face dimension out of range");
    if (face.exposing.size() != m || static_cast<std::size_t>(k) != face.basis.size())
        throw invalid_input("decompose_refined: malformed face certificate");

    // rotate so the face's affine hull spans the leading k coordinates; only
    // those coordinate sums are pinned, the exposing direction is minimized
    Mat frame = orthonormal_frame(face.basis, m);

    const BlockLayout l = layout_of(sets);
    lp::Problem p = block_problem(sets, l);
    for (int s = 0; s < k; ++s) {
        const Vec axis = frame.col(s);
        Vec row(l.total);
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = 0; j < sets[i].size(); ++j)
                row[l.offset[i] + j] = dot(axis, sets[i].points[j]);
        p.add_eq(std::move(row), dot(axis, z));
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets[i].size(); ++j)
            p.c[l.offset[i] + j] = dot(face.exposing, sets[i].points[j]);

    lp::Solution sol = lp::solve(p, lp_options(opts));
    if (sol.status != lp::Status::Optimal)
        throw infeasible_error("decompose_refined: target outside the hull");

    Decomposition d = read_solution(sets, l, sol, k, opts);
    // the construction only pins k coordinates; the rest must close on their
    // own because the optimum lies in the face's affine hull
    d.residual = reconstruction_residual(d, z, m);
    if (d.residual > opts.verify_tol * std::max(1.0, norm_inf(z)))
        throw invalid_input("decompose_refined: face certificate inconsistent with target");
    return d;
}

Decomposition decompose_epigraph(const std::vector<hulls::PointSet>& sets, const Vec& z_prefix,
                                 const DecompOptions& opts) {
    check_sets(sets);
    const std::size_t m = sets[0].dim();
    if (z_prefix.size() + 1 != m) throw invalid_input("decompose_epigraph: prefix length");

    const BlockLayout l = layout_of(sets);
    lp::Problem p = block_problem(sets, l);
    for (std::size_t s = 0; s + 1 < m; ++s) {
        Vec row(l.total);
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = 0; j < sets[i].size(); ++j)
                row[l.offset[i] + j] = sets[i].points[j][s];
        p.add_eq(std::move(row), z_prefix[s]);
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets[i].size(); ++j)
            p.c[l.offset[i] + j] = sets[i].points[j][m - 1];

    lp::Solution sol = lp::solve(p, lp_options(opts));
    if (sol.status != lp::Status::Optimal)
        throw infeasible_error("decompose_epigraph: empty hull slice");

    Decomposition d = read_solution(sets, l, sol, static_cast<int>(m) - 1, opts);
    d.residual = reconstruction_residual(d, z_prefix, m - 1);
    return d;
}

} // namespace sfgap::sf
