#pragma once

#include "sfgap/linalg.hpp"
#include "sfgap/lp.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sfgap::hulls {

// A finite labelled point set in R^m. This is the only set representation in
// the toolkit: hull queries below are exact for the polytopes these span and
// intentionally undefined for anything else.
struct PointSet {
    std::string label;
    std::vector<Vec> points;

    std::size_t dim() const { return points.empty() ? 0 : points[0].size(); }
    std::size_t size() const { return points.size(); }

    static PointSet of(std::string label, std::vector<Vec> pts); // validates
};

// Convex weights over a subset of a PointSet. Weights are strictly positive
// and sum to 1 within 1e-12; zero-weight entries are pruned at construction.
struct ConvexCombination {
    std::vector<int> support;
    std::vector<double> weights;

    Vec combine(const PointSet& s) const;
    int cardinality() const { return static_cast<int>(support.size()); }
};

// Builds a combination from raw LP weights: drops entries below prune_tol,
// renormalizes, and validates the simplex invariants.
ConvexCombination make_combination(std::vector<int> support, std::vector<double> weights,
                                   double prune_tol = 1e-10);

// All pairwise sums over one point per set, duplicates within merge_tol
// merged (first occurrence kept, enumeration order preserved). `tuples[p]`
// lists the per-set index tuples that produced point p.
struct MinkowskiSum {
    PointSet points;
    std::vector<std::vector<std::vector<int>>> tuples;
};
MinkowskiSum minkowski_vertices(const std::vector<PointSet>& sets,
                                std::size_t cap = caps::minkowski,
                                double merge_tol = 1e-12);

struct HullOptions {
    double tol_lp = tol::lp;
    double tol_face = tol::face;
    double tol_rank = tol::rank;
    std::size_t subset_cap = caps::subsets;
    std::size_t minkowski_cap = caps::minkowski;
};

// Membership of z in conv_k S: scans k-subsets in lexicographic order and
// returns the first subset admitting convex weights that reproduce z, or
// nullopt. Throws cap_exceeded when C(|S|,k) passes opts.subset_cap.
std::optional<ConvexCombination> convk_member(const PointSet& s, int k, const Vec& z,
                                              const HullOptions& opts = {});

// Shrinks the support to at most dim+1 points with the same weighted sum by
// iterated affine-dependence elimination.
ConvexCombination caratheodory_reduce(const PointSet& s, const ConvexCombination& comb);

// The minimal face of conv(points of a Minkowski sum) containing z.
// `vertex_ids` are the candidate points lying on the face, `dim` its affine
// dimension k (z is then exactly k-extreme), `basis` an orthonormal basis of
// the face directions, `exposing` a vector with exposing.v == exposing.z on
// the face and >= exposing.z + 1 strictly off it (all-zero when k = m).
struct FaceDescription {
    int dim = 0;
    std::vector<int> vertex_ids;
    std::vector<Vec> basis;
    Vec exposing;
    Vec base;
};

FaceDescription minimal_face(const MinkowskiSum& mk, const Vec& z, const HullOptions& opts = {});
FaceDescription minimal_face(const std::vector<PointSet>& sets, const Vec& z,
                             const HullOptions& opts = {});

// Exposing direction for a face found by minimal_face, recomputed against an
// explicit candidate list (the auxiliary LP from the face/off-face margin
// conditions; infeasibility means the face was not minimal).
Vec exposing_direction(const std::vector<int>& face_ids, const PointSet& all_vertices,
                       const Vec& z, const HullOptions& opts = {});

// Number of k-subsets of an n-set, saturating at cap+1 to keep cap checks cheap.
std::size_t subset_count(std::size_t n, std::size_t k, std::size_t cap);

// Lexicographic k-subset enumeration helper used by the hull scans and the
// grid nonconvexity estimator. Visits index vectors in increasing order and
// stops early when visit returns false.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<int>&)>& visit);

} // namespace sfgap::hulls
