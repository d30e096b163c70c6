#pragma once

#include "sfgap/hulls.hpp"

#include <vector>

namespace sfgap::sf {

// Per-block convex combinations reproducing a target point in the convex hull
// of a sum of finite sets, together with the support-budget certificate. The
// budget guarantee comes from the basicness of the underlying LP vertex: a
// vertex of a system with (face_dim + n) rows carries at most that many
// positive weights.
struct Decomposition {
    std::vector<hulls::ConvexCombination> blocks; // one per input set
    std::vector<Vec> parts;                       // z^i = blocks[i].combine(sets[i])
    int face_dim = 0;                             // dimension bound used by the construction
    int total_support = 0;                        // sum of block cardinalities
    double residual = 0.0;                        // reconstruction error, inf norm

    std::vector<int> cardinalities() const;
    int blocks_with_support_ge2() const;
};

struct DecompOptions {
    double tol_lp = tol::lp;
    double prune = 1e-10;         // weights below this never count toward k_i
    double verify_tol = 1e-8;     // reconstruction check
    std::size_t minkowski_cap = caps::minkowski;
};

// Budget: sum k_i <= m + n, at most m blocks with k_i >= 2.
Decomposition decompose_plain(const std::vector<hulls::PointSet>& sets, const Vec& z,
                              const DecompOptions& opts = {});

// Budget: sum k_i <= k + n with every k_i <= k+1, where k = face.dim comes
// from a minimal-face certificate for z. The construction rotates coordinates
// so the face directions span the leading k axes, pins only those k sums and
// minimizes along the exposing direction; the trailing m-k coordinates are
// re-verified numerically.
Decomposition decompose_refined(const std::vector<hulls::PointSet>& sets, const Vec& z,
                                const hulls::FaceDescription& face,
                                const DecompOptions& opts = {});

// Budget: sum k_i <= m-1+n with every k_i <= m. Pins the first m-1 coordinate
// sums to z_prefix and minimizes the summed last coordinate over the hull
// slice; the achieved minimum is parts' last-coordinate sum.
Decomposition decompose_epigraph(const std::vector<hulls::PointSet>& sets, const Vec& z_prefix,
                                 const DecompOptions& opts = {});

} // namespace sfgap::sf
