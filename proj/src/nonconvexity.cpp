#include "sfgap/nonconvexity.hpp"

#include "sfgap/hulls.hpp"
#include "sfgap/sfdecomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfgap::rho {

Value min_box(int n, int k) {
    if (n < 1 || k < 1) throw invalid_input("min_box: n, k must be >= 1");
    const double v = k <= n ? double(k - 1) / double(k) : double(n - 1) / double(n);
    return {v, Flag::exact};
}

Value neg_log_max(int n, int k) {
    if (n < 1 || k < 1) throw invalid_input("neg_log_max: n, k must be >= 1");
    return {std::log(double(std::min(k, n))), Flag::exact};
}

Value h_sigma_bound(int k, double sigma) {
    if (k < 1) throw invalid_input("h_sigma_bound: k must be >= 1");
    if (!(sigma > 0.0 && sigma <= 1.0)) throw invalid_input("h_sigma_bound: sigma out of (0,1]");
    if (k == 1) return {0.0, Flag::exact}; // first nonconvexity always vanishes
    return {std::log(double(k) / sigma), Flag::upper_bound};
}

double eval_h_sigma(const Vec& x, double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw invalid_input("eval_h_sigma: sigma out of (0,1]");
    const double l1 = norm1(x);
    double h = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s)
        h += std::log((l1 - x[s] + sigma) / (l1 + sigma));
    return h;
}

double eval_H(const Vec& x, double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw invalid_input("eval_H: sigma out of (0,1]");
    const double l1 = norm1(x);
    double p = 1.0;
    for (std::size_t s = 0; s < x.size(); ++s) p *= (l1 - x[s] + sigma) / (l1 + sigma);
    return p;
}

void Table::validate() const {
    if (rows.empty()) throw invalid_input("rho table: no rows");
    const std::size_t cols = rows[0].size();
    if (cols < 1) throw invalid_input("rho table: no columns");
    if (!labels.empty() && labels.size() != rows.size())
        throw invalid_input("rho table: label count mismatch");
    for (const auto& row : rows) {
        if (row.size() != cols) throw invalid_input("rho table: ragged rows");
        if (std::fabs(row[0].value) > 1e-15)
            throw invalid_input("rho table: k=1 column must be zero");
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k].value < 0) throw invalid_input("rho table: negative entry");
            if (k > 0 && row[k].value < row[k - 1].value - 1e-12)
                throw invalid_input("rho table: row not non-decreasing in k");
        }
    }
}

namespace {
Table build_table(std::size_t blocks, int m, const std::string& prefix,
                  const std::function<Value(std::size_t, int)>& entry) {
    if (m < 0) throw invalid_input("rho table: negative m");
    Table t;
    t.rows.resize(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        t.labels.push_back(prefix + std::to_string(i + 1));
        for (int k = 1; k <= m + 1; ++k) t.rows[i].push_back(entry(i, k));
    }
    t.validate();
    return t;
}
} // namespace

Table table_min_box(const std::vector<int>& n_per_block, int m, double scale) {
    return build_table(n_per_block.size(), m, "min_box_", [&](std::size_t i, int k) {
        Value v = min_box(n_per_block[i], k);
        v.value *= scale;
        return v;
    });
}

Table table_neg_log_max(const std::vector<int>& n_per_block, int m) {
    return build_table(n_per_block.size(), m, "neglogmax_",
                       [&](std::size_t i, int k) { return neg_log_max(n_per_block[i], k); });
}

Table table_h_sigma(const std::vector<double>& sigmas, int m, double scale) {
    return build_table(sigmas.size(), m, "h_sigma_", [&](std::size_t i, int k) {
        Value v = h_sigma_bound(k, sigmas[i]);
        v.value *= scale;
        return v;
    });
}

std::vector<int> SampledFunction::finite_indices() const {
    std::vector<int> idx;
    for (std::size_t j = 0; j < values.size(); ++j)
        if (std::isfinite(values[j])) idx.push_back(static_cast<int>(j));
    return idx;
}

void SampledFunction::validate() const {
    const std::size_t d = dim();
    if (d == 0) throw invalid_input("sampled function: zero dimension");
    if (box_hi.size() != d) throw invalid_input("sampled function: box dimension mismatch");
    if (points.size() != values.size())
        throw invalid_input("sampled function: points/values size mismatch");
    if (points.empty()) throw invalid_input("sampled function: no grid points");
    bool any_finite = false;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != d) throw invalid_input("sampled function: point dimension");
        for (std::size_t c = 0; c < d; ++c)
            if (points[j][c] < box_lo[c] - 1e-12 || points[j][c] > box_hi[c] + 1e-12)
                throw invalid_input("sampled function: grid point outside box");
        if (std::isnan(values[j]) || values[j] == -std::numeric_limits<double>::infinity())
            throw invalid_input("sampled function: value must be finite or +inf");
        any_finite |= std::isfinite(values[j]);
    }
    if (!any_finite) throw invalid_input("sampled function: no finite values");
}

namespace {

// Weight vectors visited for a support of size k: all lattice compositions
// w/steps with |w| = steps, plus the exact uniform vector.
void for_each_weight(int k, int steps, const std::function<void(const std::vector<double>&)>& fn) {
    std::vector<int> units(k, 0);
    std::vector<double> w(k, 0.0);
    // compositions of `steps` into k nonnegative parts, lexicographic
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            units[pos] = left;
            for (int j = 0; j < k; ++j) w[j] = double(units[j]) / double(steps);
            fn(w);
            return;
        }
        for (int u = 0; u <= left; ++u) {
            units[pos] = u;
            rec(pos + 1, left - u);
        }
    };
    rec(0, steps);
    if (steps % k != 0) {
        std::fill(w.begin(), w.end(), 1.0 / double(k));
        fn(w);
    }
}

std::optional<double> grid_value_at(const SampledFunction& f, const Vec& x, double tol) {
    for (std::size_t j = 0; j < f.points.size(); ++j)
        if (approx_equal(f.points[j], x, tol)) {
            if (!std::isfinite(f.values[j])) return std::nullopt;
            return f.values[j];
        }
    return std::nullopt;
}

} // namespace

double rho_k_grid(const SampledFunction& f, int k, const GridOptions& opts) {
    f.validate();
    if (k < 1) throw invalid_input("rho_k_grid: k must be >= 1");
    if (k == 1) return 0.0;
    const std::vector<int> finite = f.finite_indices();
    const std::size_t kk = std::min<std::size_t>(k, finite.size());
    if (hulls::subset_count(finite.size(), kk, opts.subset_cap) > opts.subset_cap)
        throw cap_exceeded("rho_k_grid: subset cap exceeded");

    const std::size_t d = f.dim();
    double best = 0.0;
    hulls::for_each_subset(finite.size(), kk, [&](const std::vector<int>& idx) {
        for_each_weight(static_cast<int>(kk), opts.weight_steps,
                        [&](const std::vector<double>& w) {
            Vec xbar(d);
            double combo = 0.0;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                const int pt = finite[idx[j]];
                combo += w[j] * f.values[pt];
                for (std::size_t c = 0; c < d; ++c) xbar[c] += w[j] * f.points[pt][c];
            }
            double fx;
            if (f.exact) {
                fx = f.exact(xbar);
            } else {
                const auto v = grid_value_at(f, xbar, opts.grid_match_tol);
                if (!v) return; // off-grid combination point, not certifiable
                fx = *v;
            }
            if (std::isfinite(fx)) best = std::max(best, fx - combo);
        });
        return true;
    });
    return best;
}

double envelope_k(const SampledFunction& f, int k, const Vec& x, const GridOptions& opts) {
    f.validate();
    if (k < 1) throw invalid_input("envelope_k: k must be >= 1");
    const std::size_t d = f.dim();
    if (x.size() != d) throw invalid_input("envelope_k: dimension mismatch");
    for (std::size_t c = 0; c < d; ++c)
        if (x[c] < f.box_lo[c] - 1e-12 || x[c] > f.box_hi[c] + 1e-12)
            throw invalid_input("envelope_k: x outside the domain box");

    const std::vector<int> finite = f.finite_indices();
    auto epigraph_set = [&](const std::vector<int>& members) {
        std::vector<Vec> pts;
        pts.reserve(members.size());
        for (int j : members) {
            Vec p(d + 1);
            for (std::size_t c = 0; c < d; ++c) p[c] = f.points[j][c];
            p[d] = f.values[j];
            pts.push_back(std::move(p));
        }
        return hulls::PointSet::of("epigraph", std::move(pts));
    };
    auto slice_min = [&](const std::vector<int>& members) -> std::optional<double> {
        try {
            sf::Decomposition dec = sf::decompose_epigraph({epigraph_set(members)}, x);
            double last = 0.0;
            for (const Vec& part : dec.parts) last += part[d];
            return last;
        } catch (const infeasible_error&) {
            return std::nullopt;
        }
    };

    // with k points available per combination and d+1 always enough by
    // Caratheodory, one slice minimization over all samples is exact
    if (static_cast<std::size_t>(k) >= d + 1 || static_cast<std::size_t>(k) >= finite.size()) {
        const auto v = slice_min(finite);
        if (!v) throw infeasible_error("envelope_k: x not representable on the grid");
        return *v;
    }

    if (hulls::subset_count(finite.size(), k, opts.subset_cap) > opts.subset_cap)
        throw cap_exceeded("envelope_k: subset cap exceeded");
    std::optional<double> best;
    hulls::for_each_subset(finite.size(), k, [&](const std::vector<int>& idx) {
        std::vector<int> members;
        members.reserve(idx.size());
        for (int j : idx) members.push_back(finite[j]);
        const auto v = slice_min(members);
        if (v && (!best || *v < *best)) best = *v;
        return true;
    });
    if (!best) throw infeasible_error("envelope_k: x not representable by any k-subset");
    return *best;
}

} // namespace sfgap::rho
