#include "sfgap/apps.hpp"

#include "sfgap/lp.hpp"
#include "sfgap/nonconvexity.hpp"
#include "sfgap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfgap::apps {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

std::string to_string(UtilityKind k) {
    return k == UtilityKind::throughput ? "throughput" : "log";
}

UtilityKind utility_kind_from_string(const std::string& s) {
    if (s == "throughput") return UtilityKind::throughput;
    if (s == "log") return UtilityKind::log_rate;
    throw invalid_input("unknown utility kind '" + s + "'");
}

double NumInstance::cmax() const { return norm_inf(capacity); }

void NumInstance::validate() const {
    if (links < 1 || users < 1) throw invalid_input("num instance: empty dimensions");
    if (static_cast<int>(paths.size()) != users || static_cast<int>(routing.size()) != users)
        throw invalid_input("num instance: per-user arrays mismatch");
    if (capacity.size() != static_cast<std::size_t>(links))
        throw invalid_input("num instance: capacity size");
    for (std::size_t l = 0; l < capacity.size(); ++l)
        if (!(capacity[l] > 0)) throw invalid_input("num instance: capacities must be positive");
    for (int i = 0; i < users; ++i) {
        if (paths[i] < 1) throw invalid_input("num instance: user without paths");
        if (i > 0 && paths[i] > paths[i - 1])
            throw invalid_input("num instance: path counts must be sorted descending");
        const Mat& r = routing[i];
        if (r.rows() != static_cast<std::size_t>(links) ||
            r.cols() != static_cast<std::size_t>(paths[i]))
            throw invalid_input("num instance: routing matrix shape");
        for (std::size_t k = 0; k < r.cols(); ++k) {
            bool nonempty = false;
            for (std::size_t l = 0; l < r.rows(); ++l) {
                if (r(l, k) != 0.0 && r(l, k) != 1.0)
                    throw invalid_input("num instance: routing entries must be 0/1");
                nonempty |= r(l, k) == 1.0;
            }
            if (!nonempty) throw invalid_input("num instance: path crossing no link");
        }
    }
}

NumInstance build_num(std::uint64_t seed, int links, int users, int paths_each,
                      UtilityKind kind) {
    if (links < 1 || users < 1 || paths_each < 1)
        throw invalid_input("build_num: sizes must be >= 1");
    std::mt19937_64 rng(seed);
    NumInstance inst;
    inst.links = links;
    inst.users = users;
    inst.kind = kind;
    inst.seed = seed;
    inst.paths.assign(users, paths_each);
    for (int i = 0; i < users; ++i) {
        Mat r(links, paths_each);
        for (int k = 0; k < paths_each; ++k) {
            int ones = 0;
            for (int l = 0; l < links; ++l) {
                const bool bit = uniform01(rng) < 0.5;
                r(l, k) = bit ? 1.0 : 0.0;
                ones += bit;
            }
            if (ones == 0) r(uniform_index(rng, links), k) = 1.0;
        }
        inst.routing.push_back(std::move(r));
    }
    inst.capacity = Vec(links);
    for (int l = 0; l < links; ++l) inst.capacity[l] = uniform(rng, 0.5, 1.0);
    inst.validate();
    return inst;
}

namespace {

// Visits every single-path assignment (one chosen column per user).
void for_each_assignment(const std::vector<int>& paths, std::size_t cap,
                         const std::function<void(const std::vector<int>&)>& fn) {
    std::size_t total = 1;
    for (int k : paths) {
        if (static_cast<std::size_t>(k) > cap / total)
            throw cap_exceeded("num oracle: assignment enumeration cap");
        total *= static_cast<std::size_t>(k);
    }
    std::vector<int> s(paths.size(), 0);
    for (std::size_t t = 0; t < total; ++t) {
        fn(s);
        for (std::size_t i = s.size(); i-- > 0;) {
            if (++s[i] < paths[i]) break;
            s[i] = 0;
        }
    }
}

// max sum(t) over  A t <= cc, 0 <= t <= box  for the chosen path columns;
// solved on capacity-normalized data so scaling the instance scales the
// result exactly. Returns the maximal rate sum.
double assignment_rate_lp(const NumInstance& inst, const std::vector<int>& s, const Vec& cc,
                          double box) {
    const double scale = std::max(norm_inf(cc), box);
    if (scale <= 0) return 0.0;
    const int n = inst.users;
    lp::Problem p(n);
    for (int j = 0; j < n; ++j) p.c[j] = -1.0;
    for (int l = 0; l < inst.links; ++l) {
        Vec row(n);
        for (int i = 0; i < n; ++i) row[i] = inst.routing[i](l, s[i]);
        p.add_ub(std::move(row), cc[l] / scale);
    }
    for (int i = 0; i < n; ++i) {
        Vec row(n);
        row[i] = 1.0;
        p.add_ub(std::move(row), box / scale);
    }
    lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        throw numeric_breakdown("num oracle: rate LP not optimal");
    return scale * -sol.objective;
}

// max sum(log t) over  A t <= cc, 0 < t <= box. Damped coordinate passes
// interleaved with closed-form pairwise rebalancing (single-coordinate moves
// stall on a shared binding link: every split of the saturated capacity is a
// fixed point), multi-start. Returns -inf when some user cannot send at all.
double assignment_log_ascent(const NumInstance& inst, const std::vector<int>& s, const Vec& cc,
                             double box, const NumOracleOptions& opts) {
    const int n = inst.users;
    std::vector<std::vector<int>> links_of(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < inst.links; ++l)
            if (inst.routing[i](l, s[i]) == 1.0) links_of[i].push_back(l);

    double min_cap = box;
    for (int i = 0; i < n; ++i)
        for (int l : links_of[i]) min_cap = std::min(min_cap, cc[l]);
    if (min_cap <= 0) return -kInf; // some user is cut off entirely

    const double start_fracs[] = {0.05, 0.25, 0.5, 0.95};
    const int starts = std::min<int>(opts.ascent_starts, 4);
    const double tol = opts.ascent_tol * 1e-2 * std::max(1.0, box);

    auto slack_of = [&](const std::vector<double>& t) {
        std::vector<double> slack(cc.raw());
        for (int i = 0; i < n; ++i)
            for (int l : links_of[i]) slack[l] -= t[i];
        return slack;
    };

    double best = -kInf;
    for (int r = 0; r < starts; ++r) {
        std::vector<double> t(n, start_fracs[r] * min_cap / n);
        std::vector<double> slack = slack_of(t);
        for (int sweep = 0; sweep < 20000; ++sweep) {
            double change = 0.0;
            for (int i = 0; i < n; ++i) {
                double cap = box;
                for (int l : links_of[i]) cap = std::min(cap, slack[l] + t[i]);
                const double tn = t[i] + 0.5 * (cap - t[i]);
                for (int l : links_of[i]) slack[l] -= tn - t[i];
                change = std::max(change, std::fabs(tn - t[i]));
                t[i] = tn;
            }
            // pairwise: move along t_i += d, t_j -= d to equalize marginals
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    double d_up = box - t[i];   // limited by i's headroom
                    double d_dn = -(box - t[j]);
                    for (int l : links_of[i]) {
                        const bool shared = inst.routing[j](l, s[j]) == 1.0;
                        if (!shared) d_up = std::min(d_up, slack[l]);
                    }
                    for (int l : links_of[j]) {
                        const bool shared = inst.routing[i](l, s[i]) == 1.0;
                        if (!shared) d_dn = std::max(d_dn, -slack[l]);
                    }
                    d_up = std::min(d_up, t[j]);  // keep t_j >= 0
                    d_dn = std::max(d_dn, -t[i]); // keep t_i >= 0
                    double d = 0.5 * (t[j] - t[i]);
                    d = std::min(d_up, std::max(d_dn, d));
                    if (d == 0.0) continue;
                    const double before = std::log(t[i]) + std::log(t[j]);
                    const double after = std::log(t[i] + d) + std::log(t[j] - d);
                    if (!(after > before)) continue;
                    for (int l : links_of[i])
                        if (inst.routing[j](l, s[j]) == 0.0) slack[l] -= d;
                    for (int l : links_of[j])
                        if (inst.routing[i](l, s[i]) == 0.0) slack[l] += d;
                    t[i] += d;
                    t[j] -= d;
                    change = std::max(change, std::fabs(d));
                }
            }
            if (change < tol) break;
        }
        double val = 0.0;
        for (int i = 0; i < n; ++i) val += std::log(std::max(t[i], 1e-300));
        best = std::max(best, val);
    }
    return best;
}

double primal_core(const NumInstance& inst, const Vec& cc, const NumOracleOptions& opts) {
    for (std::size_t l = 0; l < cc.size(); ++l)
        if (cc[l] < -1e-12) return kInf; // even zero flow violates this link
    Vec c2 = cc;
    for (std::size_t l = 0; l < c2.size(); ++l) c2[l] = std::max(c2[l], 0.0);

    const double box = inst.cmax(); // the function domain keeps the unperturbed box
    double best = kInf;
    for_each_assignment(inst.paths, opts.assignment_cap, [&](const std::vector<int>& s) {
        double value;
        if (inst.kind == UtilityKind::throughput) {
            value = -assignment_rate_lp(inst, s, c2, box);
        } else {
            const double logs = assignment_log_ascent(inst, s, c2, box, opts);
            value = logs == -kInf ? kInf : -logs;
        }
        best = std::min(best, value);
    });
    return best;
}

} // namespace

double num_primal_exact(const NumInstance& inst, const NumOracleOptions& opts) {
    inst.validate();
    const double p = primal_core(inst, inst.capacity, opts);
    if (p == kInf) throw numeric_breakdown("num_primal_exact: infeasible unperturbed instance");
    return p;
}

double perturbed_primal(const NumInstance& inst, const Vec& z, const NumOracleOptions& opts) {
    inst.validate();
    if (z.size() != static_cast<std::size_t>(inst.links))
        throw invalid_input("perturbed_primal: perturbation size");
    return primal_core(inst, inst.capacity + z, opts);
}

namespace {

double positive(double v) { return v > 0 ? v : 0.0; }

// Block conjugate f*(w) for one user; optionally writes the maximizing x.
double conjugate_block(UtilityKind kind, const Vec& w, double box, Vec* xhat) {
    const int kpaths = static_cast<int>(w.size());
    double pos_sum = 0.0;
    for (int t = 0; t < kpaths; ++t) pos_sum += box * positive(w[t]);

    auto phi = [&](double u) { // sup over v in (0, box] of u*v + log(v)
        if (u >= -1.0 / box) return u * box + std::log(box);
        return -1.0 - std::log(-u);
    };

    double best = -kInf;
    int s_star = 0;
    for (int t = 0; t < kpaths; ++t) {
        const double others = pos_sum - box * positive(w[t]);
        const double own = kind == UtilityKind::throughput ? box * positive(w[t] + 1.0)
                                                           : phi(w[t]);
        if (others + own > best) {
            best = others + own;
            s_star = t;
        }
    }
    if (xhat) {
        *xhat = Vec(kpaths);
        for (int t = 0; t < kpaths; ++t) (*xhat)[t] = w[t] > 0 ? box : 0.0;
        if (kind == UtilityKind::throughput)
            (*xhat)[s_star] = w[s_star] + 1.0 > 0 ? box : 0.0;
        else
            (*xhat)[s_star] = w[s_star] >= -1.0 / box ? box : -1.0 / w[s_star];
    }
    return best;
}

double dual_value_core(const NumInstance& inst, const Vec& y, Vec* supergrad) {
    const double box = inst.cmax();
    double q = -dot(inst.capacity, y);
    if (supergrad) *supergrad = -1.0 * inst.capacity;
    for (int i = 0; i < inst.users; ++i) {
        const Vec w = -1.0 * inst.routing[i].mul_transposed(y);
        Vec xhat;
        q -= conjugate_block(inst.kind, w, box, supergrad ? &xhat : nullptr);
        if (supergrad) {
            const Vec rx = inst.routing[i].mul(xhat);
            for (int l = 0; l < inst.links; ++l) (*supergrad)[l] += rx[l];
        }
    }
    return q;
}

} // namespace

double num_dual_value(const NumInstance& inst, const Vec& y) {
    inst.validate();
    if (y.size() != static_cast<std::size_t>(inst.links))
        throw invalid_input("num_dual_value: multiplier size");
    for (std::size_t l = 0; l < y.size(); ++l)
        if (y[l] < -1e-12) throw invalid_input("num_dual_value: negative multiplier");
    Vec yc = y;
    for (std::size_t l = 0; l < yc.size(); ++l) yc[l] = std::max(yc[l], 0.0);
    return dual_value_core(inst, yc, nullptr);
}

DualEstimate num_dual_opt(const NumInstance& inst, const NumDualOptions& opts) {
    inst.validate();
    if (inst.links > 4) throw cap_exceeded("num_dual_opt: grid limited to 4 links");

    // throughput duals scale linearly with capacity, so optimize the
    // capacity-normalized instance and scale back (log utility does not scale)
    NumInstance work = inst;
    double factor = 1.0;
    if (inst.kind == UtilityKind::throughput) {
        factor = inst.cmax();
        work.capacity = (1.0 / factor) * inst.capacity;
    }

    const int L = inst.links;
    const int g = std::max(2, opts.grid_per_axis);
    const double h = opts.y_cap / (g - 1);

    double best_val = -kInf;
    Vec best_y(L);
    std::vector<std::pair<double, Vec>> top; // kept sorted, best first
    std::vector<int> odo(L, 0);
    std::size_t cells = 1;
    for (int l = 0; l < L; ++l) cells *= static_cast<std::size_t>(g);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        Vec y(L);
        for (int l = 0; l < L; ++l) y[l] = odo[l] * h;
        const double v = dual_value_core(work, y, nullptr);
        if (v > best_val) {
            best_val = v;
            best_y = y;
        }
        if (top.size() < static_cast<std::size_t>(opts.starts) || v > top.back().first) {
            top.emplace_back(v, y);
            std::stable_sort(top.begin(), top.end(),
                             [](const auto& a, const auto& b) { return a.first > b.first; });
            if (top.size() > static_cast<std::size_t>(opts.starts)) top.pop_back();
        }
        for (int l = L; l-- > 0;) {
            if (++odo[l] < g) break;
            odo[l] = 0;
        }
    }

    for (const auto& [v0, y0] : top) {
        Vec y = y0;
        for (int t = 1; t <= opts.refine_steps; ++t) {
            Vec grad;
            dual_value_core(work, y, &grad);
            for (int l = 0; l < L; ++l) y[l] = std::max(0.0, y[l] + grad[l] / t);
            const double v = dual_value_core(work, y, nullptr);
            if (v > best_val) {
                best_val = v;
                best_y = y;
            }
        }
    }

    // shrinking local grids around the incumbent: q is concave, so the grid
    // maximum converges in value even where supergradient steps crawl
    double radius = h;
    for (int round = 0; round < opts.polish_rounds; ++round) {
        const int pg = 9;
        std::vector<int> podo(L, 0);
        std::size_t pcells = 1;
        for (int l = 0; l < L; ++l) pcells *= static_cast<std::size_t>(pg);
        const Vec center = best_y;
        for (std::size_t cell = 0; cell < pcells; ++cell) {
            Vec y(L);
            for (int l = 0; l < L; ++l)
                y[l] = std::max(0.0, center[l] - radius + podo[l] * (2.0 * radius / (pg - 1)));
            const double v = dual_value_core(work, y, nullptr);
            if (v > best_val) {
                best_val = v;
                best_y = y;
            }
            for (int l = L; l-- > 0;) {
                if (++podo[l] < pg) break;
                podo[l] = 0;
            }
        }
        radius /= 3.0;
    }
    return {factor * best_val, best_y};
}

double num_dual_convexified(const NumInstance& inst) {
    inst.validate();
    if (inst.kind != UtilityKind::throughput)
        throw invalid_input("num_dual_convexified: throughput instances only");
    const double M = inst.cmax();
    const int n = inst.users;
    std::vector<int> offset(n);
    int total = 0;
    for (int i = 0; i < n; ++i) {
        offset[i] = total;
        total += inst.paths[i];
    }

    // normalized LP: min sum u_i  s.t.  R x <= c/M, x in [0,1], u_i >= -1,
    // u_i >= -sum_s x^i_s; the value times M is the dual optimum
    lp::Problem p(total + n);
    for (int i = 0; i < n; ++i) {
        p.c[total + i] = 1.0;
        p.lower[total + i] = -1.0;
    }
    for (int l = 0; l < inst.links; ++l) {
        Vec row(total + n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < inst.paths[i]; ++k) row[offset[i] + k] = inst.routing[i](l, k);
        p.add_ub(std::move(row), inst.capacity[l] / M);
    }
    for (int j = 0; j < total; ++j) {
        Vec row(total + n);
        row[j] = 1.0;
        p.add_ub(std::move(row), 1.0);
    }
    for (int i = 0; i < n; ++i) {
        Vec row(total + n);
        for (int k = 0; k < inst.paths[i]; ++k) row[offset[i] + k] = -1.0;
        row[total + i] = -1.0;
        p.add_ub(std::move(row), 0.0);
    }
    lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        throw numeric_breakdown("num_dual_convexified: LP not optimal");
    return M * sol.objective;
}

void DsmInstance::validate() const {
    if (users < 1 || tones < 1) throw invalid_input("dsm instance: empty dimensions");
    if (noise.size() != static_cast<std::size_t>(tones))
        throw invalid_input("dsm instance: noise size");
    if (budget.size() != static_cast<std::size_t>(users))
        throw invalid_input("dsm instance: budget size");
    for (std::size_t i = 0; i < noise.size(); ++i)
        if (!(noise[i] > 0 && noise[i] <= 1))
            throw invalid_input("dsm instance: noise must lie in (0,1] (pre-scaled)");
    for (std::size_t l = 0; l < budget.size(); ++l)
        if (!(budget[l] > 0 && budget[l] <= 1))
            throw invalid_input("dsm instance: budgets must lie in (0,1] (pre-scaled)");
}

DsmInstance build_dsm(std::uint64_t seed, int users, int tones) {
    std::mt19937_64 rng(seed);
    DsmInstance inst;
    inst.users = users;
    inst.tones = tones;
    inst.seed = seed;
    inst.noise = Vec(tones);
    inst.budget = Vec(users);
    for (int i = 0; i < tones; ++i) inst.noise[i] = uniform(rng, 0.3, 1.0);
    for (int l = 0; l < users; ++l) inst.budget[l] = uniform(rng, 0.5, 1.0);
    inst.validate();
    return inst;
}

DsmInstance uniform_dsm(int users, int tones, double sigma, double budget) {
    DsmInstance inst;
    inst.users = users;
    inst.tones = tones;
    inst.noise = Vec(tones, sigma);
    inst.budget = Vec(users, budget);
    inst.validate();
    return inst;
}

namespace {

// Per-tone enumeration shared by the grid oracles: all power vectors on the
// step lattice with their separable costs (1/N) h_sigma(x).
struct ToneGrid {
    int units = 0;                             // 1/step
    std::vector<std::vector<int>> opt_units;   // (units+1)^L unit vectors
    std::vector<Vec> opt_x;
    std::vector<std::vector<double>> cost;     // [tone][option]
};

ToneGrid build_tone_grid(const DsmInstance& inst, double step, std::size_t cap) {
    const long long u = std::llround(1.0 / step);
    if (u < 1 || std::fabs(1.0 / step - double(u)) > 1e-9)
        throw invalid_input("dsm oracle: step must divide 1");
    ToneGrid g;
    g.units = static_cast<int>(u);
    const int L = inst.users;
    std::size_t count = 1;
    for (int l = 0; l < L; ++l) {
        if (static_cast<std::size_t>(g.units + 1) > cap / count)
            throw cap_exceeded("dsm oracle: per-tone grid cap");
        count *= static_cast<std::size_t>(g.units + 1);
    }
    g.opt_units.reserve(count);
    g.opt_x.reserve(count);
    std::vector<int> odo(L, 0);
    for (std::size_t j = 0; j < count; ++j) {
        g.opt_units.push_back(odo);
        Vec x(L);
        for (int l = 0; l < L; ++l) x[l] = double(odo[l]) / double(g.units);
        g.opt_x.push_back(std::move(x));
        for (int l = L; l-- > 0;) {
            if (++odo[l] <= g.units) break;
            odo[l] = 0;
        }
    }
    g.cost.resize(inst.tones);
    for (int i = 0; i < inst.tones; ++i) {
        g.cost[i].resize(count);
        for (std::size_t j = 0; j < count; ++j)
            g.cost[i][j] = rho::eval_h_sigma(g.opt_x[j], inst.noise[i]) / double(inst.tones);
    }
    return g;
}

// |d h_sigma / d x_j| <= L / sigma on the box, so a full coordinate shift of
// delta moves one tone's cost by at most (L/sigma) * L * delta / N.
double primal_step_coeff(const DsmInstance& inst) {
    double c = 0.0;
    for (int i = 0; i < inst.tones; ++i)
        c += double(inst.users) * double(inst.users) / inst.noise[i] / double(inst.tones);
    return c;
}

double dsm_primal_dp(const DsmInstance& inst, const ToneGrid& g, const Vec& budgets,
                     std::size_t state_cap) {
    const int L = inst.users;
    std::vector<int> caps(L);
    std::size_t states = 1;
    for (int l = 0; l < L; ++l) {
        const long long c = static_cast<long long>(std::floor(budgets[l] * g.units + 1e-9));
        caps[l] = static_cast<int>(std::min<long long>(c, 1LL * g.units * inst.tones));
        if (static_cast<std::size_t>(caps[l] + 1) > state_cap / states)
            throw cap_exceeded("dsm oracle: budget state cap");
        states *= static_cast<std::size_t>(caps[l] + 1);
    }
    std::vector<int> stride(L);
    {
        int acc = 1;
        for (int l = L - 1; l >= 0; --l) {
            stride[l] = acc;
            acc *= caps[l] + 1;
        }
    }

    std::vector<double> dp(states, kInf), next(states);
    dp[0] = 0.0;
    std::vector<int> used(L, 0);
    for (int i = 0; i < inst.tones; ++i) {
        std::fill(next.begin(), next.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        for (std::size_t s = 0; s < states; ++s) {
            if (dp[s] < kInf) {
                for (std::size_t j = 0; j < g.opt_units.size(); ++j) {
                    bool fits = true;
                    std::size_t s2 = s;
                    for (int l = 0; l < L; ++l) {
                        const int nu = used[l] + g.opt_units[j][l];
                        if (nu > caps[l]) {
                            fits = false;
                            break;
                        }
                        s2 += static_cast<std::size_t>(g.opt_units[j][l]) * stride[l];
                    }
                    if (!fits) continue;
                    const double v = dp[s] + g.cost[i][j];
                    if (v < next[s2]) next[s2] = v;
                }
            }
            for (int l = L; l-- > 0;) { // odometer tracking the decoded state
                if (++used[l] <= caps[l]) break;
                used[l] = 0;
            }
        }
        dp.swap(next);
    }
    double best = kInf;
    for (double v : dp) best = std::min(best, v);
    return best;
}

} // namespace

GridEstimate dsm_primal_grid(const DsmInstance& inst, const DsmOracleOptions& opts) {
    inst.validate();
    const ToneGrid g = build_tone_grid(inst, opts.step, opts.per_tone_cap);
    GridEstimate out;
    out.value = dsm_primal_dp(inst, g, inst.budget, opts.per_tone_cap);
    out.step_error = opts.step * primal_step_coeff(inst);
    return out;
}

GridEstimate dsm_dual_grid(const DsmInstance& inst, const DsmOracleOptions& opts) {
    inst.validate();
    const ToneGrid g = build_tone_grid(inst, opts.step, opts.per_tone_cap);
    const int L = inst.users;
    const double sigma_min = *std::min_element(inst.noise.raw().begin(), inst.noise.raw().end());
    const double y_max = opts.y_cap_scale * L / (double(inst.tones) * sigma_min);

    // grid inner minima over-estimate q; subtracting the Lipschitz correction
    // (h term + y.x term, both per half-step) certifies the lower estimate
    double corr_coeff = 0.0;
    for (int i = 0; i < inst.tones; ++i)
        corr_coeff += 0.5 * (double(L) * double(L) / inst.noise[i] / double(inst.tones) +
                             double(L) * y_max);
    const double correction = opts.step * corr_coeff;

    auto q_hat = [&](const Vec& y) {
        double q = -dot(y, inst.budget);
        for (int i = 0; i < inst.tones; ++i) {
            double inner = kInf;
            for (std::size_t j = 0; j < g.opt_x.size(); ++j) {
                const double v = g.cost[i][j] + dot(y, g.opt_x[j]);
                if (v < inner) inner = v;
            }
            q += inner;
        }
        return q;
    };

    const int gp = std::max(2, opts.y_grid_per_axis);
    double best = -kInf;
    Vec best_y(L);
    Vec lo(L), hi(L);
    for (int l = 0; l < L; ++l) hi[l] = y_max;
    for (int round = 0; round <= opts.y_refine_rounds; ++round) {
        std::vector<int> odo(L, 0);
        std::size_t cells = 1;
        for (int l = 0; l < L; ++l) cells *= static_cast<std::size_t>(gp);
        double spacing = 0.0;
        for (std::size_t cell = 0; cell < cells; ++cell) {
            Vec y(L);
            for (int l = 0; l < L; ++l) {
                const double h = (hi[l] - lo[l]) / (gp - 1);
                spacing = std::max(spacing, h);
                y[l] = lo[l] + odo[l] * h;
            }
            const double v = q_hat(y);
            if (v > best) {
                best = v;
                best_y = y;
            }
            for (int l = L; l-- > 0;) {
                if (++odo[l] < gp) break;
                odo[l] = 0;
            }
        }
        for (int l = 0; l < L; ++l) { // shrink around the incumbent
            lo[l] = std::max(0.0, best_y[l] - spacing);
            hi[l] = std::min(y_max, best_y[l] + spacing);
        }
    }

    GridEstimate out;
    out.value = best - correction;
    out.step_error = correction;
    return out;
}

double perturbed_primal(const DsmInstance& inst, const Vec& z, const DsmOracleOptions& opts) {
    inst.validate();
    if (z.size() != static_cast<std::size_t>(inst.users))
        throw invalid_input("perturbed_primal: perturbation size");
    Vec budgets = inst.budget + z;
    for (std::size_t l = 0; l < budgets.size(); ++l) {
        if (budgets[l] < -1e-12) return kInf;
        budgets[l] = std::max(budgets[l], 0.0);
    }
    const ToneGrid g = build_tone_grid(inst, opts.step, opts.per_tone_cap);
    return dsm_primal_dp(inst, g, budgets, 1000000);
}

namespace {

GapReport finish_report(GapReport r) {
    r.gap = r.primal - r.dual;
    r.verdict_gap_le_bound = r.gap <= r.alloc.value + r.slack;
    r.verdict_bound_le_udell = r.alloc.value <= r.bound_udell + 1e-12;
    r.verdict_udell_le_classic = r.bound_udell <= r.bound_classic + 1e-12;
    return r;
}

} // namespace

GapReport gap_report(const NumInstance& inst, const NumOracleOptions& oracle,
                     const NumDualOptions& dual) {
    inst.validate();
    const double M = inst.cmax();
    const int m = inst.links;

    GapReport r;
    r.family = "num";
    r.seed = inst.seed;
    r.primal = num_primal_exact(inst, oracle);
    if (inst.kind == UtilityKind::throughput) {
        r.dual = num_dual_convexified(inst);
        r.primal_direction = "exact";
        r.dual_direction = "exact";
    } else {
        r.dual = num_dual_opt(inst, dual).value;
        r.primal_direction = "upper";
        r.dual_direction = "lower";
    }
    r.slack = 1e-6; // oracle slack for the verdict line

    std::vector<double> rho_full(inst.users);
    if (inst.kind == UtilityKind::throughput) {
        // compute on unit capacity, scale once: keeps c -> lambda*c covariance exact
        r.table = rho::table_min_box(inst.paths, m, M);
        bounds::Allocation a = bounds::solve_allocation(rho::table_min_box(inst.paths, m, 1.0), m);
        a.value *= M;
        r.alloc = std::move(a);
        for (int i = 0; i < inst.users; ++i)
            rho_full[i] = double(inst.paths[i] - 1) / double(inst.paths[i]);
        r.bound_udell = M * bounds::bound_udell(rho_full, m);
        r.bound_classic = M * bounds::bound_classic(rho_full, m);
    } else {
        r.table = rho::table_neg_log_max(inst.paths, m);
        r.alloc = bounds::solve_allocation(r.table, m);
        for (int i = 0; i < inst.users; ++i) rho_full[i] = std::log(double(inst.paths[i]));
        r.bound_udell = bounds::bound_udell(rho_full, m);
        r.bound_classic = bounds::bound_classic(rho_full, m);
    }

    const int min_paths = *std::min_element(inst.paths.begin(), inst.paths.end());
    if (min_paths >= m + 1) { // closed forms assume no block clips the k range
        if (inst.kind == UtilityKind::throughput) {
            r.closed_form = bounds::closed_form_num_throughput(inst.users, m, M);
            const double w = std::min(inst.users, m);
            r.closed_form_comparison = w * double(m) / double(m + 1) * M;
        } else {
            r.closed_form = bounds::closed_form_num_log(inst.users, m);
            const double w = std::min(inst.users, m);
            r.closed_form_comparison = w * std::log(double(m + 1));
        }
    }
    return finish_report(std::move(r));
}

GapReport gap_report(const DsmInstance& inst, const DsmOracleOptions& opts) {
    inst.validate();
    const int m = inst.users;
    const GridEstimate pg = dsm_primal_grid(inst, opts);
    const GridEstimate dg = dsm_dual_grid(inst, opts);

    GapReport r;
    r.family = "dsm";
    r.seed = inst.seed;
    r.grid_step = opts.step;
    r.primal = pg.value;
    r.dual = dg.value;
    r.primal_direction = "upper";
    r.dual_direction = "lower";
    r.slack = pg.step_error + dg.step_error;

    std::vector<double> sigmas(inst.noise.raw());
    r.table = rho::table_h_sigma(sigmas, m, 1.0 / double(inst.tones));
    r.alloc = bounds::solve_allocation(r.table, m);

    std::vector<double> rho_full(inst.tones);
    for (int i = 0; i < inst.tones; ++i)
        rho_full[i] = r.table.rows[i][m].value; // row maximum, an upper bound on rho
    r.bound_udell = bounds::bound_udell(rho_full, m);
    r.bound_classic = bounds::bound_classic(rho_full, m);

    const double sigma_min = *std::min_element(sigmas.begin(), sigmas.end());
    const bounds::DsmClosedForm cf = bounds::closed_form_dsm(inst.tones, inst.users, sigma_min);
    r.closed_form = cf.refined;
    r.closed_form_comparison = cf.udell_form;
    return finish_report(std::move(r));
}

} // namespace sfgap::apps
