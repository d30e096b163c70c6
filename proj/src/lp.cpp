#include "sfgap/lp.hpp"

#include "sfgap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfgap::lp {

void Problem::add_eq(Vec row, double rhs) {
    if (row.size() != vars()) throw invalid_input("lp: eq row dimension mismatch");
    if (!row.finite() || !std::isfinite(rhs)) throw invalid_input("lp: non-finite eq row");
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(rhs);
}

void Problem::add_ub(Vec row, double rhs) {
    if (row.size() != vars()) throw invalid_input("lp: ub row dimension mismatch");
    if (!row.finite() || !std::isfinite(rhs)) throw invalid_input("lp: non-finite ub row");
    ub_rows.push_back(std::move(row));
    ub_rhs.push_back(rhs);
}

void Problem::validate() const {
    const std::size_t n = vars();
    if (!c.finite()) throw invalid_input("lp: non-finite objective");
    if (lower.size() != n) throw invalid_input("lp: lower bound dimension mismatch");
    if (!lower.finite()) throw invalid_input("lp: non-finite lower bounds");
    if (eq_rows.size() != eq_rhs.size() || ub_rows.size() != ub_rhs.size())
        throw invalid_input("lp: row/rhs count mismatch");
    for (const Vec& r : eq_rows)
        if (r.size() != n || !r.finite()) throw invalid_input("lp: bad eq row");
    for (const Vec& r : ub_rows)
        if (r.size() != n || !r.finite()) throw invalid_input("lp: bad ub row");
    for (double b : eq_rhs)
        if (!std::isfinite(b)) throw invalid_input("lp: bad eq rhs");
    for (double b : ub_rhs)
        if (!std::isfinite(b)) throw invalid_input("lp: bad ub rhs");
}

namespace {

// Full-tableau simplex working on  [A | I_slack | I_art | rhs]  after the
// lower-bound shift x = lower + u, u >= 0. Row signs are normalized so the
// rhs is nonnegative; flipped inequality rows get slack coefficient -1 and
// take an artificial instead of the slack as the initial basic column.
class Tableau {
public:
    Tableau(const Problem& p, const Options& opt) : opt_(opt), nvars_(p.vars()) {
        nrows_ = p.eq_rows.size() + p.ub_rows.size();
        nslack_ = p.ub_rows.size();

        // shifted rhs
        std::vector<double> rhs(nrows_);
        std::vector<const Vec*> rows(nrows_);
        for (std::size_t i = 0; i < p.eq_rows.size(); ++i) {
            rows[i] = &p.eq_rows[i];
            rhs[i] = p.eq_rhs[i] - dot(p.eq_rows[i], p.lower);
        }
        for (std::size_t i = 0; i < p.ub_rows.size(); ++i) {
            rows[p.eq_rows.size() + i] = &p.ub_rows[i];
            rhs[p.eq_rows.size() + i] = p.ub_rhs[i] - dot(p.ub_rows[i], p.lower);
        }

        art_of_row_.assign(nrows_, -1);
        std::size_t nart = 0;
        std::vector<bool> flipped(nrows_, false);
        for (std::size_t r = 0; r < nrows_; ++r) {
            bool is_ub = r >= p.eq_rows.size();
            if (rhs[r] < 0) flipped[r] = true;
            if (!is_ub || flipped[r]) art_of_row_[r] = static_cast<int>(nart++);
        }

        ncols_ = nvars_ + nslack_ + nart;
        t_ = Mat(nrows_, ncols_ + 1);
        basis_.assign(nrows_, -1);
        for (std::size_t r = 0; r < nrows_; ++r) {
            const double sgn = flipped[r] ? -1.0 : 1.0;
            double* tr = t_.row(r);
            for (std::size_t j = 0; j < nvars_; ++j) tr[j] = sgn * (*rows[r])[j];
            if (r >= p.eq_rows.size()) tr[nvars_ + (r - p.eq_rows.size())] = sgn;
            if (art_of_row_[r] >= 0) tr[nvars_ + nslack_ + art_of_row_[r]] = 1.0;
            tr[ncols_] = sgn * rhs[r];
            basis_[r] = art_of_row_[r] >= 0
                            ? static_cast<int>(nvars_ + nslack_ + art_of_row_[r])
                            : static_cast<int>(nvars_ + (r - p.eq_rows.size()));
        }
        row_alive_.assign(nrows_, true);
        pivots_ = 0;
        bland_after_ = opt.bland_after_factor * static_cast<long>(nrows_ + ncols_);
        hard_cap_ = 20 * bland_after_ + 2000;
    }

    std::size_t artificial_begin() const { return nvars_ + nslack_; }
    bool has_artificials() const { return artificial_begin() < ncols_; }

    // phase 1: minimize the sum of artificials; returns the attained value
    double run_phase1() {
        cost_.assign(ncols_ + 1, 0.0);
        for (std::size_t j = artificial_begin(); j < ncols_; ++j) cost_[j] = 1.0;
        price_out_basis();
        iterate(artificial_begin()); // artificials may leave but never re-enter
        return -cost_[ncols_];
    }

    // after phase 1: pivot zero-level artificials out, drop redundant rows
    void purge_artificials() {
        for (std::size_t r = 0; r < nrows_; ++r) {
            if (!row_alive_[r]) continue;
            if (basis_[r] < static_cast<int>(artificial_begin())) continue;
            const double* tr = t_.row(r);
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < artificial_begin(); ++j)
                if (std::fabs(tr[j]) > opt_.tol_pivot) {
                    enter = j;
                    break;
                }
            if (enter == ncols_) {
                row_alive_[r] = false; // redundant constraint
            } else {
                pivot(r, enter);
            }
        }
    }

    void run_phase2(const Vec& c) {
        cost_.assign(ncols_ + 1, 0.0);
        for (std::size_t j = 0; j < nvars_; ++j) cost_[j] = c[j];
        price_out_basis();
        iterate(artificial_begin());
    }

    bool unbounded() const { return unbounded_; }

    Vec extract(const Vec& lower) const {
        Vec u(nvars_);
        for (std::size_t r = 0; r < nrows_; ++r)
            if (row_alive_[r] && basis_[r] >= 0 && basis_[r] < static_cast<int>(nvars_))
                u[basis_[r]] = t_(r, ncols_);
        Vec x(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) x[j] = lower[j] + u[j];
        return x;
    }

    std::vector<int> basis_labels() const {
        std::vector<int> out;
        for (std::size_t r = 0; r < nrows_; ++r)
            if (row_alive_[r] && basis_[r] < static_cast<int>(artificial_begin()))
                out.push_back(basis_[r]);
        return out;
    }

private:
    void price_out_basis() {
        for (std::size_t r = 0; r < nrows_; ++r) {
            if (!row_alive_[r]) continue;
            const double cb = cost_[basis_[r]];
            if (cb != 0.0) kernels::axpy(-cb, t_.row(r), cost_.data(), ncols_ + 1);
        }
    }

    // price, ratio-test, pivot until optimal/unbounded. Columns >= col_limit
    // (the artificials in phase 2, nothing in phase 1... they carry cost 1 and
    // never price negative at a feasible basis) are excluded from entering.
    void iterate(std::size_t entering_limit) {
        unbounded_ = false;
        while (true) {
            const bool bland = pivots_ > bland_after_;
            if (pivots_ > hard_cap_)
                throw numeric_breakdown("lp: iteration guard tripped");

            std::size_t enter = ncols_;
            if (bland) {
                for (std::size_t j = 0; j < entering_limit; ++j)
                    if (cost_[j] < -opt_.tol) {
                        enter = j;
                        break;
                    }
            } else {
                double best = -opt_.tol;
                for (std::size_t j = 0; j < entering_limit; ++j)
                    if (cost_[j] < best) {
                        best = cost_[j];
                        enter = j;
                    }
            }
            if (enter == ncols_) return; // optimal

            std::size_t leave = nrows_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < nrows_; ++r) {
                if (!row_alive_[r]) continue;
                const double a = t_(r, enter);
                if (a <= opt_.tol_pivot) continue;
                const double ratio = t_(r, ncols_) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 &&
                     (leave == nrows_ || basis_[r] < basis_[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
            if (leave == nrows_) {
                unbounded_ = true;
                return;
            }
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        double* pr = t_.row(prow);
        const double pv = pr[pcol];
        if (std::fabs(pv) < opt_.tol_pivot)
            throw numeric_breakdown("lp: pivot below tolerance");
        kernels::scale(pr, 1.0 / pv, ncols_ + 1);
        pr[pcol] = 1.0;
        for (std::size_t r = 0; r < nrows_; ++r) {
            if (r == prow || !row_alive_[r]) continue;
            const double f = t_(r, pcol);
            if (f != 0.0) {
                kernels::axpy(-f, pr, t_.row(r), ncols_ + 1);
                t_(r, pcol) = 0.0;
            }
        }
        const double cf = cost_[pcol];
        if (cf != 0.0) {
            kernels::axpy(-cf, pr, cost_.data(), ncols_ + 1);
            cost_[pcol] = 0.0;
        }
        basis_[prow] = static_cast<int>(pcol);
        ++pivots_;
    }

    Options opt_;
    std::size_t nvars_ = 0, nslack_ = 0, nrows_ = 0, ncols_ = 0;
    Mat t_;
    std::vector<double> cost_;
    std::vector<int> basis_;
    std::vector<int> art_of_row_;
    std::vector<bool> row_alive_;
    long pivots_ = 0, bland_after_ = 0, hard_cap_ = 0;
    bool unbounded_ = false;
};

double residual_inf(const Problem& p, const Vec& x) {
    double r = 0.0;
    for (std::size_t i = 0; i < p.eq_rows.size(); ++i)
        r = std::max(r, std::fabs(dot(p.eq_rows[i], x) - p.eq_rhs[i]));
    for (std::size_t i = 0; i < p.ub_rows.size(); ++i)
        r = std::max(r, std::max(0.0, dot(p.ub_rows[i], x) - p.ub_rhs[i]));
    for (std::size_t j = 0; j < x.size(); ++j)
        r = std::max(r, std::max(0.0, p.lower[j] - x[j]));
    return r;
}

double data_scale(const Problem& p) {
    double s = 1.0;
    for (double b : p.eq_rhs) s = std::max(s, std::fabs(b));
    for (double b : p.ub_rhs) s = std::max(s, std::fabs(b));
    return s;
}

} // namespace

Solution solve(const Problem& p, const Options& opt) {
    p.validate();
    Solution sol;

    Tableau t(p, opt);
    if (t.has_artificials()) {
        const double infeas = t.run_phase1();
        if (t.unbounded()) throw numeric_breakdown("lp: phase 1 reported unbounded");
        if (infeas > opt.tol * data_scale(p)) {
            sol.status = Status::Infeasible;
            return sol;
        }
        t.purge_artificials();
    }
    t.run_phase2(p.c);
    if (t.unbounded()) {
        sol.status = Status::Unbounded;
        return sol;
    }

    sol.x = t.extract(p.lower);
    sol.basis = t.basis_labels();
    sol.objective = dot(p.c, sol.x);
    if (residual_inf(p, sol.x) > opt.tol * data_scale(p))
        throw numeric_breakdown("lp: solution failed the residual check");
    sol.status = Status::Optimal;
    return sol;
}

} // namespace sfgap::lp
