#include "sfgap/gapbounds.hpp"

#include <algorithm>
#include <cmath>

namespace sfgap::bounds {

Allocation solve_allocation(const rho::Table& table, int m) {
    table.validate();
    if (m < 0) throw invalid_input("solve_allocation: negative m");
    if (table.m() != m) throw invalid_input("solve_allocation: table has wrong column count");
    const int n = static_cast<int>(table.blocks());

    // suffix[i][b]: best value over blocks i..n-1 with at most b extra units;
    // choice[i][b]: the smallest extra-unit count at block i achieving it,
    // which makes the recovered allocation lexicographically smallest.
    std::vector<std::vector<double>> suffix(n + 1, std::vector<double>(m + 1, 0.0));
    std::vector<std::vector<int>> choice(n, std::vector<int>(m + 1, 0));
    for (int i = n - 1; i >= 0; --i) {
        for (int b = 0; b <= m; ++b) {
            double best = -1.0;
            int pick = 0;
            for (int e = 0; e <= b; ++e) {
                const double v = table.rows[i][e].value + suffix[i + 1][b - e];
                if (v > best) {
                    best = v;
                    pick = e;
                }
            }
            suffix[i][b] = best;
            choice[i][b] = pick;
        }
    }

    Allocation out;
    out.value = suffix[0][m];
    out.k.resize(n);
    int budget = m;
    for (int i = 0; i < n; ++i) {
        const int e = choice[i][budget];
        out.k[i] = e + 1;
        budget -= e;
        if (table.rows[i][e].flag == rho::Flag::upper_bound) out.flag = rho::Flag::upper_bound;
    }
    return out;
}

double bound_classic(const std::vector<double>& rhos, int m) {
    if (rhos.empty()) throw invalid_input("bound_classic: empty rho list");
    const double mx = *std::max_element(rhos.begin(), rhos.end());
    return double(std::min<std::size_t>(m + 1, rhos.size())) * mx;
}

double bound_udell(std::vector<double> rhos, int m) {
    if (rhos.empty()) throw invalid_input("bound_udell: empty rho list");
    std::sort(rhos.begin(), rhos.end(), std::greater<>());
    const std::size_t take = std::min<std::size_t>(m, rhos.size());
    double s = 0.0;
    for (std::size_t i = 0; i < take; ++i) s += rhos[i];
    return s;
}

namespace {
void check_sizes(int users, int links) {
    if (users < 1 || links < 1) throw invalid_input("closed form: sizes must be >= 1");
}
} // namespace

double closed_form_num_throughput(int users, int links, double c_max) {
    check_sizes(users, links);
    if (!(c_max > 0)) throw invalid_input("closed_form_num_throughput: c_max must be > 0");
    const double w = std::min(users, links);
    return w * double(links) / (double(links) + w) * c_max;
}

double closed_form_num_log(int users, int links) {
    check_sizes(users, links);
    const double w = std::min(users, links);
    return w * std::log(1.0 + double(links) / w);
}

DsmClosedForm closed_form_dsm(int tones, int users, double sigma_min) {
    check_sizes(tones, users);
    if (!(sigma_min > 0.0 && sigma_min <= 1.0))
        throw invalid_input("closed_form_dsm: sigma_min out of (0,1]");
    const double w = std::min(tones, users);
    DsmClosedForm out;
    out.refined = w / double(tones) * std::log((1.0 + double(users) / w) / sigma_min);
    out.udell_form = w / double(tones) * std::log(double(users + 1) / sigma_min);
    return out;
}

} // namespace sfgap::bounds
