#include "sfgap/apps.hpp"
#include "sfgap/config.hpp"
#include "sfgap/gapbounds.hpp"
#include "sfgap/hulls.hpp"
#include "sfgap/json_io.hpp"
#include "sfgap/nonconvexity.hpp"
#include "sfgap/sfdecomp.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

using sfgap::io::json;

// exit-code contract: 0 ok, 1 input, 2 infeasible, 3 resource, 4 verdict failure
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitResource = 3;
constexpr int kExitVerdict = 4;

struct GlobalFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_lp;
    std::optional<double> grid_step;
    std::optional<std::string> out;
};

sfgap::RunConfig effective_config(const GlobalFlags& g) {
    sfgap::RunConfig cfg;
    if (!g.config_path.empty()) cfg = sfgap::io::config_from_json(sfgap::io::load_file(g.config_path));
    if (g.seed) cfg.seed = *g.seed;
    if (g.tol_lp) cfg.tol_lp = *g.tol_lp;
    if (g.grid_step) cfg.grid_step = *g.grid_step;
    if (g.out) cfg.out = sfgap::output_format_from_string(*g.out);
    cfg.validate();
    return cfg;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int run_decompose(const sfgap::RunConfig& cfg, const std::string& input, bool refined,
                  bool epigraph) {
    if (refined && epigraph)
        throw sfgap::invalid_input("decompose: choose at most one of --refined / --epigraph");
    const sfgap::io::DecomposeRequest req =
        sfgap::io::decompose_request_from_json(sfgap::io::load_file(input));

    sfgap::sf::DecompOptions opts;
    opts.tol_lp = cfg.tol_lp;
    opts.minkowski_cap = cfg.minkowski_cap;

    json out;
    sfgap::sf::Decomposition dec;
    if (epigraph) {
        dec = sfgap::sf::decompose_epigraph(req.sets, req.target, opts);
        out["mode"] = "epigraph";
    } else if (refined) {
        sfgap::hulls::HullOptions hopts;
        hopts.tol_lp = cfg.tol_lp;
        hopts.tol_face = cfg.tol_face;
        hopts.tol_rank = cfg.tol_rank;
        hopts.minkowski_cap = cfg.minkowski_cap;
        hopts.subset_cap = cfg.subset_cap;
        const sfgap::hulls::FaceDescription face =
            sfgap::hulls::minimal_face(req.sets, req.target, hopts);
        dec = sfgap::sf::decompose_refined(req.sets, req.target, face, opts);
        out["mode"] = "refined";
        out["face"] = json{{"dim", face.dim},
                           {"vertices_on_face", face.vertex_ids},
                           {"exposing", sfgap::io::to_json(face.exposing)}};
    } else {
        dec = sfgap::sf::decompose_plain(req.sets, req.target, opts);
        out["mode"] = "plain";
    }
    out["decomposition"] = sfgap::io::to_json(dec);
    out["target"] = sfgap::io::to_json(req.target);
    out["config"] = sfgap::io::to_json(cfg);

    if (cfg.out == sfgap::OutputFormat::pretty) {
        std::cout << "mode: " << out["mode"].get<std::string>() << "\n";
        const auto k = dec.cardinalities();
        for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
            std::cout << req.sets[i].label << ": k=" << k[i] << " support=[";
            for (std::size_t j = 0; j < dec.blocks[i].support.size(); ++j)
                std::cout << (j ? " " : "") << dec.blocks[i].support[j];
            std::cout << "] weights=[";
            for (std::size_t j = 0; j < dec.blocks[i].weights.size(); ++j)
                std::cout << (j ? " " : "") << fmt(dec.blocks[i].weights[j]);
            std::cout << "]\n";
        }
        std::cout << "total_support=" << dec.total_support << " budget<="
                  << dec.face_dim + static_cast<int>(dec.blocks.size())
                  << " residual=" << fmt(dec.residual) << "\n";
    } else if (cfg.out == sfgap::OutputFormat::csv) {
        throw sfgap::invalid_input("decompose: csv output is only for sweep tables");
    } else {
        emit_json(out);
    }
    return kExitOk;
}

int run_rho(const sfgap::RunConfig& cfg, const std::string& family, int n, int k_max,
            double sigma, const std::string& input, const std::string& label) {
    if (k_max < 1) throw sfgap::invalid_input("rho: --k-max must be >= 1");
    json out;
    std::vector<double> values;
    std::vector<std::string> flags;

    if (family == "sampled") {
        if (input.empty()) throw sfgap::invalid_input("rho: --input required for sampled");
        sfgap::rho::SampledFunction f =
            sfgap::io::sampled_function_from_json(sfgap::io::load_file(input));
        sfgap::rho::GridOptions gopts;
        gopts.weight_steps = cfg.weight_steps;
        gopts.subset_cap = cfg.subset_cap;
        for (int k = 1; k <= k_max; ++k) values.push_back(sfgap::rho::rho_k_grid(f, k, gopts));
        out = json{{"family", "sampled"},
                   {"label", label.empty() ? input : label},
                   {"k_max", k_max},
                   {"values", values},
                   {"estimate", "lower_bound"},
                   {"weight_steps", cfg.weight_steps}};
    } else {
        for (int k = 1; k <= k_max; ++k) {
            sfgap::rho::Value v;
            if (family == "min_box")
                v = sfgap::rho::min_box(n, k);
            else if (family == "neglogmax")
                v = sfgap::rho::neg_log_max(n, k);
            else if (family == "h_sigma")
                v = sfgap::rho::h_sigma_bound(k, sigma);
            else
                throw sfgap::invalid_input("rho: unknown family '" + family + "'");
            values.push_back(v.value);
            flags.push_back(v.flag == sfgap::rho::Flag::exact ? "exact" : "upper_bound");
        }
        sfgap::rho::Table t;
        t.labels = {label.empty() ? family : label};
        t.rows.resize(1);
        for (int k = 1; k <= k_max; ++k)
            t.rows[0].push_back({values[k - 1], flags[k - 1] == "exact"
                                                    ? sfgap::rho::Flag::exact
                                                    : sfgap::rho::Flag::upper_bound});
        t.validate();
        out = sfgap::io::to_json(t);
        out["family"] = family;
        if (family != "h_sigma") out["n"] = n;
        if (family == "h_sigma") out["sigma"] = sigma;
    }
    out["config"] = sfgap::io::to_json(cfg);

    if (cfg.out == sfgap::OutputFormat::csv) {
        std::cout << "# config " << sfgap::io::to_json(cfg).dump() << "\n";
        std::cout << "k,value" << (flags.empty() ? "" : ",flag") << "\n";
        for (int k = 1; k <= k_max; ++k) {
            std::cout << k << "," << fmt(values[k - 1]);
            if (!flags.empty()) std::cout << "," << flags[k - 1];
            std::cout << "\n";
        }
    } else if (cfg.out == sfgap::OutputFormat::pretty) {
        for (int k = 1; k <= k_max; ++k)
            std::cout << "rho^" << k << " = " << fmt(values[k - 1])
                      << (flags.empty() ? " (lower bound)"
                                        : (flags[k - 1] == "exact" ? "" : " (upper bound)"))
                      << "\n";
    } else {
        emit_json(out);
    }
    return kExitOk;
}

int run_bound(const sfgap::RunConfig& cfg, const std::string& table_path, int m_flag) {
    sfgap::rho::Table t = sfgap::io::rho_table_from_json(sfgap::io::load_file(table_path));
    const int m = m_flag >= 0 ? m_flag : t.m();
    sfgap::io::BoundReport rep;
    rep.m = m;
    rep.alloc = sfgap::bounds::solve_allocation(t, m);
    std::vector<double> row_max;
    for (const auto& row : t.rows) row_max.push_back(row.back().value);
    rep.bound_udell = sfgap::bounds::bound_udell(row_max, m);
    rep.bound_classic = sfgap::bounds::bound_classic(row_max, m);

    json out = sfgap::io::to_json(rep);
    out["config"] = sfgap::io::to_json(cfg);
    if (cfg.out == sfgap::OutputFormat::pretty) {
        std::cout << "B = " << fmt(rep.alloc.value) << " (k* =";
        for (int k : rep.alloc.k) std::cout << " " << k;
        std::cout << ")\nudell = " << fmt(rep.bound_udell)
                  << "\nclassic = " << fmt(rep.bound_classic) << "\n";
    } else if (cfg.out == sfgap::OutputFormat::csv) {
        throw sfgap::invalid_input("bound: csv output is only for sweep tables");
    } else {
        emit_json(out);
    }
    return kExitOk;
}

void print_report_pretty(const sfgap::apps::GapReport& r) {
    std::cout << "family: " << r.family << "\n";
    std::cout << "primal = " << fmt(r.primal) << " (" << r.primal_direction << ")\n";
    std::cout << "dual   = " << fmt(r.dual) << " (" << r.dual_direction << ")\n";
    std::cout << "gap    = " << fmt(r.gap) << " (slack " << fmt(r.slack) << ")\n";
    std::cout << "B      = " << fmt(r.alloc.value) << " (k* =";
    for (int k : r.alloc.k) std::cout << " " << k;
    std::cout << ")\nudell  = " << fmt(r.bound_udell)
              << "\nclassic= " << fmt(r.bound_classic) << "\n";
    if (r.closed_form) std::cout << "closed_form = " << fmt(*r.closed_form) << "\n";
    std::cout << "verdict gap<=B<=udell<=classic: " << (r.verdicts_ok() ? "ok" : "FAILED")
              << "\n";
}

int run_demo(const sfgap::RunConfig& cfg, const std::string& family, int links, int users,
             int paths, const std::string& kind, double sigma, double budget,
             const std::string& sweep) {
    if (family == "num") {
        const sfgap::apps::NumInstance inst = sfgap::apps::build_num(
            cfg.seed, links, users, paths, sfgap::apps::utility_kind_from_string(kind));
        const sfgap::apps::GapReport rep = sfgap::apps::gap_report(inst);
        if (cfg.out == sfgap::OutputFormat::pretty) {
            print_report_pretty(rep);
        } else if (cfg.out == sfgap::OutputFormat::csv) {
            throw sfgap::invalid_input("demo num: csv output is only for dsm sweeps");
        } else {
            json out = sfgap::io::to_json(rep);
            out["instance"] = sfgap::io::to_json(inst);
            out["config"] = sfgap::io::to_json(cfg);
            emit_json(out);
        }
        return rep.verdicts_ok() ? kExitOk : kExitVerdict;
    }
    if (family != "dsm") throw sfgap::invalid_input("demo: family must be num or dsm");

    // dsm reuses the size flags as -L users, -N tones
    sfgap::apps::DsmOracleOptions opts;
    opts.step = cfg.grid_step;
    auto make_inst = [&](int tones) {
        return sigma > 0 ? sfgap::apps::uniform_dsm(links, tones, sigma, budget)
                         : sfgap::apps::build_dsm(cfg.seed, links, tones);
    };

    if (!sweep.empty()) {
        std::vector<int> tones_list;
        std::size_t pos = 0;
        while (pos < sweep.size()) {
            std::size_t next = sweep.find(',', pos);
            if (next == std::string::npos) next = sweep.size();
            tones_list.push_back(std::stoi(sweep.substr(pos, next - pos)));
            pos = next + 1;
        }
        bool ok = true;
        json rows = json::array();
        std::string csv = "tones,primal,dual,gap,bound,bound_times_tones,udell,classic,slack\n";
        for (int tones : tones_list) {
            const sfgap::apps::GapReport rep = sfgap::apps::gap_report(make_inst(tones), opts);
            ok = ok && rep.verdicts_ok();
            rows.push_back(sfgap::io::to_json(rep));
            csv += std::to_string(tones) + "," + fmt(rep.primal) + "," + fmt(rep.dual) + "," +
                   fmt(rep.gap) + "," + fmt(rep.alloc.value) + "," +
                   fmt(rep.alloc.value * tones) + "," + fmt(rep.bound_udell) + "," +
                   fmt(rep.bound_classic) + "," + fmt(rep.slack) + "\n";
        }
        if (cfg.out == sfgap::OutputFormat::csv) {
            std::cout << "# config " << sfgap::io::to_json(cfg).dump() << "\n" << csv;
        } else if (cfg.out == sfgap::OutputFormat::pretty) {
            std::cout << csv;
        } else {
            emit_json(json{{"sweep", rows}, {"config", sfgap::io::to_json(cfg)}});
        }
        return ok ? kExitOk : kExitVerdict;
    }

    const sfgap::apps::GapReport rep = sfgap::apps::gap_report(make_inst(users), opts);
    if (cfg.out == sfgap::OutputFormat::pretty) {
        print_report_pretty(rep);
    } else if (cfg.out == sfgap::OutputFormat::csv) {
        throw sfgap::invalid_input("demo dsm: csv output is only for --sweep");
    } else {
        json out = sfgap::io::to_json(rep);
        out["config"] = sfgap::io::to_json(cfg);
        emit_json(out);
    }
    return rep.verdicts_ok() ? kExitOk : kExitVerdict;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refined Shapley-Folkman decompositions and duality-gap bounds"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--config", g.config_path, "JSON config file");
    std::uint64_t seed_val = 0;
    double tol_lp_val = 0, grid_step_val = 0;
    std::string out_val;
    auto* seed_opt = app.add_option("--seed", seed_val, "RNG seed");
    auto* tol_opt = app.add_option("--tol-lp", tol_lp_val, "LP tolerance");
    auto* step_opt = app.add_option("--grid-step", grid_step_val, "grid step for oracles");
    auto* out_opt =
        app.add_option("--out", out_val, "output format: json, csv or pretty");

    auto* dec = app.add_subcommand("decompose", "decompose a hull point across summand sets");
    std::string dec_input;
    bool dec_refined = false, dec_epigraph = false;
    dec->add_option("input", dec_input, "input JSON with sets and target")->required();
    dec->add_flag("--refined", dec_refined, "use the minimal-face certificate");
    dec->add_flag("--epigraph", dec_epigraph, "pin a prefix, minimize the last coordinate");

    auto* rho_cmd = app.add_subcommand("rho", "nonconvexity values per k");
    std::string rho_family, rho_input, rho_label;
    int rho_n = 1, rho_kmax = 1;
    double rho_sigma = 1.0;
    rho_cmd->add_option("--family", rho_family, "min_box, neglogmax, h_sigma or sampled")
        ->required();
    rho_cmd->add_option("--n", rho_n, "number of variables of the family");
    rho_cmd->add_option("--k-max", rho_kmax, "largest k")->required();
    rho_cmd->add_option("--sigma", rho_sigma, "noise parameter for h_sigma");
    rho_cmd->add_option("--input", rho_input, "sampled-function JSON");
    rho_cmd->add_option("--label", rho_label, "row label");

    auto* bound_cmd = app.add_subcommand("bound", "allocation bound from a rho table");
    std::string bound_table;
    int bound_m = -1;
    bound_cmd->add_option("table", bound_table, "rho table JSON")->required();
    bound_cmd->add_option("--m", bound_m, "constraint count (defaults to table columns - 1)");

    auto* demo_cmd = app.add_subcommand("demo", "end-to-end gap report");
    std::string demo_family, demo_kind = "throughput", demo_sweep;
    int demo_links = 2, demo_users = 2, demo_paths = 3;
    double demo_sigma = 0, demo_budget = 1.0;
    demo_cmd->add_option("family", demo_family, "num or dsm")->required();
    demo_cmd->add_option("-L,--links", demo_links, "links (num) / users (dsm)");
    demo_cmd->add_option("-N,--users", demo_users, "users (num) / tones (dsm)");
    demo_cmd->add_option("-K,--paths", demo_paths, "paths per user (num)");
    demo_cmd->add_option("--kind", demo_kind, "throughput or log (num)");
    demo_cmd->add_option("--sigma", demo_sigma, "uniform noise (dsm); 0 draws from the seed");
    demo_cmd->add_option("--budget", demo_budget, "uniform power budget (dsm)");
    demo_cmd->add_option("--sweep", demo_sweep, "comma list of tone counts (dsm)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*seed_opt) g.seed = seed_val;
        if (*tol_opt) g.tol_lp = tol_lp_val;
        if (*step_opt) g.grid_step = grid_step_val;
        if (*out_opt) g.out = out_val;
        const sfgap::RunConfig cfg = effective_config(g);

        if (*dec) return run_decompose(cfg, dec_input, dec_refined, dec_epigraph);
        if (*rho_cmd)
            return run_rho(cfg, rho_family, rho_n, rho_kmax, rho_sigma, rho_input, rho_label);
        if (*bound_cmd) return run_bound(cfg, bound_table, bound_m);
        if (*demo_cmd)
            return run_demo(cfg, demo_family, demo_links, demo_users, demo_paths, demo_kind,
                            demo_sigma, demo_budget, demo_sweep);
        std::cerr << "error: no subcommand\n";
        return kExitInput;
    } catch (const sfgap::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const sfgap::cap_exceeded& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return kExitResource;
    } catch (const sfgap::numeric_breakdown& e) {
        std::cerr << "numeric: " << e.what() << "\n";
        return kExitResource;
    } catch (const sfgap::invalid_input& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kExitInput;
    }
}
