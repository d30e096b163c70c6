// Regenerates the golden fixtures under tests/fixtures/v1 and prints the
// convergence study that justifies freezing them (dual values under grid
// refinement, primal grid values under step halving). Goldens are only
// committed when the printed levels agree to the stated tolerances.

#include "sfgap/apps.hpp"
#include "sfgap/json_io.hpp"

#include <fstream>
#include <iostream>
#include <string>

using sfgap::io::json;

namespace {

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << path << "\n";
}

struct GoldenSpec {
    std::uint64_t seed;
    int links, users, paths;
    sfgap::apps::UtilityKind kind;
};

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: sfgap_fixtures <output-dir>\n";
        return 1;
    }
    const std::string dir = argv[1];

    // --- NUM goldens: 20 small instances, both utility kinds -------------
    std::vector<GoldenSpec> specs;
    const int sizes[5][2] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 2}};
    for (int i = 0; i < 20; ++i) {
        GoldenSpec s;
        s.seed = static_cast<std::uint64_t>(i + 1);
        s.links = sizes[i % 5][0];
        s.users = sizes[i % 5][1];
        s.paths = 2 + (i / 5) % 2;
        s.kind = i % 2 == 0 ? sfgap::apps::UtilityKind::throughput
                            : sfgap::apps::UtilityKind::log_rate;
        specs.push_back(s);
    }

    json num_goldens = json::array();
    for (const GoldenSpec& s : specs) {
        const auto inst = sfgap::apps::build_num(s.seed, s.links, s.users, s.paths, s.kind);
        const auto rep = sfgap::apps::gap_report(inst);

        // convergence evidence for the heuristic dual of the log family
        if (inst.kind == sfgap::apps::UtilityKind::log_rate) {
            sfgap::apps::NumDualOptions coarse, fine;
            coarse.grid_per_axis = 11;
            fine.grid_per_axis = 21;
            const double dc = sfgap::apps::num_dual_opt(inst, coarse).value;
            const double df = sfgap::apps::num_dual_opt(inst, fine).value;
            std::cout << "num seed " << s.seed << " dual grid 11 -> 21: " << dc << " -> " << df
                      << " (delta " << df - dc << ")\n";
        }

        num_goldens.push_back(json{{"seed", s.seed},
                                   {"links", s.links},
                                   {"users", s.users},
                                   {"paths", s.paths},
                                   {"kind", sfgap::apps::to_string(s.kind)},
                                   {"primal", rep.primal},
                                   {"dual", rep.dual},
                                   {"gap", rep.gap},
                                   {"bound", rep.alloc.value},
                                   {"bound_udell", rep.bound_udell},
                                   {"bound_classic", rep.bound_classic}});
        std::cout << "num seed " << s.seed << " " << sfgap::apps::to_string(s.kind)
                  << ": p=" << rep.primal << " d=" << rep.dual << " gap=" << rep.gap
                  << " B=" << rep.alloc.value << (rep.gap <= rep.alloc.value + 1e-6 ? "" : "  <-- GAP>B")
                  << "\n";
    }
    write_file(dir + "/num_goldens.json", num_goldens);

    // --- the committed seed-7 instance with its report and perturbations --
    {
        const auto inst = sfgap::apps::build_num(7, 2, 2, 3, sfgap::apps::UtilityKind::throughput);
        const auto rep = sfgap::apps::gap_report(inst);
        const double v0 = sfgap::apps::perturbed_primal(inst, sfgap::Vec{0.0, 0.0});
        const double v1 = sfgap::apps::perturbed_primal(inst, sfgap::Vec{0.1, 0.0});
        json j{{"instance", sfgap::io::to_json(inst)},
               {"report", sfgap::io::to_json(rep)},
               {"perturbed_zero", v0},
               {"perturbed_z", sfgap::io::to_json(sfgap::Vec{0.1, 0.0})},
               {"perturbed_value", v1}};
        write_file(dir + "/num_seed7.json", j);
        std::cout << "num seed7: p=" << rep.primal << " v(0)=" << v0 << " v(0.1,0)=" << v1
                  << "\n";
    }

    // --- DSM goldens: uniform 2x2 plus the tone sweep ----------------------
    {
        const auto inst = sfgap::apps::uniform_dsm(2, 2, 1.0, 1.0);
        json steps = json::array();
        for (double step : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
            sfgap::apps::DsmOracleOptions opts;
            opts.step = step;
            const auto pg = sfgap::apps::dsm_primal_grid(inst, opts);
            const auto dg = sfgap::apps::dsm_dual_grid(inst, opts);
            steps.push_back(json{{"step", step},
                                 {"primal", pg.value},
                                 {"dual", dg.value},
                                 {"primal_err", pg.step_error},
                                 {"dual_err", dg.step_error}});
            std::cout << "dsm 2x2 step 1/" << 1.0 / step << ": p=" << pg.value
                      << " d=" << dg.value << " perr=" << pg.step_error
                      << " derr=" << dg.step_error << "\n";
        }
        json sweep = json::array();
        for (int tones : {2, 4, 8}) {
            const auto si = sfgap::apps::uniform_dsm(2, tones, 0.5, 1.0);
            sfgap::apps::DsmOracleOptions opts; // step 1/16
            const auto rep = sfgap::apps::gap_report(si, opts);
            sweep.push_back(json{{"tones", tones},
                                 {"primal", rep.primal},
                                 {"dual", rep.dual},
                                 {"gap", rep.gap},
                                 {"bound", rep.alloc.value},
                                 {"bound_times_tones", rep.alloc.value * tones},
                                 {"slack", rep.slack}});
            std::cout << "dsm sweep N=" << tones << ": gap=" << rep.gap
                      << " B=" << rep.alloc.value << " B*N=" << rep.alloc.value * tones
                      << " slack=" << rep.slack << "\n";
        }
        write_file(dir + "/dsm_goldens.json",
                   json{{"uniform_2x2", steps}, {"sweep_L2", sweep}});
    }
    return 0;
}
