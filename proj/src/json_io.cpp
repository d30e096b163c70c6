#include "sfgap/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sfgap::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw invalid_input("json: " + what); }

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) bad(where + " must be a number");
    return j.get<double>();
}

// +inf is spelled as the string "inf" in value arrays
double value_or_inf(const json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        bad(where + ": only \"inf\" is accepted as a string value");
    }
    return number_at(j, where);
}

json value_to_json(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

} // namespace

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("parse error: ") + e.what());
    }
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

json to_json(const RunConfig& c) {
    return json{{"tol_lp", c.tol_lp},
                {"tol_pivot", c.tol_pivot},
                {"tol_rank", c.tol_rank},
                {"tol_face", c.tol_face},
                {"minkowski_cap", c.minkowski_cap},
                {"subset_cap", c.subset_cap},
                {"weight_steps", c.weight_steps},
                {"grid_step", c.grid_step},
                {"seed", c.seed},
                {"out", to_string(c.out)}};
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) bad("config must be an object");
    RunConfig c;
    auto num = [&](const char* key, double& slot) {
        if (j.contains(key)) slot = number_at(j.at(key), key);
    };
    num("tol_lp", c.tol_lp);
    num("tol_pivot", c.tol_pivot);
    num("tol_rank", c.tol_rank);
    num("tol_face", c.tol_face);
    num("grid_step", c.grid_step);
    if (j.contains("minkowski_cap")) c.minkowski_cap = j.at("minkowski_cap").get<std::size_t>();
    if (j.contains("subset_cap")) c.subset_cap = j.at("subset_cap").get<std::size_t>();
    if (j.contains("weight_steps")) c.weight_steps = j.at("weight_steps").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.out = output_format_from_string(j.at("out").get<std::string>());
    c.validate();
    return c;
}

json to_json(const Vec& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) bad("vector must be an array");
    std::vector<double> xs;
    xs.reserve(j.size());
    for (const auto& e : j) xs.push_back(number_at(e, "vector entry"));
    return Vec::from(std::move(xs));
}

json to_json(const hulls::PointSet& s) {
    json pts = json::array();
    for (const Vec& p : s.points) pts.push_back(to_json(p));
    return json{{"label", s.label}, {"points", pts}};
}

hulls::PointSet point_set_from_json(const json& j) {
    std::string label;
    const json* pts = &j;
    if (j.is_object()) {
        if (j.contains("label")) label = j.at("label").get<std::string>();
        if (!j.contains("points")) bad("point set object needs a 'points' array");
        pts = &j.at("points");
    }
    if (!pts->is_array() || pts->empty()) bad("point set must be a nonempty array");
    std::vector<Vec> points;
    for (const auto& e : *pts) points.push_back(vec_from_json(e));
    return hulls::PointSet::of(std::move(label), std::move(points));
}

DecomposeRequest decompose_request_from_json(const json& j) {
    if (!j.is_object() || !j.contains("sets") || !j.contains("target"))
        bad("decompose input needs 'sets' and 'target'");
    if (!j.at("sets").is_array() || j.at("sets").empty()) bad("'sets' must be a nonempty array");
    DecomposeRequest req;
    std::size_t i = 0;
    for (const auto& e : j.at("sets")) {
        hulls::PointSet s = point_set_from_json(e);
        if (s.label.empty()) s.label = "S" + std::to_string(i + 1);
        req.sets.push_back(std::move(s));
        ++i;
    }
    req.target = vec_from_json(j.at("target"));
    return req;
}

json to_json(const sf::Decomposition& d) {
    json blocks = json::array();
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        blocks.push_back(json{{"support", d.blocks[i].support},
                              {"weights", d.blocks[i].weights},
                              {"cardinality", d.blocks[i].cardinality()},
                              {"part", to_json(d.parts[i])}});
    }
    return json{{"blocks", blocks},
                {"total_support", d.total_support},
                {"face_dim", d.face_dim},
                {"support_budget", d.face_dim + static_cast<int>(d.blocks.size())},
                {"blocks_with_support_ge2", d.blocks_with_support_ge2()},
                {"residual", d.residual}};
}

namespace {
const char* flag_name(rho::Flag f) {
    return f == rho::Flag::exact ? "exact" : "upper_bound";
}
rho::Flag flag_from(const std::string& s) {
    if (s == "exact") return rho::Flag::exact;
    if (s == "upper_bound") return rho::Flag::upper_bound;
    bad("unknown flag '" + s + "'");
}
} // namespace

json to_json(const rho::Table& t) {
    json rows = json::array(), flags = json::array();
    for (const auto& row : t.rows) {
        json vr = json::array(), fr = json::array();
        for (const rho::Value& v : row) {
            vr.push_back(v.value);
            fr.push_back(flag_name(v.flag));
        }
        rows.push_back(vr);
        flags.push_back(fr);
    }
    return json{{"labels", t.labels}, {"m", t.m()}, {"values", rows}, {"flags", flags}};
}

rho::Table rho_table_from_json(const json& j) {
    if (!j.is_object() || !j.contains("values")) bad("rho table needs 'values'");
    rho::Table t;
    if (j.contains("labels")) t.labels = j.at("labels").get<std::vector<std::string>>();
    const json& rows = j.at("values");
    if (!rows.is_array() || rows.empty()) bad("'values' must be a nonempty array");
    const json* flags = j.contains("flags") ? &j.at("flags") : nullptr;
    if (flags && (!flags->is_array() || flags->size() != rows.size()))
        bad("'flags' must match 'values' in shape");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.empty()) bad("rho table rows must be nonempty arrays");
        std::vector<rho::Value> out;
        for (std::size_t k = 0; k < row.size(); ++k) {
            rho::Value v;
            v.value = number_at(row[k], "rho value");
            v.flag = flags ? flag_from((*flags)[i][k].get<std::string>()) : rho::Flag::exact;
            out.push_back(v);
        }
        t.rows.push_back(std::move(out));
    }
    t.validate();
    return t;
}

json to_json(const rho::SampledFunction& f) {
    json pts = json::array(), vals = json::array();
    for (const Vec& p : f.points) pts.push_back(to_json(p));
    for (double v : f.values) vals.push_back(value_to_json(v));
    return json{{"dim", f.dim()},
                {"box_lo", to_json(f.box_lo)},
                {"box_hi", to_json(f.box_hi)},
                {"points", pts},
                {"values", vals}};
}

rho::SampledFunction sampled_function_from_json(const json& j) {
    if (!j.is_object()) bad("sampled function must be an object");
    for (const char* key : {"dim", "box_lo", "box_hi", "points", "values"})
        if (!j.contains(key)) bad(std::string("sampled function needs '") + key + "'");
    rho::SampledFunction f;
    f.box_lo = vec_from_json(j.at("box_lo"));
    f.box_hi = vec_from_json(j.at("box_hi"));
    if (j.at("dim").get<std::size_t>() != f.box_lo.size()) bad("'dim' does not match the box");
    for (const auto& e : j.at("points")) f.points.push_back(vec_from_json(e));
    for (const auto& e : j.at("values")) f.values.push_back(value_or_inf(e, "sampled value"));
    f.validate();
    return f;
}

json to_json(const bounds::Allocation& a) {
    return json{{"value", a.value}, {"k", a.k}, {"flag", flag_name(a.flag)}};
}

json to_json(const BoundReport& r) {
    return json{{"m", r.m},
                {"bound", to_json(r.alloc)},
                {"bound_udell", r.bound_udell},
                {"bound_classic", r.bound_classic},
                {"ordering_ok", r.alloc.value <= r.bound_udell + 1e-12 &&
                                    r.bound_udell <= r.bound_classic + 1e-12}};
}

json to_json(const apps::NumInstance& inst) {
    json routing = json::array();
    for (const Mat& r : inst.routing) {
        json rows = json::array();
        for (std::size_t l = 0; l < r.rows(); ++l) {
            json row = json::array();
            for (std::size_t k = 0; k < r.cols(); ++k) row.push_back(r(l, k));
            rows.push_back(row);
        }
        routing.push_back(rows);
    }
    return json{{"family", "num"},
                {"links", inst.links},
                {"users", inst.users},
                {"paths", inst.paths},
                {"routing", routing},
                {"capacity", to_json(inst.capacity)},
                {"kind", to_string(inst.kind)},
                {"seed", inst.seed}};
}

apps::NumInstance num_instance_from_json(const json& j) {
    if (!j.is_object()) bad("num instance must be an object");
    apps::NumInstance inst;
    inst.links = j.at("links").get<int>();
    inst.users = j.at("users").get<int>();
    inst.paths = j.at("paths").get<std::vector<int>>();
    inst.capacity = vec_from_json(j.at("capacity"));
    inst.kind = apps::utility_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& rj : j.at("routing")) {
        if (!rj.is_array() || rj.empty()) bad("routing matrix must be a nonempty array");
        Mat r(rj.size(), rj[0].size());
        for (std::size_t l = 0; l < rj.size(); ++l) {
            if (rj[l].size() != r.cols()) bad("ragged routing matrix");
            for (std::size_t k = 0; k < r.cols(); ++k)
                r(l, k) = number_at(rj[l][k], "routing entry");
        }
        inst.routing.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

json to_json(const apps::DsmInstance& inst) {
    return json{{"family", "dsm"},
                {"users", inst.users},
                {"tones", inst.tones},
                {"noise", to_json(inst.noise)},
                {"budget", to_json(inst.budget)},
                {"seed", inst.seed}};
}

apps::DsmInstance dsm_instance_from_json(const json& j) {
    if (!j.is_object()) bad("dsm instance must be an object");
    apps::DsmInstance inst;
    inst.users = j.at("users").get<int>();
    inst.tones = j.at("tones").get<int>();
    inst.noise = vec_from_json(j.at("noise"));
    inst.budget = vec_from_json(j.at("budget"));
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    inst.validate();
    return inst;
}

json to_json(const apps::GapReport& r) {
    json out{{"family", r.family},
             {"primal", r.primal},
             {"dual", r.dual},
             {"gap", r.gap},
             {"primal_direction", r.primal_direction},
             {"dual_direction", r.dual_direction},
             {"slack", r.slack},
             {"bound", to_json(r.alloc)},
             {"bound_udell", r.bound_udell},
             {"bound_classic", r.bound_classic},
             {"rho_table", to_json(r.table)},
             {"verdicts",
              json{{"gap_le_bound", r.verdict_gap_le_bound},
                   {"bound_le_udell", r.verdict_bound_le_udell},
                   {"udell_le_classic", r.verdict_udell_le_classic}}},
             {"seed", r.seed}};
    // utilities are maximized in the application statement; report both signs
    out["primal_max_convention"] = -r.primal;
    out["dual_max_convention"] = -r.dual;
    if (r.closed_form) out["closed_form"] = *r.closed_form;
    if (r.closed_form_comparison) out["closed_form_comparison"] = *r.closed_form_comparison;
    if (r.grid_step > 0) out["grid_step"] = r.grid_step;
    return out;
}

} // namespace sfgap::io
