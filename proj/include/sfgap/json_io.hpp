#pragma once

#include "sfgap/apps.hpp"
#include "sfgap/config.hpp"
#include "sfgap/hulls.hpp"
#include "sfgap/nonconvexity.hpp"
#include "sfgap/sfdecomp.hpp"

#include "json.hpp"

namespace sfgap::io {

using json = nlohmann::json;

// Interchange schemas. JSON is the canonical format; every reader throws
// invalid_input with a position hint on malformed documents.

json to_json(const RunConfig& c);
RunConfig config_from_json(const json& j);

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json to_json(const hulls::PointSet& s);
hulls::PointSet point_set_from_json(const json& j);

// { "sets": [ {label, points} | [[..]..] , ... ], "target": [..] }
struct DecomposeRequest {
    std::vector<hulls::PointSet> sets;
    Vec target;
};
DecomposeRequest decompose_request_from_json(const json& j);

json to_json(const sf::Decomposition& d);

json to_json(const rho::Table& t);
rho::Table rho_table_from_json(const json& j);

// { dim, box_lo, box_hi, points: [...], values: [v | "inf", ...] }
json to_json(const rho::SampledFunction& f);
rho::SampledFunction sampled_function_from_json(const json& j);

json to_json(const bounds::Allocation& a);

// Full bound report: B + allocation + the coarser bounds.
struct BoundReport {
    bounds::Allocation alloc;
    double bound_udell = 0.0;
    double bound_classic = 0.0;
    int m = 0;
};
json to_json(const BoundReport& r);

json to_json(const apps::NumInstance& inst);
apps::NumInstance num_instance_from_json(const json& j);

json to_json(const apps::DsmInstance& inst);
apps::DsmInstance dsm_instance_from_json(const json& j);

json to_json(const apps::GapReport& r);

json parse(const std::string& text);      // wraps nlohmann parse errors
json load_file(const std::string& path);  // throws invalid_input on IO failure

} // namespace sfgap::io
