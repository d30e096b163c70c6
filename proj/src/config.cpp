#include "sfgap/config.hpp"

#include "sfgap/errors.hpp"

namespace sfgap {

void RunConfig::validate() const {
    if (tol_lp <= 0 || tol_pivot <= 0 || tol_rank <= 0 || tol_face <= 0)
        throw invalid_input("config: tolerances must be positive");
    if (minkowski_cap < 1 || subset_cap < 1) throw invalid_input("config: caps must be >= 1");
    if (weight_steps < 1) throw invalid_input("config: weight_steps must be >= 1");
    if (grid_step <= 0 || grid_step > 1) throw invalid_input("config: grid_step must be in (0,1]");
}

std::string to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::pretty: return "pretty";
    }
    return "json";
}

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "pretty") return OutputFormat::pretty;
    throw invalid_input("config: unknown output format '" + s + "'");
}

} // namespace sfgap
