#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace sfgap {

// Default numeric tolerances. Desk-scale dense instances are well conditioned,
// so these are fixed constants overridable through RunConfig where it matters.
namespace tol {
inline constexpr double lp = 1e-9;     // LP feasibility / optimality
inline constexpr double pivot = 1e-11; // minimum usable pivot magnitude
inline constexpr double rank = 1e-10;  // singular-value / dependence threshold
inline constexpr double face = 1e-7;   // face-support detection on max-weight LPs
} // namespace tol

namespace caps {
inline constexpr std::size_t minkowski = 100000; // max enumerated sum points
inline constexpr std::size_t subsets = 1000000;  // max enumerated point subsets
} // namespace caps

enum class OutputFormat { json, csv, pretty };

// Run-wide knobs carried by the CLI and embedded in every report.
struct RunConfig {
    double tol_lp = tol::lp;
    double tol_pivot = tol::pivot;
    double tol_rank = tol::rank;
    double tol_face = tol::face;
    std::size_t minkowski_cap = caps::minkowski;
    std::size_t subset_cap = caps::subsets;
    int weight_steps = 8;
    double grid_step = 1.0 / 16.0;
    std::uint64_t seed = 0;
    OutputFormat out = OutputFormat::json;

    void validate() const; // throws invalid_input on nonpositive tolerances / zero caps
};

std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

} // namespace sfgap
