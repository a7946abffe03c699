#ifndef WEYLSCOPE_IO_HPP
#define WEYLSCOPE_IO_HPP

#include "weylscope/enclosures.hpp"
#include "weylscope/models.hpp"
#include "weylscope/secular.hpp"
#include "weylscope/sweep.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace weylscope::io {

inline constexpr const char* schema_version = "1.0";

// Complex numbers travel as [re, im] pairs.
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

/// Model definition files.  kind is "graph", "lattice" or "profile";
/// unknown keys anywhere are errors.
models::WeylModel parse_model(const nlohmann::json& j);
models::WeylModel load_model(const std::string& path);

/// Dense complex matrix [[[re,im], ...], ...].
Matrix parse_complex_matrix(const nlohmann::json& j);
Matrix load_boundary_matrix(const std::string& path);

/// Region serialization: {"tag": ..., "params": {...}}.
nlohmann::json region_to_json(const enclosures::EnclosureRegion& r);
enclosures::EnclosureRegion region_from_json(const nlohmann::json& j);

/// Decay estimate: {"C", "beta", "mu", "source"}.
nlohmann::json decay_to_json(const enclosures::DecayEstimate& d);
enclosures::DecayEstimate decay_from_json(const nlohmann::json& j);

/// Spectrum report with eigenvalues, verdict table and warnings.
nlohmann::json report_to_json(const solver::SpectrumReport& r);

/// Region construction requests for the enclose command.
struct RegionRequest {
  std::string tag;  // sector | parabola | left_resolvent_free | dist_disk |
                    // point_disk | log_regions
  std::optional<double> eta;
  std::optional<double> xi;
  std::optional<enclosures::DecayEstimate> decay; // absent: fit/derive from model
  std::string dist_mode = "spectrum";             // dist_disk: spectrum | point
  std::optional<double> c1, c2;                   // log_regions
  int dim_class = 3;
};
std::vector<RegionRequest> parse_region_requests(const nlohmann::json& j);

/// Norm-sweep CSV with a schema_version comment line, deterministic row
/// order, and a status column ("ok", "cut", "singular").  Lattice sweeps
/// also carry the closed-form Schur bound column.
void write_weyl_csv(std::ostream& os, const models::WeylModel& model,
                    const std::vector<SweepPoint>& points,
                    bool include_entries = false);

std::string format_double(double v);

} // namespace weylscope::io

#endif
