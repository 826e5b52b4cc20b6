#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spanlab/config.hpp"
#include "spanlab/instance.hpp"
#include "spanlab/lonely.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

inline constexpr const char* kArtifactName = "spanner-lab";
inline constexpr const char* kArtifactVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// `report` is a pure function of the config and is written to report.json;
/// wall-clock phase timings live apart in timings.json.
struct RunReport {
  Json report;
  Json timings;
  std::vector<std::filesystem::path> artifacts;
};

/// Dispatches on config.mode and writes the artifacts into config.out_dir.
RunReport run(const ExperimentConfig& config);
RunReport sweep(const ExperimentConfig& config);
RunReport rgg_run(const ExperimentConfig& config);

/// `u,v,length,in_e1,in_e2,in_e3,in_e4` sorted by (u,v), one row per E_eps edge.
std::string format_edges_csv(const EmbeddedGraph& g, const SpannerEdges& edges);
/// Reads the u,v columns of an edges CSV into a subset of g's edges. Throws
/// ParseError for malformed rows or pairs that are not edges of g.
EdgeSet parse_edge_subset_csv(const EmbeddedGraph& g, const std::string& text);

/// Fraction of (vertex, cone) slots holding a neighbor, over vertices at
/// least `margin` from the boundary of the unit square.
double cone_occupancy(const EmbeddedGraph& g, const ConeTable& table, double margin);

/// Evenly strided subset of `component` with at most `count` entries.
std::vector<VertexId> strided_sources(const std::vector<VertexId>& component, int count);

Json to_json(const StretchReport& r);
Json to_json(const ConstructSummary& s);
Json to_json(const FarPairDiagnostics& d);
Json to_json(const SpannerBuild& b);

}  // namespace spanlab
