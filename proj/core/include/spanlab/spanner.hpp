#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "spanlab/geometry.hpp"
#include "spanlab/instance.hpp"
#include "spanlab/paths.hpp"

namespace spanlab {

struct CriticalRadii {
  double r_eps = 0.0;  // edges at most this long are kept wholesale
  double R_eps = 0.0;  // pairs at least this far apart are "far"
};

/// r = sqrt(M / (n p^(1+theta))), R = sqrt(K ln n / (n p^(1+theta))). Values
/// above sqrt(2) are returned as-is.
CriticalRadii critical_radii(const Params& params);

/// Nearest (or bisector-nearest) adjacent neighbor per (vertex, cone).
struct ConeTable {
  ConeSpec spec;
  int n = 0;
  std::vector<VertexId> y;   // n * tau, kNoVertex for an empty cone
  std::vector<EdgeId> edge;  // edge {v, y} or kNoEdge
  std::vector<double> gap;   // |v - y|, kInfinity for an empty cone

  std::size_t slot(VertexId v, int cone) const noexcept { return static_cast<std::size_t>(v) * spec.tau + cone; }
  VertexId at(VertexId v, int cone) const noexcept { return y[slot(v, cone)]; }
  double distance(VertexId v, int cone) const noexcept { return gap[slot(v, cone)]; }
};

/// Yao table. Ties on distance go to the lower vertex id.
ConeTable build_cone_table(const EmbeddedGraph& g, const ConeSpec& spec);

/// Theta variant: minimizes the projection onto the cone bisector instead.
ConeTable build_theta_table(const EmbeddedGraph& g, const ConeSpec& spec);

EdgeSet build_E1(const EmbeddedGraph& g, const CriticalRadii& radii);
EdgeSet build_E2(const EmbeddedGraph& g, const ConeTable& table);

enum class PairKind : std::uint8_t { kBEps, kCEps, kNeither, kDisconnected };

const char* pair_kind_name(PairKind k) noexcept;

/// Classification of the ordered pair (a, b). The Yao gap is measured from a
/// toward b, so (a, b) and (b, a) can differ on the C_eps test.
struct PairClass {
  VertexId a = kNoVertex;
  VertexId b = kNoVertex;
  double r = 0.0;
  double d = kInfinity;
  double yao_gap = kInfinity;
  PairKind kind = PairKind::kDisconnected;
};

PairClass classify_pair(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                        const ApspOracle& oracle, double epsilon, VertexId a, VertexId b);

/// Every ordered pair a != b. Pairs touching a vertex outside the oracle's
/// source set are reported as disconnected.
std::vector<PairClass> classify_pairs(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                                      const ApspOracle& oracle, double epsilon);

/// Union of canonical shortest paths P_{a,b} (taken from a's field) over the
/// pairs of the given kind.
EdgeSet build_E3(const EmbeddedGraph& g, std::span<const PairClass> classes, const ApspOracle& oracle);
EdgeSet build_E4(const EmbeddedGraph& g, std::span<const PairClass> classes, const ApspOracle& oracle);

struct SpannerEdges {
  enum Bit : std::uint8_t { kE1 = 1, kE2 = 2, kE3 = 4, kE4 = 8 };

  EdgeSet e1, e2, e3, e4;
  EdgeSet all;

  std::uint8_t attribution(EdgeId e) const noexcept {
    return static_cast<std::uint8_t>((e1.contains(e) ? kE1 : 0) | (e2.contains(e) ? kE2 : 0) |
                                     (e3.contains(e) ? kE3 : 0) | (e4.contains(e) ? kE4 : 0));
  }
};

struct PairCensus {
  std::size_t b_eps = 0;
  std::size_t c_eps = 0;
  std::size_t neither = 0;
  std::size_t disconnected = 0;  // ordered pairs with an endpoint off the main component
};

/// Everything the construction computed; construct_path and the checks below
/// reuse it instead of rebuilding.
struct SpannerBuild {
  Params params;
  CriticalRadii radii;
  ConeSpec spec;
  ConeTable table;
  std::vector<VertexId> component;  // largest component, ascending
  ApspOracle oracle;                // one field per component vertex
  SpannerEdges edges;
  PairCensus census;
  std::size_t long_edges_e34 = 0;   // E3 u E4 edges longer than R_eps
};

/// E1..E4 and their union over the largest connected component.
SpannerBuild assemble_spanner(const EmbeddedGraph& g, const Params& params, unsigned threads = 0);

// --- routing ---------------------------------------------------------------

enum class Branch : std::uint8_t { kD1, kD2, kD3, kD4 };

const char* branch_name(Branch b) noexcept;

struct ConstructTrace {
  std::vector<VertexId> waypoints;  // Z_0 .. Z_k, Z_k is where the splice starts
  std::vector<Branch> branches;     // one per waypoint; the last is D1/D2/D3
  std::vector<VertexId> vertices;   // full walk, a ... b
  std::vector<EdgeId> edges;
  double length = 0.0;
  bool far_splice = false;          // D2/D3 fired with |Z_k - b| > R_eps

  std::size_t yao_steps() const noexcept { return waypoints.empty() ? 0 : waypoints.size() - 1; }
};

/// Routes a -> b: Yao steps while the step is short and the next waypoint
/// still has a good path to b, otherwise splices the exact shortest path.
/// Throws DisconnectedPair if b is unreachable and InvariantViolation if the
/// Yao steps stop approaching b.
ConstructTrace construct_path(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                              const ApspOracle& oracle, VertexId a, VertexId b, double epsilon);

ConstructTrace construct_path(const EmbeddedGraph& g, const SpannerBuild& build, VertexId a, VertexId b);

struct YaoRoute {
  std::vector<VertexId> vertices;
  double length = 0.0;
};

/// Plain Yao walk Z_{j+1} = Y(i_{Z_j,b}, Z_j). Throws DisconnectedPair when a
/// cone toward b is empty and InvariantViolation if it fails to approach b.
YaoRoute yao_route(const EmbeddedGraph& g, const ConeTable& table, VertexId a, VertexId b);

inline double yao_stretch_bound(double epsilon) { return 1.0 / (std::cos(epsilon) - std::sin(epsilon)); }

struct ConstructSummary {
  std::size_t pairs = 0;
  std::size_t stretch_violations = 0;  // L > (1+7 eps) d + 1e-9
  double max_ratio = 1.0;              // max L / d
  std::size_t far_flagged = 0;
  std::size_t containment_misses = 0;  // unflagged traces leaving E_eps
  std::size_t flagged_misses = 0;
  std::size_t pure_yao = 0;            // traces using only D4 steps and a D1 finish
  double pure_yao_max_ratio = 1.0;     // max L / |a - b| over those
  std::size_t max_steps = 0;
  std::array<std::size_t, 4> branch_counts{};  // final branch D1..D3, D4 = total Yao steps
};

/// Runs construct_path over all ordered pairs of the main component (or from
/// the given sources only).
ConstructSummary check_construct(const EmbeddedGraph& g, const SpannerBuild& build,
                                 std::optional<std::span<const VertexId>> sources = std::nullopt);

// --- verification ----------------------------------------------------------

struct StretchReport {
  double max_stretch = 1.0;
  VertexId arg_u = kNoVertex;
  VertexId arg_v = kNoVertex;
  std::map<long, std::size_t> histogram;  // bucket k covers [1 + k/100, 1 + (k+1)/100)
  std::size_t pairs_checked = 0;
  std::size_t disconnected_pairs = 0;     // connected in g, not in S
  std::size_t sources = 0;
  bool sampled = false;
};

inline constexpr double kHistogramWidth = 0.01;

/// Compares subgraph (V, S) against the oracle from each oracle source (or the
/// given subset, flagged as sampled).
StretchReport verify_stretch(const EmbeddedGraph& g, const EdgeSet& subset, const ApspOracle& oracle,
                             std::optional<std::span<const VertexId>> sources = std::nullopt, unsigned threads = 0);

struct FarPairDiagnostics {
  std::size_t pairs_in_range = 0;       // ordered connected pairs with |a-b| >= R_eps
  std::size_t detour_violations = 0;    // d > (1 + 4 eps) |a - b|
  std::size_t yao_step_violations = 0;  // Yao gap toward b > eps |a - b|
  std::vector<std::pair<VertexId, VertexId>> logged;  // first few detour violations
};

FarPairDiagnostics check_far_pairs(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                                   const ApspOracle& oracle, double epsilon);

}  // namespace spanlab
