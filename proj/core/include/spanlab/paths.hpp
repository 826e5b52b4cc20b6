#pragma once

#include <limits>
#include <span>
#include <vector>

#include "spanlab/instance.hpp"

namespace spanlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Single-source result. Unreachable vertices have dist == kInfinity and no
/// predecessor. Among equal tentative keys the lower vertex id settles first,
/// and an equal-length relaxation keeps the lower-id predecessor.
struct DistanceField {
  VertexId source = kNoVertex;
  std::vector<double> dist;
  std::vector<VertexId> pred;
  std::vector<EdgeId> pred_edge;

  bool reachable(VertexId v) const noexcept { return dist[v] != kInfinity; }
};

struct Path {
  std::vector<VertexId> vertices;  // source first
  std::vector<EdgeId> edges;
  double length = 0.0;
};

DistanceField dijkstra(const Adjacency& adj, VertexId source);
DistanceField dijkstra(const EmbeddedGraph& g, VertexId source);

/// Walks predecessors from t back to the field's source. Throws
/// DisconnectedPair when t is unreachable.
Path shortest_path(const DistanceField& field, VertexId t);

/// Distance from s to t ignoring `excluded` (may be kNoEdge), giving up once
/// every remaining key exceeds `bound`; returns kInfinity in that case.
/// With `points` given, edge lengths must be Euclidean and the straight-line
/// distance to t is used as an A* heuristic.
double bounded_distance(const Adjacency& adj, VertexId s, VertexId t, double bound, EdgeId excluded,
                        const PointSet* points = nullptr);

/// Per-source distance fields for a designated source set.
class ApspOracle {
 public:
  ApspOracle() = default;
  ApspOracle(int vertex_count, std::vector<DistanceField> fields);

  int vertex_count() const noexcept { return static_cast<int>(row_.size()); }
  bool has_source(VertexId v) const noexcept { return row_[v] >= 0; }
  const DistanceField& field(VertexId source) const;
  const std::vector<DistanceField>& fields() const noexcept { return fields_; }

  /// Uses the row of u when available, otherwise the row of v.
  double distance(VertexId u, VertexId v) const;
  /// Canonical path from u's own field; u must be a source.
  Path path(VertexId u, VertexId v) const { return shortest_path(field(u), v); }

 private:
  std::vector<int> row_;
  std::vector<DistanceField> fields_;
};

/// One Dijkstra per source. `threads` == 0 picks hardware concurrency; the
/// result does not depend on the schedule.
ApspOracle apsp(const Adjacency& adj, std::span<const VertexId> sources, unsigned threads = 0);
ApspOracle apsp(const EmbeddedGraph& g, std::span<const VertexId> sources, unsigned threads = 0);

/// Component label per vertex, labels numbered by lowest member id.
std::vector<int> connected_components(const Adjacency& adj);

/// Vertices of the largest component in ascending order; ties go to the
/// component holding the lowest vertex id.
std::vector<VertexId> largest_component(const Adjacency& adj);

}  // namespace spanlab
