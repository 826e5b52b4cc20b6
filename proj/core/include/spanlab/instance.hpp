#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spanlab/geometry.hpp"

namespace spanlab {

using VertexId = std::int32_t;
using EdgeId = std::uint32_t;
inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = 0xffffffffu;

enum class Model { kGnpEmbedding, kGeometric };

const char* model_name(Model m) noexcept;

/// Experiment parameters shared by generation and the spanner construction.
struct Params {
  int n = 400;
  double p = 0.3;
  double epsilon = 0.25;
  double theta = 0.5;
  double M = 2.0;
  double K = 20.0;
  std::uint64_t seed = 1;
  Model model = Model::kGnpEmbedding;
  double radius = 0.0;

  /// Throws ValidationError naming the offending field.
  void validate() const;

  /// Edge probability seen by the radii formulas: p for G(n,p), 1 for the
  /// geometric model (every pair within range is joined).
  double effective_p() const noexcept { return model == Model::kGeometric ? 1.0 : p; }
};

struct Edge {
  VertexId u = 0;  // u < v
  VertexId v = 0;
  double length = 0.0;
};

/// Compressed adjacency over a subset of a graph's edges. Neighbor lists are
/// sorted by vertex id; edge ids refer to the parent graph.
struct Adjacency {
  std::vector<std::uint32_t> offset;  // size n+1
  std::vector<VertexId> neighbor;
  std::vector<double> length;
  std::vector<EdgeId> edge;

  int vertex_count() const noexcept { return offset.empty() ? 0 : static_cast<int>(offset.size()) - 1; }
  std::size_t degree(VertexId v) const noexcept { return offset[v + 1] - offset[v]; }

  static Adjacency build(int n, std::span<const Edge> edges, std::span<const EdgeId> ids);
};

/// Membership bitmap over the edge ids of one graph.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t edge_count) : bits_(edge_count, 0) {}

  bool contains(EdgeId e) const noexcept { return bits_[e] != 0; }
  bool insert(EdgeId e) noexcept {
    if (bits_[e]) return false;
    bits_[e] = 1;
    ++size_;
    return true;
  }
  std::size_t size() const noexcept { return size_; }
  std::size_t universe() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return size_ == 0; }

  EdgeSet& operator|=(const EdgeSet& other);
  bool is_subset_of(const EdgeSet& other) const;
  std::vector<EdgeId> ids() const;

  static EdgeSet full(std::size_t edge_count);

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t size_ = 0;
};

/// Provenance recorded in the instance file header.
struct InstanceOrigin {
  Model model = Model::kGnpEmbedding;
  double p = 1.0;       // gnp
  double radius = 0.0;  // geometric
  std::uint64_t seed = 0;

  friend bool operator==(const InstanceOrigin&, const InstanceOrigin&) = default;
};

/// Points in the unit square plus an undirected simple edge set with
/// Euclidean lengths. Immutable after construction.
class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;

  /// Edges may be given in any orientation/order; throws ValidationError on
  /// self-loops, duplicates, bad vertex ids or points outside [0,1]^2.
  EmbeddedGraph(PointSet points, std::vector<std::pair<VertexId, VertexId>> edges,
                InstanceOrigin origin = {});

  int vertex_count() const noexcept { return static_cast<int>(points_.size()); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const PointSet& points() const noexcept { return points_; }
  const Point& point(VertexId v) const noexcept { return points_[v]; }
  /// Sorted by (u, v); the index is the EdgeId.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const noexcept { return edges_[e]; }
  const Adjacency& adjacency() const noexcept { return adj_; }
  const InstanceOrigin& origin() const noexcept { return origin_; }

  bool has_edge(VertexId a, VertexId b) const noexcept;
  /// kNoEdge when absent.
  EdgeId edge_id(VertexId a, VertexId b) const noexcept;

  Adjacency subgraph(const EdgeSet& s) const;

  friend bool operator==(const EmbeddedGraph& a, const EmbeddedGraph& b) {
    return a.points_ == b.points_ && a.origin_ == b.origin_ && a.same_edges(b);
  }

 private:
  bool same_edges(const EmbeddedGraph& other) const;

  PointSet points_;
  std::vector<Edge> edges_;
  Adjacency adj_;
  std::vector<std::uint64_t> matrix_;  // n*n adjacency bits
  InstanceOrigin origin_;
};

PointSet sample_points(int n, std::uint64_t seed);

/// Each of the C(n,2) pairs is kept independently with probability p, drawn
/// from the edge stream so the point stream is untouched.
EmbeddedGraph sample_gnp_embedding(const PointSet& points, double p, std::uint64_t seed);

/// Joins every pair at distance <= r.
EmbeddedGraph geometric_graph(const PointSet& points, double r, std::uint64_t seed = 0);

/// Points and edges for `params` (either model).
EmbeddedGraph generate_instance(const Params& params);

std::string format_instance(const EmbeddedGraph& g);
EmbeddedGraph parse_instance(const std::string& text);

void save_instance(const EmbeddedGraph& g, const std::filesystem::path& path);
EmbeddedGraph load_instance(const std::filesystem::path& path);

}  // namespace spanlab
