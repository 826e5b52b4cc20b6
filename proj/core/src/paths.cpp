#include "spanlab/paths.hpp"

#include <algorithm>
#include <atomic>
#include <queue>
#include <thread>
#include <utility>

#include "spanlab/error.hpp"

namespace spanlab {

namespace {

using HeapItem = std::pair<double, VertexId>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

void check_vertex(const Adjacency& adj, VertexId v) {
  if (v < 0 || v >= adj.vertex_count()) throw ValidationError("invalid vertex id " + std::to_string(v));
}

}  // namespace

DistanceField dijkstra(const Adjacency& adj, VertexId source) {
  check_vertex(adj, source);
  const int n = adj.vertex_count();
  DistanceField f;
  f.source = source;
  f.dist.assign(n, kInfinity);
  f.pred.assign(n, kNoVertex);
  f.pred_edge.assign(n, kNoEdge);
  std::vector<std::uint8_t> done(n, 0);

  MinHeap heap;
  f.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    const VertexId* nb = adj.neighbor.data();
    const double* len = adj.length.data();
    for (std::uint32_t k = adj.offset[u], end = adj.offset[u + 1]; k < end; ++k) {
      const VertexId v = nb[k];
      const double nd = du + len[k];
      double& dv = f.dist[v];
      if (nd < dv) {
        dv = nd;
        f.pred[v] = u;
        f.pred_edge[v] = adj.edge[k];
        heap.emplace(nd, v);
      } else if (nd == dv && !done[v] && u < f.pred[v]) {
        f.pred[v] = u;
        f.pred_edge[v] = adj.edge[k];
      }
    }
  }
  return f;
}

DistanceField dijkstra(const EmbeddedGraph& g, VertexId source) { return dijkstra(g.adjacency(), source); }

Path shortest_path(const DistanceField& field, VertexId t) {
  if (t < 0 || t >= static_cast<VertexId>(field.dist.size())) throw ValidationError("invalid vertex id");
  if (!field.reachable(t)) throw DisconnectedPair();
  Path p;
  for (VertexId v = t; v != field.source; v = field.pred[v]) {
    p.vertices.push_back(v);
    p.edges.push_back(field.pred_edge[v]);
  }
  p.vertices.push_back(field.source);
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  p.length = field.dist[t];
  return p;
}

double bounded_distance(const Adjacency& adj, VertexId s, VertexId t, double bound, EdgeId excluded,
                        const PointSet* points) {
  check_vertex(adj, s);
  check_vertex(adj, t);
  if (s == t) return 0.0;
  auto h = [&](VertexId v) { return points ? dist((*points)[v], (*points)[t]) : 0.0; };
  std::vector<double> g(adj.vertex_count(), kInfinity);
  MinHeap heap;
  g[s] = 0.0;
  heap.emplace(h(s), s);
  while (!heap.empty()) {
    const auto [f, u] = heap.top();
    heap.pop();
    if (f > bound) break;
    if (u == t) return g[u];
    if (f > g[u] + h(u)) continue;
    for (std::uint32_t k = adj.offset[u]; k < adj.offset[u + 1]; ++k) {
      if (adj.edge[k] == excluded) continue;
      const VertexId v = adj.neighbor[k];
      const double nd = g[u] + adj.length[k];
      if (nd < g[v] && nd + h(v) <= bound) {
        g[v] = nd;
        heap.emplace(nd + h(v), v);
      }
    }
  }
  return kInfinity;
}

ApspOracle::ApspOracle(int vertex_count, std::vector<DistanceField> fields)
    : row_(vertex_count, -1), fields_(std::move(fields)) {
  for (std::size_t i = 0; i < fields_.size(); ++i) row_[fields_[i].source] = static_cast<int>(i);
}

const DistanceField& ApspOracle::field(VertexId source) const {
  if (source < 0 || source >= vertex_count() || row_[source] < 0)
    throw ValidationError("vertex " + std::to_string(source) + " is not an oracle source");
  return fields_[row_[source]];
}

double ApspOracle::distance(VertexId u, VertexId v) const {
  if (u >= 0 && u < vertex_count() && row_[u] >= 0) return fields_[row_[u]].dist[v];
  return field(v).dist[u];
}

ApspOracle apsp(const Adjacency& adj, std::span<const VertexId> sources, unsigned threads) {
  for (VertexId s : sources) check_vertex(adj, s);
  std::vector<DistanceField> fields(sources.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, sources.size())));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++) fields[i] = dijkstra(adj, sources[i]);
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return ApspOracle(adj.vertex_count(), std::move(fields));
}

ApspOracle apsp(const EmbeddedGraph& g, std::span<const VertexId> sources, unsigned threads) {
  return apsp(g.adjacency(), sources, threads);
}

std::vector<int> connected_components(const Adjacency& adj) {
  const int n = adj.vertex_count();
  std::vector<int> label(n, -1);
  std::vector<VertexId> stack;
  int next = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (std::uint32_t k = adj.offset[u]; k < adj.offset[u + 1]; ++k) {
        const VertexId v = adj.neighbor[k];
        if (label[v] < 0) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<VertexId> largest_component(const Adjacency& adj) {
  const auto label = connected_components(adj);
  if (label.empty()) return {};
  const int count = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<int> size(count, 0);
  for (int l : label) ++size[l];
  const int best = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<VertexId> out;
  for (VertexId v = 0; v < static_cast<VertexId>(label.size()); ++v)
    if (label[v] == best) out.push_back(v);
  return out;
}

}  // namespace spanlab
