#include "spanlab/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "spanlab/error.hpp"
#include "spanlab/rng.hpp"

namespace spanlab {

namespace {

constexpr int kMatrixLimit = 20000;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* model_name(Model m) noexcept { return m == Model::kGeometric ? "rgg" : "gnp"; }

void Params::validate() const {
  auto fail = [](const char* field, const char* why) {
    throw ValidationError(std::string("invalid ") + field + ": " + why);
  };
  if (n < 2) fail("n", "need at least 2 vertices");
  if (model == Model::kGnpEmbedding && !(p > 0.0 && p <= 1.0)) fail("p", "must lie in (0, 1]");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon", "must be positive");
  if (!(theta > 0.0) || !std::isfinite(theta)) fail("theta", "must be positive");
  if (!(M > 0.0) || !std::isfinite(M)) fail("M", "must be positive");
  if (!(K > 0.0) || !std::isfinite(K)) fail("K", "must be positive");
  if (model == Model::kGeometric && !(radius > 0.0 && radius <= std::sqrt(2.0)))
    fail("radius", "must lie in (0, sqrt(2)]");
}

// --- Adjacency / EdgeSet ---------------------------------------------------

Adjacency Adjacency::build(int n, std::span<const Edge> edges, std::span<const EdgeId> ids) {
  Adjacency a;
  a.offset.assign(static_cast<std::size_t>(n) + 1, 0);
  for (EdgeId e : ids) {
    ++a.offset[edges[e].u + 1];
    ++a.offset[edges[e].v + 1];
  }
  for (int v = 0; v < n; ++v) a.offset[v + 1] += a.offset[v];
  const std::size_t total = a.offset[n];
  a.neighbor.resize(total);
  a.length.resize(total);
  a.edge.resize(total);
  std::vector<std::uint32_t> fill(a.offset.begin(), a.offset.end() - 1);
  // ids ascending and edges sorted by (u,v) keep each list sorted by neighbor
  // for the u side; the v side receives u's in ascending order as well.
  for (EdgeId e : ids) {
    const Edge& ed = edges[e];
    for (auto [from, to] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
      const std::uint32_t k = fill[from]++;
      a.neighbor[k] = to;
      a.length[k] = ed.length;
      a.edge[k] = e;
    }
  }
  for (int v = 0; v < n; ++v) {
    const auto b = a.offset[v];
    const auto end = a.offset[v + 1];
    if (!std::is_sorted(a.neighbor.begin() + b, a.neighbor.begin() + end)) {
      std::vector<std::uint32_t> perm(end - b);
      for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = b + i;
      std::sort(perm.begin(), perm.end(), [&](auto x, auto y) { return a.neighbor[x] < a.neighbor[y]; });
      std::vector<VertexId> nb;
      std::vector<double> ln;
      std::vector<EdgeId> ed;
      for (auto k : perm) {
        nb.push_back(a.neighbor[k]);
        ln.push_back(a.length[k]);
        ed.push_back(a.edge[k]);
      }
      std::copy(nb.begin(), nb.end(), a.neighbor.begin() + b);
      std::copy(ln.begin(), ln.end(), a.length.begin() + b);
      std::copy(ed.begin(), ed.end(), a.edge.begin() + b);
    }
  }
  return a;
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& other) {
  for (std::size_t e = 0; e < bits_.size(); ++e)
    if (other.bits_[e]) insert(static_cast<EdgeId>(e));
  return *this;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  for (std::size_t e = 0; e < bits_.size(); ++e)
    if (bits_[e] && !other.bits_[e]) return false;
  return true;
}

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  out.reserve(size_);
  for (std::size_t e = 0; e < bits_.size(); ++e)
    if (bits_[e]) out.push_back(static_cast<EdgeId>(e));
  return out;
}

EdgeSet EdgeSet::full(std::size_t edge_count) {
  EdgeSet s(edge_count);
  std::fill(s.bits_.begin(), s.bits_.end(), 1);
  s.size_ = edge_count;
  return s;
}

// --- EmbeddedGraph ---------------------------------------------------------

EmbeddedGraph::EmbeddedGraph(PointSet points, std::vector<std::pair<VertexId, VertexId>> edges,
                             InstanceOrigin origin)
    : points_(std::move(points)), origin_(origin) {
  const int n = vertex_count();
  for (const Point& p : points_)
    if (!in_unit_square(p)) throw ValidationError("coordinate out of domain");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw ValidationError("duplicate edge");
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) edges_.push_back(Edge{u, v, dist(points_[u], points_[v])});

  std::vector<EdgeId> all(edges_.size());
  for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
  adj_ = Adjacency::build(n, edges_, all);

  if (n <= kMatrixLimit) {
    matrix_.assign((static_cast<std::size_t>(n) * n + 63) / 64, 0);
    for (const Edge& e : edges_) {
      for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        const std::size_t bit = static_cast<std::size_t>(a) * n + b;
        matrix_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
      }
    }
  }
}

bool EmbeddedGraph::has_edge(VertexId a, VertexId b) const noexcept {
  if (!matrix_.empty()) {
    const std::size_t bit = static_cast<std::size_t>(a) * points_.size() + b;
    return (matrix_[bit >> 6] >> (bit & 63)) & 1;
  }
  return edge_id(a, b) != kNoEdge;
}

EdgeId EmbeddedGraph::edge_id(VertexId a, VertexId b) const noexcept {
  if (a == b) return kNoEdge;
  if (adj_.degree(a) > adj_.degree(b)) std::swap(a, b);
  const auto first = adj_.neighbor.begin() + adj_.offset[a];
  const auto last = adj_.neighbor.begin() + adj_.offset[a + 1];
  const auto it = std::lower_bound(first, last, b);
  if (it == last || *it != b) return kNoEdge;
  return adj_.edge[it - adj_.neighbor.begin()];
}

Adjacency EmbeddedGraph::subgraph(const EdgeSet& s) const {
  const auto ids = s.ids();
  return Adjacency::build(vertex_count(), edges_, ids);
}

bool EmbeddedGraph::same_edges(const EmbeddedGraph& other) const {
  if (edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.u != b.u || a.v != b.v || a.length != b.length) return false;
  }
  return true;
}

// --- sampling --------------------------------------------------------------

PointSet sample_points(int n, std::uint64_t seed) {
  if (n < 0) throw ValidationError("invalid n: negative");
  const CounterRng rng(seed, CounterRng::kPoints);
  PointSet pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::uint64_t>(i) * 2;
    pts[i] = Point{rng.uniform(k), rng.uniform(k + 1)};
  }
  return pts;
}

EmbeddedGraph sample_gnp_embedding(const PointSet& points, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("invalid p: must lie in [0, 1]");
  const CounterRng rng(seed, CounterRng::kEdges);
  const int n = static_cast<int>(points.size());
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.05) + 16);
  std::uint64_t pair = 0;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v, ++pair)
      if (rng.uniform(pair) < p) edges.emplace_back(u, v);
  return EmbeddedGraph(points, std::move(edges), InstanceOrigin{Model::kGnpEmbedding, p, 0.0, seed});
}

EmbeddedGraph geometric_graph(const PointSet& points, double r, std::uint64_t seed) {
  if (!(r >= 0.0)) throw ValidationError("invalid radius: negative");
  std::vector<std::pair<VertexId, VertexId>> edges;
  const SpatialGrid grid(points, std::max(r, 1.0 / 2048));
  for (VertexId u = 0; u < static_cast<VertexId>(points.size()); ++u) {
    grid.for_each_candidate(points[u], r, [&](int v) {
      if (v > u && dist(points[u], points[v]) <= r) edges.emplace_back(u, v);
    });
  }
  return EmbeddedGraph(points, std::move(edges), InstanceOrigin{Model::kGeometric, 1.0, r, seed});
}

EmbeddedGraph generate_instance(const Params& params) {
  params.validate();
  auto pts = sample_points(params.n, params.seed);
  if (params.model == Model::kGeometric) return geometric_graph(pts, params.radius, params.seed);
  return sample_gnp_embedding(pts, params.p, params.seed);
}

// --- text format -----------------------------------------------------------

std::string format_instance(const EmbeddedGraph& g) {
  const auto& o = g.origin();
  std::string out = "geograph v1 n=" + std::to_string(g.vertex_count()) + " model=" + model_name(o.model);
  out += o.model == Model::kGeometric ? " r=" + fmt_double(o.radius) : " p=" + fmt_double(o.p);
  out += " seed=" + std::to_string(o.seed) + "\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out += "v " + std::to_string(v) + " " + fmt_double(g.point(v).x) + " " + fmt_double(g.point(v).y) + "\n";
  }
  for (const Edge& e : g.edges()) out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  return value;
}

std::string_view header_value(std::string_view tok, std::string_view key, std::size_t line) {
  if (tok.substr(0, key.size()) != key) throw ParseError(line, "expected '" + std::string(key) + "'");
  return tok.substr(key.size());
}

}  // namespace

EmbeddedGraph parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;

  if (!std::getline(in, raw)) throw ParseError(1, "empty instance file");
  ++line;
  const auto head = split_ws(raw);
  if (head.size() != 6 || head[0] != "geograph" || head[1] != "v1")
    throw ParseError(line, "expected header 'geograph v1 n=<n> model=<gnp|rgg> p=<p>|r=<r> seed=<seed>'");
  const int n = parse_number<int>(header_value(head[2], "n=", line), line, "vertex count");
  if (n < 0) throw ParseError(line, "negative vertex count");
  InstanceOrigin origin;
  const auto model = header_value(head[3], "model=", line);
  if (model == "gnp") {
    origin.model = Model::kGnpEmbedding;
    origin.p = parse_number<double>(header_value(head[4], "p=", line), line, "p");
  } else if (model == "rgg") {
    origin.model = Model::kGeometric;
    origin.radius = parse_number<double>(header_value(head[4], "r=", line), line, "radius");
  } else {
    throw ParseError(line, "unknown model '" + std::string(model) + "'");
  }
  origin.seed = parse_number<std::uint64_t>(header_value(head[5], "seed=", line), line, "seed");

  PointSet pts;
  pts.reserve(n);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::size_t> edge_line;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = split_ws(raw);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      if (tok.size() != 4) throw ParseError(line, "vertex line needs 'v <id> <x> <y>'");
      if (!edges.empty()) throw ParseError(line, "vertex line after edge lines");
      const int id = parse_number<int>(tok[1], line, "vertex id");
      if (id != static_cast<int>(pts.size())) throw ParseError(line, "vertex ids must be consecutive from 0");
      const Point p{parse_number<double>(tok[2], line, "coordinate"), parse_number<double>(tok[3], line, "coordinate")};
      if (!in_unit_square(p)) throw ParseError(line, "coordinate out of domain");
      pts.push_back(p);
    } else if (tok[0] == "e") {
      if (tok.size() != 3) throw ParseError(line, "edge line needs 'e <u> <v>'");
      const int u = parse_number<int>(tok[1], line, "vertex id");
      const int v = parse_number<int>(tok[2], line, "vertex id");
      if (u < 0 || v >= n || u >= v) throw ParseError(line, "edge needs 0 <= u < v < n");
      edges.emplace_back(u, v);
      edge_line.push_back(line);
    } else {
      throw ParseError(line, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (static_cast<int>(pts.size()) != n)
    throw ParseError(line, "expected " + std::to_string(n) + " vertices, found " + std::to_string(pts.size()));

  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (edges[order[i]] == edges[order[i - 1]]) throw ParseError(edge_line[order[i]], "duplicate edge");

  return EmbeddedGraph(std::move(pts), std::move(edges), origin);
}

void save_instance(const EmbeddedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_instance(g);
  if (!out) throw IoError("write failed: " + path.string());
}

EmbeddedGraph load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace spanlab
