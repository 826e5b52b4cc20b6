#include "spanlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "spanlab/error.hpp"

namespace spanlab {

namespace {

using Clock = std::chrono::steady_clock;

class PhaseTimer {
 public:
  explicit PhaseTimer(Json& sink) : sink_(sink), start_(Clock::now()) {}

  void lap(const std::string& phase) {
    const auto now = Clock::now();
    const double prev = sink_.is_object() && sink_.contains(phase) ? sink_[phase].get<double>() : 0.0;
    sink_[phase] = prev + std::chrono::duration<double>(now - start_).count();
    start_ = now;
  }

 private:
  Json& sink_;
  Clock::time_point start_;
};

Json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text, RunReport& rep) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
  rep.artifacts.push_back(path);
}

void prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void finish(const ExperimentConfig& config, RunReport& rep, Clock::time_point started) {
  rep.timings["total"] = std::chrono::duration<double>(Clock::now() - started).count();
  write_text(config.out_dir / "report.json", rep.report.dump(2) + "\n", rep);
  write_text(config.out_dir / "timings.json", rep.timings.dump(2) + "\n", rep);
}

Json config_echo(const ExperimentConfig& c) {
  const Params& p = c.params;
  Json j;
  j["mode"] = mode_name(c.mode);
  j["n"] = p.n;
  j["model"] = model_name(p.model);
  if (p.model == Model::kGeometric) j["radius"] = p.radius;
  else j["p"] = p.p;
  j["epsilon"] = p.epsilon;
  j["theta"] = p.theta;
  j["M"] = p.M;
  j["K"] = p.K;
  j["seed"] = p.seed;
  j["seeds"] = c.repetitions;
  if (c.mode == Mode::kSweep) {
    j["grid"] = {{"n", c.grid_n}, {"p", c.grid_p}, {"epsilon", c.grid_epsilon}};
  }
  if (c.mode == Mode::kLonely) j["samples"] = c.samples;
  if (c.instance) j["instance"] = c.instance->generic_string();
  if (c.edges) j["edges"] = c.edges->generic_string();
  return j;
}

Json header(const ExperimentConfig& c) {
  Json j;
  j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
  j["config"] = config_echo(c);
  return j;
}

Params seeded(const Params& base, int rep) {
  Params p = base;
  p.seed = base.seed + static_cast<std::uint64_t>(rep);
  return p;
}

// Instance for one repetition; a loaded instance overrides n/model/p/r.
EmbeddedGraph obtain_instance(const ExperimentConfig& c, Params& p) {
  if (c.instance) {
    EmbeddedGraph g = load_instance(*c.instance);
    p.n = g.vertex_count();
    p.model = g.origin().model;
    p.p = g.origin().p;
    p.radius = g.origin().radius;
    p.seed = g.origin().seed;
    return g;
  }
  return generate_instance(p);
}

std::filesystem::path seed_dir(const ExperimentConfig& c, const Params& p) {
  if (c.repetitions == 1) return c.out_dir;
  auto dir = c.out_dir / ("seed-" + std::to_string(p.seed));
  prepare_out_dir(dir);
  return dir;
}

// generate -> build -> verify -> lonely for one seed; shared by build/rgg/sweep.
Json build_and_check(const ExperimentConfig& c, Params& p, const EmbeddedGraph& g, Json& timings,
                     RunReport* artifacts_to, bool with_lonely) {
  PhaseTimer timer(timings);
  SpannerBuild b = assemble_spanner(g, p, c.threads);
  timer.lap("build");

  std::vector<VertexId> sampled;
  const bool sample = g.vertex_count() > c.stretch_full_limit;
  if (sample) sampled = strided_sources(b.component, c.stretch_sample_sources);
  const auto subset = sample ? std::optional<std::span<const VertexId>>(sampled) : std::nullopt;
  const StretchReport stretch = verify_stretch(g, b.edges.all, b.oracle, subset, c.threads);
  const ConstructSummary construct = check_construct(g, b, subset);
  const FarPairDiagnostics far = check_far_pairs(g, b.radii, b.table, b.oracle, p.epsilon);
  timer.lap("verify");

  Json rec;
  rec["seed"] = p.seed;
  rec["instance"] = {{"n", g.vertex_count()}, {"edges", g.edge_count()}, {"component", b.component.size()}};
  rec["spanner"] = to_json(b);
  const double size_ratio =
      static_cast<double>(b.edges.all.size()) / (p.n * std::pow(p.effective_p(), -p.theta));
  rec["spanner"]["size_ratio"] = size_ratio;
  rec["stretch"] = to_json(stretch);
  rec["stretch"]["bound"] = 1.0 + 7.0 * p.epsilon;
  rec["construct"] = to_json(construct);
  rec["far_pairs"] = to_json(far);

  if (with_lonely) {
    const LonelyCount lonely = count_lonely(g, p.epsilon, lonely_cutoff(p.n, p.effective_p(), p.epsilon));
    const EssentialEdges essential = essential_edges(g, p.epsilon, c.essential_full_scan);
    const auto misses = essential_misses(essential, b.edges.all);
    rec["lonely"] = {{"lonely_count", lonely.lonely},
                     {"count_below_cutoff", lonely.below_cutoff},
                     {"essential_count", essential.edges.size()},
                     {"essential_missing_from_spanner", misses.size()}};
    timer.lap("lonely");
  }

  if (artifacts_to) {
    const auto dir = seed_dir(c, p);
    write_text(dir / "instance.txt", format_instance(g), *artifacts_to);
    write_text(dir / "edges.csv", format_edges_csv(g, b.edges), *artifacts_to);
    timer.lap("write");
  }
  return rec;
}

double mean_of(const Json& runs, const std::vector<std::string>& path) {
  double s = 0.0;
  for (const Json& r : runs) {
    const Json* node = &r;
    for (const auto& k : path) node = &(*node)[k];
    s += node->get<double>();
  }
  return runs.empty() ? 0.0 : s / runs.size();
}

RunReport run_build(const ExperimentConfig& c) {
  const auto started = Clock::now();
  RunReport rep;
  rep.report = header(c);
  Json runs = Json::array();
  for (int k = 0; k < c.repetitions; ++k) {
    Params p = seeded(c.params, k);
    Json t;
    PhaseTimer timer(t);
    const EmbeddedGraph g = obtain_instance(c, p);
    timer.lap("generate");
    runs.push_back(build_and_check(c, p, g, t, &rep, true));
    rep.timings["seed-" + std::to_string(p.seed)] = t;
  }
  rep.report["runs"] = runs;
  rep.report["summary"] = {
      {"mean_union", mean_of(runs, {"spanner", "sizes", "union"})},
      {"mean_size_ratio", mean_of(runs, {"spanner", "size_ratio"})},
      {"mean_lonely", mean_of(runs, {"lonely", "lonely_count"})},
  };
  finish(c, rep, started);
  return rep;
}

RunReport run_verify(const ExperimentConfig& c) {
  const auto started = Clock::now();
  RunReport rep;
  rep.report = header(c);
  Params p = c.params;
  Json t;
  PhaseTimer timer(t);
  const EmbeddedGraph g = obtain_instance(c, p);
  timer.lap("generate");
  EdgeSet subset = EdgeSet::full(g.edge_count());
  if (c.edges) {
    std::ifstream in(*c.edges, std::ios::binary);
    if (!in) throw IoError("cannot open " + c.edges->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    subset = parse_edge_subset_csv(g, buf.str());
  }
  const auto component = largest_component(g.adjacency());
  const ApspOracle oracle = apsp(g, component, c.threads);
  timer.lap("apsp");
  const bool sample = g.vertex_count() > c.stretch_full_limit;
  std::vector<VertexId> sampled;
  if (sample) sampled = strided_sources(component, c.stretch_sample_sources);
  const StretchReport stretch = verify_stretch(
      g, subset, oracle, sample ? std::optional<std::span<const VertexId>>(sampled) : std::nullopt, c.threads);
  timer.lap("verify");
  rep.report["instance"] = {{"n", g.vertex_count()}, {"edges", g.edge_count()}, {"component", component.size()}};
  rep.report["subset_size"] = subset.size();
  rep.report["stretch"] = to_json(stretch);
  rep.timings["phases"] = t;
  write_text(c.out_dir / "instance.txt", format_instance(g), rep);
  finish(c, rep, started);
  return rep;
}

RunReport run_lonely(const ExperimentConfig& c) {
  const auto started = Clock::now();
  RunReport rep;
  rep.report = header(c);
  Json runs = Json::array();
  const double eps = c.params.epsilon;
  for (int k = 0; k < c.repetitions; ++k) {
    Params p = seeded(c.params, k);
    Json t;
    PhaseTimer timer(t);
    const EmbeddedGraph g = obtain_instance(c, p);
    timer.lap("generate");
    const double rho = lonely_cutoff(p.n, p.effective_p(), eps);
    const LonelyCount lonely = count_lonely(g, eps, rho);
    timer.lap("lonely");
    const EssentialEdges essential = essential_edges(g, eps, c.essential_full_scan);
    timer.lap("essential");
    runs.push_back({{"seed", p.seed},
                    {"edges", g.edge_count()},
                    {"lonely_count", lonely.lonely},
                    {"count_below_cutoff", lonely.below_cutoff},
                    {"essential_count", essential.edges.size()},
                    {"essential_candidates", essential.candidates}});
    rep.timings["seed-" + std::to_string(p.seed)] = t;
    if (k == 0) {
      std::string csv = "u,v,length,essential\n";
      std::size_t j = 0;
      for (EdgeId e : lonely.edges) {
        while (j < essential.edges.size() && essential.edges[j] < e) ++j;
        const bool ess = j < essential.edges.size() && essential.edges[j] == e;
        const Edge& ed = g.edge(e);
        csv += std::to_string(ed.u) + "," + std::to_string(ed.v) + "," + g17(ed.length) + "," + (ess ? "1" : "0") + "\n";
      }
      write_text(c.out_dir / "lonely_edges.csv", csv, rep);
    }
  }
  const auto& p = c.params;
  Json t;
  PhaseTimer timer(t);
  const IntegralEstimate est = expected_lonely_integral(p.n, p.effective_p(), eps, c.samples, p.seed);
  timer.lap("integral");
  rep.timings["integral"] = t["integral"];

  const double mean_lonely = mean_of(runs, {"lonely_count"});
  rep.report["runs"] = runs;
  rep.report["lonely_report"] = {
      {"lonely_count", mean_lonely},
      {"essential_count", mean_of(runs, {"essential_count"})},
      {"closed_form_bound", lonely_closed_form_bound(p.n, eps)},
      {"integral_estimate", est.mean},
      {"integral_std_error", est.std_error},
      {"integral_estimate_single_p", est.single_p_mean},
      {"integral_samples", est.samples},
      {"rho_cutoff", lonely_cutoff(p.n, p.effective_p(), eps)},
      {"count_below_cutoff", mean_of(runs, {"count_below_cutoff"})},
      {"psi", psi(eps)},
      {"ratio_to_integral", est.mean > 0 ? mean_lonely / est.mean : 0.0},
  };
  finish(c, rep, started);
  return rep;
}

}  // namespace

std::string format_edges_csv(const EmbeddedGraph& g, const SpannerEdges& edges) {
  std::string out = "u,v,length,in_e1,in_e2,in_e3,in_e4\n";
  for (EdgeId e : edges.all.ids()) {
    const Edge& ed = g.edge(e);
    const auto bits = edges.attribution(e);
    out += std::to_string(ed.u) + "," + std::to_string(ed.v) + "," + g17(ed.length);
    for (auto bit : {SpannerEdges::kE1, SpannerEdges::kE2, SpannerEdges::kE3, SpannerEdges::kE4})
      out += (bits & bit) ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

EdgeSet parse_edge_subset_csv(const EmbeddedGraph& g, const std::string& text) {
  EdgeSet s(g.edge_count());
  std::istringstream in(text);
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty() || (line == 1 && row.rfind("u,", 0) == 0)) continue;
    std::istringstream cols(row);
    std::string a, b;
    if (!std::getline(cols, a, ',') || !std::getline(cols, b, ',')) throw ParseError(line, "expected u,v columns");
    VertexId u = 0, v = 0;
    try {
      std::size_t pa = 0, pb = 0;
      u = std::stoi(a, &pa);
      v = std::stoi(b, &pb);
      if (pa != a.size() || pb != b.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(line, "bad vertex id");
    }
    if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count()) throw ParseError(line, "vertex out of range");
    const EdgeId e = g.edge_id(u, v);
    if (e == kNoEdge) throw ParseError(line, "not an edge of the instance");
    s.insert(e);
  }
  return s;
}

double cone_occupancy(const EmbeddedGraph& g, const ConeTable& table, double margin) {
  std::size_t slots = 0, filled = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const Point& p = g.point(v);
    if (std::min({p.x, 1.0 - p.x, p.y, 1.0 - p.y}) < margin) continue;
    for (int i = 0; i < table.spec.tau; ++i) {
      ++slots;
      if (table.at(v, i) != kNoVertex) ++filled;
    }
  }
  return slots == 0 ? 1.0 : static_cast<double>(filled) / slots;
}

std::vector<VertexId> strided_sources(const std::vector<VertexId>& component, int count) {
  if (count <= 0 || component.empty()) return {};
  if (static_cast<std::size_t>(count) >= component.size()) return component;
  std::vector<VertexId> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(component[static_cast<std::size_t>(k) * component.size() / count]);
  return out;
}

Json to_json(const StretchReport& r) {
  Json hist = Json::object();
  for (const auto& [bucket, count] : r.histogram) hist[fixed(1.0 + bucket * kHistogramWidth, 2)] = count;
  return Json{{"max_stretch", num(r.max_stretch)},
              {"argmax", r.arg_u == kNoVertex ? Json(nullptr) : Json::array({r.arg_u, r.arg_v})},
              {"pairs_checked", r.pairs_checked},
              {"disconnected_pairs", r.disconnected_pairs},
              {"sources", r.sources},
              {"sampled", r.sampled},
              {"histogram_width", kHistogramWidth},
              {"histogram", hist}};
}

Json to_json(const ConstructSummary& s) {
  return Json{{"pairs", s.pairs},
              {"max_ratio", s.max_ratio},
              {"stretch_violations", s.stretch_violations},
              {"far_flagged", s.far_flagged},
              {"containment_misses", s.containment_misses},
              {"flagged_misses", s.flagged_misses},
              {"pure_yao", s.pure_yao},
              {"pure_yao_max_ratio", s.pure_yao_max_ratio},
              {"max_steps", s.max_steps},
              {"branches",
               {{"D1", s.branch_counts[0]}, {"D2", s.branch_counts[1]}, {"D3", s.branch_counts[2]},
                {"D4", s.branch_counts[3]}}}};
}

Json to_json(const FarPairDiagnostics& d) {
  Json logged = Json::array();
  for (auto [a, b] : d.logged) logged.push_back({a, b});
  return Json{{"pairs_in_range", d.pairs_in_range},
              {"detour_violations", d.detour_violations},
              {"yao_step_violations", d.yao_step_violations},
              {"logged", logged}};
}

Json to_json(const SpannerBuild& b) {
  return Json{{"radii", {{"r_eps", b.radii.r_eps}, {"R_eps", b.radii.R_eps}}},
              {"tau", b.spec.tau},
              {"sizes",
               {{"e1", b.edges.e1.size()},
                {"e2", b.edges.e2.size()},
                {"e3", b.edges.e3.size()},
                {"e4", b.edges.e4.size()},
                {"union", b.edges.all.size()}}},
              {"pairs",
               {{"b_eps", b.census.b_eps},
                {"c_eps", b.census.c_eps},
                {"neither", b.census.neither},
                {"disconnected", b.census.disconnected}}},
              {"long_edges_e34", b.long_edges_e34}};
}

RunReport sweep(const ExperimentConfig& config) {
  config.validate();
  prepare_out_dir(config.out_dir);
  const auto started = Clock::now();
  RunReport rep;
  rep.report = header(config);
  const auto ns = config.grid_n.empty() ? std::vector<int>{config.params.n} : config.grid_n;
  const auto ps = config.grid_p.empty() ? std::vector<double>{config.params.p} : config.grid_p;
  const auto es = config.grid_epsilon.empty() ? std::vector<double>{config.params.epsilon} : config.grid_epsilon;

  std::string csv =
      "n,p,epsilon,seed,edges,e1,e2,e3,e4,union,size_ratio,max_stretch,construct_max_ratio,"
      "containment_misses,far_flagged,lonely,essential,t_generate,t_build,t_verify,t_lonely\n";
  Json points = Json::array();
  for (int n : ns) {
    for (double pp : ps) {
      for (double eps : es) {
        Json runs = Json::array();
        for (int k = 0; k < config.repetitions; ++k) {
          Params p = seeded(config.params, k);
          p.n = n;
          p.p = pp;
          p.epsilon = eps;
          p.model = Model::kGnpEmbedding;
          p.validate();
          Json t;
          PhaseTimer timer(t);
          const EmbeddedGraph g = generate_instance(p);
          timer.lap("generate");
          Json rec = build_and_check(config, p, g, t, nullptr, true);
          const auto& sz = rec["spanner"]["sizes"];
          csv += std::to_string(n) + "," + g17(pp) + "," + g17(eps) + "," + std::to_string(p.seed) + "," +
                 std::to_string(g.edge_count()) + "," + sz["e1"].dump() + "," + sz["e2"].dump() + "," +
                 sz["e3"].dump() + "," + sz["e4"].dump() + "," + sz["union"].dump() + "," +
                 g17(rec["spanner"]["size_ratio"].get<double>()) + "," + rec["stretch"]["max_stretch"].dump() + "," +
                 g17(rec["construct"]["max_ratio"].get<double>()) + "," +
                 rec["construct"]["containment_misses"].dump() + "," + rec["construct"]["far_flagged"].dump() + "," +
                 rec["lonely"]["lonely_count"].dump() + "," + rec["lonely"]["essential_count"].dump() + "," +
                 fixed(t["generate"].get<double>(), 4) + "," + fixed(t["build"].get<double>(), 4) + "," +
                 fixed(t["verify"].get<double>(), 4) + "," + fixed(t["lonely"].get<double>(), 4) + "\n";
          rep.timings[std::to_string(n) + "/" + g17(pp) + "/" + g17(eps) + "/" + std::to_string(p.seed)] = t;
          runs.push_back(std::move(rec));
        }
        points.push_back({{"n", n},
                          {"p", pp},
                          {"epsilon", eps},
                          {"mean_union", mean_of(runs, {"spanner", "sizes", "union"})},
                          {"mean_size_ratio", mean_of(runs, {"spanner", "size_ratio"})},
                          {"mean_lonely", mean_of(runs, {"lonely", "lonely_count"})},
                          {"runs", runs}});
      }
    }
  }
  rep.report["grid"] = points;
  write_text(config.out_dir / "sweep.csv", csv, rep);
  finish(config, rep, started);
  return rep;
}

RunReport rgg_run(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.mode = Mode::kRgg;
  c.params.model = Model::kGeometric;
  c.validate();
  prepare_out_dir(c.out_dir);
  const auto started = Clock::now();
  RunReport rep;
  rep.report = header(c);
  Json runs = Json::array();
  for (int k = 0; k < c.repetitions; ++k) {
    Params p = seeded(c.params, k);
    Json t;
    PhaseTimer timer(t);
    const EmbeddedGraph g = obtain_instance(c, p);
    timer.lap("generate");
    Json rec = build_and_check(c, p, g, t, &rep, false);
    const ConeTable table = build_cone_table(g, ConeSpec::from_epsilon(p.epsilon));
    rec["cone_occupancy"] = {{"interior", cone_occupancy(g, table, p.radius)}, {"all", cone_occupancy(g, table, 0.0)}};
    const double size = rec["spanner"]["sizes"]["union"].get<double>();
    rec["size_constant"] = size * p.epsilon * p.epsilon / p.n;
    runs.push_back(std::move(rec));
    rep.timings["seed-" + std::to_string(p.seed)] = t;
  }
  rep.report["runs"] = runs;
  rep.report["summary"] = {{"mean_union", mean_of(runs, {"spanner", "sizes", "union"})},
                           {"mean_size_constant", mean_of(runs, {"size_constant"})},
                           {"mean_interior_occupancy", mean_of(runs, {"cone_occupancy", "interior"})}};
  finish(c, rep, started);
  return rep;
}

RunReport run(const ExperimentConfig& config) {
  config.validate();
  switch (config.mode) {
    case Mode::kSweep: return sweep(config);
    case Mode::kRgg: return rgg_run(config);
    default: break;
  }
  prepare_out_dir(config.out_dir);
  switch (config.mode) {
    case Mode::kBuild: return run_build(config);
    case Mode::kVerify: return run_verify(config);
    case Mode::kLonely: return run_lonely(config);
    default: break;
  }
  throw InvariantViolation("unhandled mode");
}

}  // namespace spanlab
