#include "spanlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spanlab/error.hpp"

namespace spanlab {

const char* mode_name(Mode m) noexcept {
  switch (m) {
    case Mode::kBuild: return "build";
    case Mode::kVerify: return "verify";
    case Mode::kLonely: return "lonely";
    case Mode::kSweep: return "sweep";
    case Mode::kRgg: return "rgg";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::kBuild, Mode::kVerify, Mode::kLonely, Mode::kSweep, Mode::kRgg})
    if (s == mode_name(m)) return m;
  throw UsageError("invalid mode: '" + s + "' (expected build|verify|lonely|sweep|rgg)");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T to_number(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = trim(value);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw UsageError("invalid " + key + ": '" + value + "'");
  return out;
}

template <typename T>
std::vector<T> to_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(to_number<T>(key, item));
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("invalid " + key + ": '" + value + "'");
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ParseError(line, "empty key");
    out[key] = trim(s.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  Params& p = c.params;
  if (key == "mode") c.mode = parse_mode(trim(value));
  else if (key == "n") p.n = to_number<int>(key, value);
  else if (key == "p") p.p = to_number<double>(key, value);
  else if (key == "epsilon") p.epsilon = to_number<double>(key, value);
  else if (key == "theta") p.theta = to_number<double>(key, value);
  else if (key == "M") p.M = to_number<double>(key, value);
  else if (key == "K") p.K = to_number<double>(key, value);
  else if (key == "seed") p.seed = to_number<std::uint64_t>(key, value);
  else if (key == "seeds") c.repetitions = to_number<int>(key, value);
  else if (key == "radius") {
    p.radius = to_number<double>(key, value);
  } else if (key == "model") {
    const std::string v = trim(value);
    if (v == "gnp") p.model = Model::kGnpEmbedding;
    else if (v == "rgg" || v == "geometric") p.model = Model::kGeometric;
    else throw UsageError("invalid model: '" + value + "'");
  }
  else if (key == "out") c.out_dir = trim(value);
  else if (key == "grid.n") c.grid_n = to_list<int>(key, value);
  else if (key == "grid.p") c.grid_p = to_list<double>(key, value);
  else if (key == "grid.epsilon") c.grid_epsilon = to_list<double>(key, value);
  else if (key == "samples") c.samples = to_number<std::size_t>(key, value);
  else if (key == "stretch_full_limit") c.stretch_full_limit = to_number<int>(key, value);
  else if (key == "stretch_sample_sources") c.stretch_sample_sources = to_number<int>(key, value);
  else if (key == "instance") c.instance = trim(value);
  else if (key == "edges") c.edges = trim(value);
  else if (key == "essential_full_scan") c.essential_full_scan = to_bool(key, value);
  else if (key == "threads") c.threads = to_number<unsigned>(key, value);
  else throw UsageError("unknown config key: '" + key + "'");
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw UsageError("invalid seeds: need at least 1 repetition");
  if (mode == Mode::kSweep && grid_n.empty() && grid_p.empty() && grid_epsilon.empty())
    throw UsageError("invalid grid: sweep needs at least one of grid.n, grid.p, grid.epsilon");
  if (mode == Mode::kRgg && params.model != Model::kGeometric && !(params.radius > 0.0))
    throw UsageError("invalid radius: rgg mode needs a radius");
  if (samples < 10000) throw UsageError("invalid samples: need at least 10^4");
  if (stretch_full_limit < 0 || stretch_sample_sources < 1) throw UsageError("invalid stretch sampling settings");
  if (out_dir.empty()) throw UsageError("invalid out: empty path");
  for (int n : grid_n)
    if (n < 2) throw UsageError("invalid grid.n: " + std::to_string(n));
  for (double q : grid_p)
    if (!(q > 0.0 && q <= 1.0)) throw UsageError("invalid grid.p: must lie in (0, 1]");
  for (double e : grid_epsilon)
    if (!(e > 0.0)) throw UsageError("invalid grid.epsilon: must be positive");
  if (!instance) {
    Params check = params;
    if (mode == Mode::kRgg) check.model = Model::kGeometric;
    if (mode != Mode::kSweep) {
      try {
        check.validate();
      } catch (const ValidationError& e) {
        throw UsageError(e.what());
      }
    }
  }
}

}  // namespace spanlab
