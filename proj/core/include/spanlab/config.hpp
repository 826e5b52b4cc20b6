#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spanlab/instance.hpp"

namespace spanlab {

enum class Mode { kBuild, kVerify, kLonely, kSweep, kRgg };

const char* mode_name(Mode m) noexcept;
Mode parse_mode(const std::string& s);  // throws UsageError

struct ExperimentConfig {
  Mode mode = Mode::kBuild;
  Params params;
  int repetitions = 1;  // seeds params.seed, params.seed + 1, ...
  std::filesystem::path out_dir = "out";

  std::vector<int> grid_n;
  std::vector<double> grid_p;
  std::vector<double> grid_epsilon;

  std::size_t samples = 100000;  // lonely-integral pairs
  int stretch_full_limit = 2000;  // all-pairs checks up to this n
  int stretch_sample_sources = 200;
  std::optional<std::filesystem::path> instance;  // load instead of generating
  std::optional<std::filesystem::path> edges;     // verify: subset to check
  bool essential_full_scan = false;
  unsigned threads = 0;

  /// Throws UsageError naming the field.
  void validate() const;
};

/// key = value lines; '#' starts a comment. Throws ParseError / IoError.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies one setting; unknown keys and bad values raise UsageError.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

}  // namespace spanlab
