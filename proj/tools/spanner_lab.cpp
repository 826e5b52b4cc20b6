// spanner-lab: build and verify (1+eps)-spanners of random embedded graphs.
//
//   spanner-lab <build|verify|lonely|sweep|rgg> [--config FILE] [overrides]
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 internal invariant violation.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spanlab/config.hpp"
#include "spanlab/error.hpp"
#include "spanlab/experiment.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify (1+eps)-spanners for random Euclidean graphs"};
  app.set_help_all_flag("--help-all");

  std::string mode;
  std::string config_path;
  // Flag overrides, applied after the config file.
  std::map<std::string, std::optional<std::string>> flags = {
      {"n", {}},     {"p", {}},     {"epsilon", {}}, {"theta", {}},    {"M", {}},     {"K", {}},
      {"seed", {}},  {"seeds", {}}, {"radius", {}},  {"out", {}},      {"model", {}}, {"samples", {}},
      {"instance", {}}, {"edges", {}}, {"threads", {}}, {"grid.n", {}}, {"grid.p", {}}, {"grid.epsilon", {}},
  };

  app.add_option("mode", mode, "build | verify | lonely | sweep | rgg")->required();
  app.add_option("--config", config_path, "key=value config file");
  for (auto& [key, slot] : flags) {
    app.add_option_function<std::string>("--" + key, [&slot](const std::string& v) { slot = v; },
                                         "override '" + key + "'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    spanlab::ExperimentConfig config;
    if (!config_path.empty()) {
      for (const auto& [key, value] : spanlab::read_config_file(config_path)) spanlab::apply_setting(config, key, value);
    }
    for (const auto& [key, value] : flags)
      if (value) spanlab::apply_setting(config, key, *value);
    config.mode = spanlab::parse_mode(mode);

    const spanlab::RunReport rep = spanlab::run(config);
    for (const auto& path : rep.artifacts) std::cout << "wrote " << path.string() << "\n";
    return 0;
  } catch (const spanlab::IoError& e) {
    std::cerr << "spanner-lab: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const spanlab::UsageError& e) {
    std::cerr << "spanner-lab: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const spanlab::ParseError& e) {
    std::cerr << "spanner-lab: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const spanlab::ValidationError& e) {
    std::cerr << "spanner-lab: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "spanner-lab: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
