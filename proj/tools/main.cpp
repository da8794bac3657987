#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "geogate/cli.hpp"

int main(int argc, char** argv) {
  using namespace geogate;
  const std::vector<std::string> args(argv + 1, argv + argc);

  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const CliError& e) {
    std::fprintf(stderr, "geogate: %s\n", e.what());
    return 2;
  }

  if (cfg.help) {
    std::fputs(usage_text().c_str(), stdout);
    return 0;
  }
  if (cfg.list_scenarios) {
    std::fputs(describe_scenarios().c_str(), stdout);
    return 0;
  }
  if (cfg.dump_config) {
    std::fputs(render_config(cfg).c_str(), stdout);
    return 0;
  }
  if (cfg.scenario.empty()) {
    std::fprintf(stderr, "geogate: missing scenario (available: %s)\n", scenario_names().c_str());
    return 2;
  }

  const Scenario* sc = find_scenario(cfg.scenario);
  try {
    const auto progress = [](int done, int total) {
      std::fprintf(stderr, "points %d/%d\n", done, total);
    };
    const auto curves = run_scenario(*sc, to_run_options(cfg), progress);
    const std::filesystem::path base = cfg.out.empty() ? cfg.scenario + ".csv" : cfg.out;
    for (const auto& cr : curves) {
      const auto path = labeled_path(base, cr.label);
      emit_table(cr.rows, path);
      std::fprintf(stderr, "wrote %s (%zu rows)\n", path.string().c_str(), cr.rows.size());
    }
  } catch (const std::exception& e) {  // trajectory aborts and I/O failures
    std::fprintf(stderr, "geogate: %s\n", e.what());
    return 1;
  }
  return 0;
}
