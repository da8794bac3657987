#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geogate/cli.hpp"

using namespace geogate;
namespace fs = std::filesystem;

namespace {

RunConfig parse(std::initializer_list<const char*> toks) {
  return parse_args(std::vector<std::string>(toks.begin(), toks.end()));
}

std::string parse_error(std::initializer_list<const char*> toks) {
  try {
    parse(toks);
  } catch (const CliError& e) {
    return e.what();
  }
  return {};
}

fs::path write_temp(const std::string& name, const std::string& body) {
  const auto p = fs::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("flags populate the run config") {
  const auto c = parse({"--scenario", "fig1b", "--trajectories", "1000", "--seed", "42"});
  CHECK(c.scenario == "fig1b");
  CHECK(c.trajectories == 1000);
  CHECK(c.seed == 42);
  CHECK(c.mode == RunMode::full);  // defaults
  CHECK(c.gamma_grid.empty());
  CHECK(c.dt == 0);
  CHECK(c.out.empty());

  const auto d = parse({"--scenario=fig2a", "--dt=0.002", "--mode", "oracle", "--out", "x.csv"});
  CHECK(d.scenario == "fig2a");
  CHECK(d.dt == 0.002);
  CHECK(d.mode == RunMode::oracle);
  CHECK(d.out == "x.csv");

  CHECK(parse({"--list-scenarios"}).list_scenarios);
  CHECK(parse({"--dump-config"}).dump_config);
  CHECK(parse({"--help"}).help);
}

TEST_CASE("gamma grid grammar") {
  const auto g = parse_gamma_grid("0:0.01:11");
  REQUIRE(g.size() == 11);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 0.01);
  CHECK(g[5] == Catch::Approx(0.005).margin(1e-15));  // evenly spaced, endpoints included

  const auto list = parse_gamma_grid("1e-4,2e-4,0");
  REQUIRE(list.size() == 3);
  CHECK(list[0] == 1e-4);
  CHECK(list[2] == 0.0);

  CHECK_THROWS_AS(parse_gamma_grid(""), CliError);
  CHECK_THROWS_WITH(parse_gamma_grid("0:0.01"), Catch::Matchers::ContainsSubstring("lo:hi:n"));
  CHECK_THROWS_WITH(parse_gamma_grid("a,1"), Catch::Matchers::ContainsSubstring("'a'"));
  CHECK_THROWS_WITH(parse_gamma_grid("-1e-3"), Catch::Matchers::ContainsSubstring("'-1e-3'"));
  CHECK_THROWS_WITH(parse_gamma_grid("0:0.01:1"), Catch::Matchers::ContainsSubstring("n >= 2"));
  CHECK_THROWS_WITH(parse_gamma_grid("0:0:5"), Catch::Matchers::ContainsSubstring("hi > lo"));
}

TEST_CASE("errors name the offending token") {
  CHECK_THAT(parse_error({"--frobnicate", "1"}),
             Catch::Matchers::ContainsSubstring("'--frobnicate'"));
  CHECK_THAT(parse_error({"fig1b"}), Catch::Matchers::ContainsSubstring("'fig1b'"));
  CHECK_THAT(parse_error({"--dt"}), Catch::Matchers::ContainsSubstring("missing value"));
  CHECK_THAT(parse_error({"--mode", "purple"}), Catch::Matchers::ContainsSubstring("'purple'"));
  CHECK_THAT(parse_error({"--trajectories", "0"}), Catch::Matchers::ContainsSubstring("'0'"));
  CHECK_THAT(parse_error({"--trajectories", "ten"}), Catch::Matchers::ContainsSubstring("'ten'"));
  CHECK_THAT(parse_error({"--dt", "-1"}), Catch::Matchers::ContainsSubstring("positive"));
  CHECK_THAT(parse_error({"--seed", "1.5"}), Catch::Matchers::ContainsSubstring("'1.5'"));

  const auto msg = parse_error({"--scenario", "nosuch"});
  CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("'nosuch'"));
  CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("fig1b"));  // lists what is available
}

TEST_CASE("config file loads and flags override it") {
  const auto p = write_temp("geogate_cli_cfg.txt",
                            "# comment line\n"
                            "scenario = fig1b\n"
                            "trajectories = 250   # trailing comment\n"
                            "mode = fast\n"
                            "gamma-grid = 1e-4,1e-3\n");
  const auto c = parse_args({"--config", p.string()});
  CHECK(c.scenario == "fig1b");
  CHECK(c.trajectories == 250);
  CHECK(c.mode == RunMode::fast);
  REQUIRE(c.gamma_grid.size() == 2);

  // the flag wins no matter where it sits relative to --config
  CHECK(parse_args({"--trajectories", "50", "--config", p.string()}).trajectories == 50);
  CHECK(parse_args({"--config", p.string(), "--trajectories", "50"}).trajectories == 50);
  CHECK(parse_args({"--config=" + p.string()}).trajectories == 250);

  const auto bad = write_temp("geogate_cli_bad.txt", "scenario = fig1b\nworkers = 3\n");
  CHECK_THAT(parse_error({"--config", bad.string().c_str()}),
             Catch::Matchers::ContainsSubstring(":2:"));  // file:line prefix
  const auto noeq = write_temp("geogate_cli_noeq.txt", "scenario fig1b\n");
  CHECK_THAT(parse_error({"--config", noeq.string().c_str()}),
             Catch::Matchers::ContainsSubstring("key = value"));
  CHECK_THAT(parse_error({"--config", "/no/such/file.cfg"}),
             Catch::Matchers::ContainsSubstring("/no/such/file.cfg"));
  fs::remove(p);
  fs::remove(bad);
  fs::remove(noeq);
}

TEST_CASE("dumped config reparses to an identical run config") {
  const auto cfg = parse({"--scenario", "fig2a", "--gamma-grid", "0:0.01:5", "--trajectories",
                          "77", "--dt", "0.001", "--seed", "7", "--mode", "fast", "--out",
                          "x.csv"});
  const auto p = write_temp("geogate_cli_dump.txt", render_config(cfg));
  CHECK(parse_args({"--config", p.string()}) == cfg);
  fs::remove(p);

  // defaults survive the round trip too
  const auto bare = parse({"--scenario", "fig1b"});
  const auto q = write_temp("geogate_cli_dump2.txt", render_config(bare));
  CHECK(parse_args({"--config", q.string()}) == bare);
  fs::remove(q);
}

TEST_CASE("run options mapping") {
  const auto opt = to_run_options(parse({"--scenario", "fig1b"}));
  CHECK(!opt.gamma_override);
  CHECK(!opt.n_traj_override);
  CHECK(!opt.dt_override);
  CHECK(opt.master_seed == 42);

  const auto full = to_run_options(
      parse({"--scenario", "fig1b", "--gamma-grid", "0.001,0.002", "--trajectories", "9", "--dt",
             "0.002", "--seed", "5", "--mode", "oracle"}));
  REQUIRE(full.gamma_override);
  CHECK(full.gamma_override->size() == 2);
  CHECK(full.n_traj_override.value() == 9);
  CHECK(full.dt_override.value() == 0.002);
  CHECK(full.master_seed == 5);
  CHECK(full.mode == RunMode::oracle);
}

TEST_CASE("table rendering is exact") {
  SweepRow one;  // single-qubit row: EOF columns stay empty
  one.gamma = 0.001;
  one.loss = 0.25;
  one.entropy_val = 1.0 / 3;
  one.se_loss = 0.5;
  one.se_entropy = 0.125;
  one.tau = 18.75;
  one.n_traj = 100;
  one.seed = 7;

  SweepRow two = one;  // two-qubit row carries EOF and its error
  two.twoq = true;
  two.gamma = 3e-5;
  two.loss = 0.123456789123;
  two.entropy_val = 0.0078125;
  two.eof_val = 0.125;
  two.se_eof = 0.0625;
  two.n_traj = 0;

  CHECK(render_table({one, two}) ==
        "gamma,loss_fidelity,entropy,eof,se_loss,se_entropy,se_eof,tau,n_traj,seed\n"
        "0.001,0.25,0.333333333,,0.5,0.125,,18.75,100,7\n"
        "3e-05,0.123456789,0.0078125,0.125,0.5,0.125,0.0625,18.75,0,7\n");
  CHECK_THROWS_AS(render_table({}), CliError);
}

TEST_CASE("table files are written byte for byte") {
  SweepRow r;
  r.gamma = 0.5;
  r.loss = 0.0625;
  r.tau = 2.0;
  r.n_traj = 10;
  r.seed = 3;
  const auto p = fs::temp_directory_path() / "geogate_cli_table.csv";
  emit_table({r}, p);
  CHECK(slurp(p) == render_table({r}));
  CHECK(slurp(p).find('\r') == std::string::npos);  // LF only
  fs::remove(p);

  CHECK_THROWS_AS(emit_table({r}, "/no/such/dir/t.csv"), CliError);
  const auto q = fs::temp_directory_path() / "geogate_cli_norows.csv";
  CHECK_THROWS_AS(emit_table({}, q), CliError);
  CHECK(!fs::exists(q));  // validation precedes file creation
}

TEST_CASE("curve labels land in the file name") {
  CHECK(labeled_path("fig1a.csv", "pi8-z") == fs::path("fig1a.pi8-z.csv"));
  CHECK(labeled_path("out/fig2b.csv", "iso") == fs::path("out/fig2b.iso.csv"));
  CHECK(labeled_path("fig1b.csv", "") == fs::path("fig1b.csv"));
  CHECK(labeled_path("table", "x") == fs::path("table.x"));
}

TEST_CASE("rendered sweep is byte-identical across worker counts") {
  const auto* s = find_scenario("fig3b");
  REQUIRE(s != nullptr);
  RunOptions opt;
  opt.mode = RunMode::fast;
  opt.n_traj_override = 16;
  opt.gamma_override = std::vector<double>{0.2, 0.8};

  std::string tables[3];
  const char* counts[] = {"1", "2", "8"};
  for (int k = 0; k < 3; ++k) {
    setenv("GEOGATE_WORKERS", counts[k], 1);
    const auto res = run_scenario(*s, opt);
    unsetenv("GEOGATE_WORKERS");
    REQUIRE(res.size() == 1);
    tables[k] = render_table(res[0].rows);
  }
  CHECK(tables[0] == tables[1]);
  CHECK(tables[0] == tables[2]);
  CHECK(tables[0].find("16,42\n") != std::string::npos);  // n_traj and master seed columns
}

TEST_CASE("scenario listing and usage name everything") {
  const auto listing = describe_scenarios();
  for (const auto& sc : scenario_registry()) {
    CHECK_THAT(listing, Catch::Matchers::ContainsSubstring(sc.name));
  }
  const auto usage = usage_text();
  for (const char* flag : {"--scenario", "--gamma-grid", "--trajectories", "--dt", "--seed",
                           "--mode", "--out", "--config", "--dump-config", "--list-scenarios"}) {
    CHECK_THAT(usage, Catch::Matchers::ContainsSubstring(flag));
  }
}
