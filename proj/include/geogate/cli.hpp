#pragma once

// Command-line front end: flag and config-file parsing, the CSV table
// writer, and the scenario listing used by --list-scenarios.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "geogate/scenarios.hpp"
#include "geogate/textio.hpp"

namespace geogate {

// usage error; the front end prints the message and exits nonzero
struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string scenario;
  std::vector<double> gamma_grid;  // empty = scenario default
  int trajectories = 0;            // 0 = mode default
  double dt = 0;                   // 0 = mode default
  std::uint64_t seed = 42;
  RunMode mode = RunMode::full;
  std::string out;                 // empty = "<scenario>.csv"
  bool list_scenarios = false;     // transient action flags, never dumped
  bool dump_config = false;
  bool help = false;
  bool operator==(const RunConfig&) const = default;
};

inline std::string_view mode_name(RunMode m) {
  switch (m) {
    case RunMode::full: return "full";
    case RunMode::fast: return "fast";
    default: return "oracle";
  }
}

namespace detail {

inline std::string quoted(std::string_view tok) { return "'" + std::string(tok) + "'"; }

inline double parse_double(std::string_view key, std::string_view tok) {
  double v{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw CliError("malformed number for " + std::string(key) + ": " + quoted(tok));
  return v;
}

inline long parse_long(std::string_view key, std::string_view tok) {
  long v{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw CliError("malformed integer for " + std::string(key) + ": " + quoted(tok));
  return v;
}

inline std::uint64_t parse_u64(std::string_view key, std::string_view tok) {
  std::uint64_t v{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw CliError("malformed seed for " + std::string(key) + ": " + quoted(tok));
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return parts;
    s.remove_prefix(pos + 1);
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// shortest decimal that parses back to the same double, for config dumps
inline std::string format_exact(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline std::string scenario_names() {
  std::string s;
  for (const auto& sc : scenario_registry()) {
    if (!s.empty()) s += ", ";
    s += sc.name;
  }
  return s;
}

// comma list ("0,1e-3,0.01") or inclusive linear range ("lo:hi:n")
inline std::vector<double> parse_gamma_grid(std::string_view spec) {
  using namespace detail;
  if (spec.empty()) throw CliError("--gamma-grid: empty value");
  if (spec.find(':') != std::string_view::npos) {
    const auto p = split(spec, ':');
    if (p.size() != 3)
      throw CliError("--gamma-grid: expected lo:hi:n, got " + quoted(spec));
    const double lo = parse_double("--gamma-grid", p[0]);
    const double hi = parse_double("--gamma-grid", p[1]);
    const long n = parse_long("--gamma-grid", p[2]);
    if (lo < 0) throw CliError("--gamma-grid: negative rate " + quoted(p[0]));
    if (n < 2 || hi <= lo)
      throw CliError("--gamma-grid: need n >= 2 and hi > lo in " + quoted(spec));
    return lin_grid(lo, hi, (int)n);
  }
  std::vector<double> g;
  for (const auto tok : split(spec, ',')) {
    const double v = parse_double("--gamma-grid", tok);
    if (v < 0) throw CliError("--gamma-grid: negative rate " + quoted(tok));
    g.push_back(v);
  }
  return g;
}

// one key=value pair, shared by flags and config files
inline void apply_kv(RunConfig& c, std::string_view key, std::string_view val) {
  using namespace detail;
  if (key == "scenario") {
    if (!find_scenario(std::string(val)))
      throw CliError("unknown scenario " + quoted(val) + " (available: " + scenario_names() + ")");
    c.scenario = val;
  } else if (key == "gamma-grid") {
    c.gamma_grid = parse_gamma_grid(val);
  } else if (key == "trajectories") {
    const long v = parse_long("--trajectories", val);
    if (v < 1) throw CliError("--trajectories: need a positive count, got " + quoted(val));
    c.trajectories = (int)v;
  } else if (key == "dt") {
    const double v = parse_double("--dt", val);
    if (v <= 0) throw CliError("--dt: need a positive step, got " + quoted(val));
    c.dt = v;
  } else if (key == "seed") {
    c.seed = parse_u64("--seed", val);
  } else if (key == "mode") {
    if (val == "full") c.mode = RunMode::full;
    else if (val == "fast") c.mode = RunMode::fast;
    else if (val == "oracle") c.mode = RunMode::oracle;
    else throw CliError("unknown mode " + quoted(val) + " (expected full, fast, or oracle)");
  } else if (key == "out") {
    c.out = val;
  } else {
    throw CliError("unknown key " + quoted(key));
  }
}

// key=value lines, '#' comments; earlier values are overridden in place
inline void load_config_file(RunConfig& c, const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw CliError("cannot read config file '" + path.string() + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::string_view s(line);
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw CliError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      apply_kv(c, detail::trim(s.substr(0, eq)), detail::trim(s.substr(eq + 1)));
    } catch (const CliError& e) {
      throw CliError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

// flags take "--flag value" or "--flag=value"; flags override config files
inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  const auto value_of = [&](std::size_t& i, std::string_view flag,
                            std::string_view inline_val, bool has_inline) -> std::string {
    if (has_inline) return std::string(inline_val);
    if (i + 1 >= args.size()) throw CliError("missing value for " + std::string(flag));
    return args[++i];
  };

  const auto takes_value = [](std::string_view f) {
    return f == "--scenario" || f == "--gamma-grid" || f == "--trajectories" || f == "--dt" ||
           f == "--seed" || f == "--mode" || f == "--out" || f == "--config";
  };

  // config files first so that every flag wins regardless of position
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string_view tok = args[i];
    if (tok == "--config") {
      std::size_t j = i;
      load_config_file(cfg, value_of(j, "--config", {}, false));
      i = j;
    } else if (tok.starts_with("--config=")) {
      load_config_file(cfg, std::string(tok.substr(9)));
    } else if (tok.find('=') == std::string_view::npos && takes_value(tok)) {
      ++i;  // skip this flag's value so it is never mistaken for --config
    }
  }

  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string_view tok = args[i];
    if (tok == "--list-scenarios") { cfg.list_scenarios = true; continue; }
    if (tok == "--dump-config") { cfg.dump_config = true; continue; }
    if (tok == "--help" || tok == "-h") { cfg.help = true; continue; }
    if (!tok.starts_with("--")) throw CliError("unexpected argument " + detail::quoted(tok));
    std::string_view flag = tok, inline_val;
    bool has_inline = false;
    if (const auto eq = tok.find('='); eq != std::string_view::npos) {
      flag = tok.substr(0, eq);
      inline_val = tok.substr(eq + 1);
      has_inline = true;
    }
    const std::string_view key = flag.substr(2);
    if (flag == "--config") {
      value_of(i, flag, inline_val, has_inline);  // consumed in the first pass
      continue;
    }
    if (key != "scenario" && key != "gamma-grid" && key != "trajectories" && key != "dt" &&
        key != "seed" && key != "mode" && key != "out")
      throw CliError("unknown flag " + detail::quoted(tok));
    apply_kv(cfg, key, value_of(i, flag, inline_val, has_inline));
  }
  return cfg;
}

// persistent fields only; parse_args(--config <this>) reproduces the config
inline std::string render_config(const RunConfig& c) {
  using detail::format_exact;
  std::string s = "# geogate run configuration\n";
  if (!c.scenario.empty()) s += "scenario = " + c.scenario + "\n";
  if (!c.gamma_grid.empty()) {
    s += "gamma-grid = ";
    for (std::size_t i = 0; i < c.gamma_grid.size(); ++i) {
      if (i) s += ',';
      s += format_exact(c.gamma_grid[i]);
    }
    s += '\n';
  }
  if (c.trajectories > 0) s += "trajectories = " + std::to_string(c.trajectories) + "\n";
  if (c.dt > 0) s += "dt = " + format_exact(c.dt) + "\n";
  s += "seed = " + std::to_string(c.seed) + "\n";
  s += "mode = " + std::string(mode_name(c.mode)) + "\n";
  if (!c.out.empty()) s += "out = " + c.out + "\n";
  return s;
}

inline RunOptions to_run_options(const RunConfig& c) {
  RunOptions opt;
  opt.mode = c.mode;
  if (!c.gamma_grid.empty()) opt.gamma_override = c.gamma_grid;
  if (c.trajectories > 0) opt.n_traj_override = c.trajectories;
  if (c.dt > 0) opt.dt_override = c.dt;
  opt.master_seed = c.seed;
  return opt;
}

// ---- CSV output ---------------------------------------------------------

inline std::string render_table(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw CliError("emit_table: no rows");
  std::string s = "gamma,loss_fidelity,entropy,eof,se_loss,se_entropy,se_eof,tau,n_traj,seed\n";
  for (const auto& r : rows) {
    s += format_sig9(r.gamma);
    s += ',';
    s += format_sig9(r.loss);
    s += ',';
    s += format_sig9(r.entropy_val);
    s += ',';
    if (r.twoq) s += format_sig9(r.eof_val);  // EOF columns stay empty for one qubit
    s += ',';
    s += format_sig9(r.se_loss);
    s += ',';
    s += format_sig9(r.se_entropy);
    s += ',';
    if (r.twoq) s += format_sig9(r.se_eof);
    s += ',';
    s += format_sig9(r.tau);
    s += ',';
    s += std::to_string(r.n_traj);
    s += ',';
    s += std::to_string(r.seed);
    s += '\n';
  }
  return s;
}

inline void emit_table(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  const std::string body = render_table(rows);  // validate before touching the path
  std::ofstream f(path, std::ios::binary);      // LF endings verbatim
  if (!f) throw CliError("cannot write '" + path.string() + "'");
  f << body;
  f.close();
  if (!f) throw CliError("write failed for '" + path.string() + "'");
}

// "fig1a.csv" + "pi8-z" -> "fig1a.pi8-z.csv"; empty labels keep the path
inline std::filesystem::path labeled_path(std::filesystem::path base, std::string_view label) {
  if (label.empty()) return base;
  const auto ext = base.extension();
  base.replace_extension();
  base += ".";
  base += label;
  base += ext;
  return base;
}

// ---- scenario listing -----------------------------------------------------

inline std::string describe_scenarios() {
  std::string s;
  for (const auto& sc : scenario_registry()) {
    s += sc.name + "  " + std::to_string(sc.gamma_grid.size()) + " points [" +
         format_sig9(sc.gamma_grid.front()) + ", " + format_sig9(sc.gamma_grid.back()) +
         "], N=" + std::to_string(sc.n_traj);
    if (sc.curves.size() > 1) {
      s += ", curves:";
      for (const auto& c : sc.curves) s += " " + c.label;
    }
    s += "\n    " + sc.description + "\n";
  }
  return s;
}

inline std::string usage_text() {
  return "usage: geogate --scenario NAME [options]\n"
         "       geogate --list-scenarios\n"
         "options:\n"
         "  --scenario NAME     registered sweep scenario to run\n"
         "  --gamma-grid SPEC   comma list (0,1e-3,0.01) or linear range lo:hi:n\n"
         "  --trajectories N    stochastic trajectories per grid point\n"
         "  --dt T              integration step\n"
         "  --seed S            master seed for the trajectory streams\n"
         "  --mode M            full, fast, or oracle (deterministic reference)\n"
         "  --out PATH          output CSV path (default <scenario>.csv)\n"
         "  --config FILE       key = value file with the same keys; flags override\n"
         "  --dump-config       print the effective configuration and exit\n"
         "  --list-scenarios    print the scenario table and exit\n"
         "  --help              this text\n";
}

}  // namespace geogate
