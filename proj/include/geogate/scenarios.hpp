#pragma once
// Named sweep scenarios reproducing the shipped figures: each scenario is
// a set of curves (gate schedule + noise preset) swept over a grid of
// noise strengths Gamma, yielding rows of loss, entropy, and EOF with
// standard errors. Runs are deterministic for a fixed master seed.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geogate/lindblad.hpp"
#include "geogate/metrics.hpp"
#include "geogate/noise.hpp"
#include "geogate/qsd.hpp"
#include "geogate/schedule.hpp"

namespace geogate {

// ---- grids ------------------------------------------------------------

inline std::vector<double> lin_grid(double lo, double hi, int n) {
  if (n < 2 || hi <= lo) throw std::domain_error("lin_grid: need n >= 2 and hi > lo");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
  return g;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2 || lo <= 0 || hi <= lo) throw std::domain_error("log_grid: need n >= 2, 0 < lo < hi");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo * std::pow(hi / lo, (double)k / (n - 1));
  return g;
}

// ---- scenario data model ------------------------------------------------

struct Curve {
  std::string label;  // file suffix for multi-curve scenarios, "" when single
  int nq = 1;
  Schedule schedule;
  double entropy_base = 2;
  // the pair matching nq is the live one
  Vec<2> psi0_1{}, target_1{};
  Vec<4> psi0_2{}, target_2{};
  std::function<NoiseModel<2>(double)> noise_1;  // kappa = sqrt(gamma) -> channels
  std::function<NoiseModel<4>(double)> noise_2;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<double> gamma_grid;
  int n_traj = 1000;
  std::vector<Curve> curves;
};

struct SweepRow {
  double gamma = 0;
  double loss = 0, entropy_val = 0, eof_val = 0;
  double se_loss = 0, se_entropy = 0, se_eof = 0;
  double tau = 0;
  int n_traj = 0;  // 0 marks a deterministic (density-matrix) run
  std::uint64_t seed = 0;
  bool twoq = false;  // EOF columns only exist for two-qubit curves
};

struct PointResult {
  SweepRow row;
  double concurrence = 0, se_concurrence = 0;  // two-qubit curves only
};

enum class RunMode { full, fast, oracle };

struct RunOptions {
  RunMode mode = RunMode::full;
  std::optional<std::vector<double>> gamma_override;
  std::optional<int> n_traj_override;
  std::optional<double> dt_override;
  std::uint64_t master_seed = 42;
  int workers = 0;  // forwarded to the ensemble
};

// concrete per-point settings after mode resolution
struct PointConfig {
  RunMode mode = RunMode::full;
  double dt = 5e-4;
  int n_traj = 1000;
  std::uint64_t master_seed = 42;
  int workers = 0;
};

inline PointConfig resolve_options(const Scenario& s, const RunOptions& opt) {
  PointConfig pc;
  pc.mode = opt.mode;
  pc.dt = opt.dt_override ? *opt.dt_override : (opt.mode == RunMode::fast ? 2e-3 : 5e-4);
  pc.n_traj = opt.n_traj_override ? *opt.n_traj_override
                                  : (opt.mode == RunMode::fast ? 200 : s.n_traj);
  pc.master_seed = opt.master_seed;
  pc.workers = opt.workers;
  if (pc.dt <= 0) throw std::domain_error("run options: dt must be positive");
  if (pc.n_traj < 1) throw std::domain_error("run options: trajectory count must be positive");
  return pc;
}

// ---- curve factories ----------------------------------------------------

inline Curve single_qubit_curve(std::string label, double gamma_b,
                                std::function<NoiseModel<2>(double)> noise) {
  Curve c;
  c.label = std::move(label);
  c.nq = 1;
  c.schedule = adiabatic_single_gate(gamma_b);
  c.entropy_base = 2;
  c.psi0_1 = plus_state();
  c.target_1 = single_gate_target(gamma_b);
  c.noise_1 = std::move(noise);
  return c;
}

inline Curve two_qubit_curve(std::string label, Schedule sch, Vec<4> target,
                             std::function<NoiseModel<4>(double)> noise) {
  Curve c;
  c.label = std::move(label);
  c.nq = 2;
  c.schedule = std::move(sch);
  c.entropy_base = 4;
  c.psi0_2 = plus_plus_state();
  c.target_2 = target;
  c.noise_2 = std::move(noise);
  return c;
}

// ---- point runner ---------------------------------------------------------

namespace detail {

template <int N>
PointResult run_point_impl(const Curve& c, const Vec<N>& psi0, const Vec<N>& target,
                           const NoiseModel<N>& nm, double gamma, const PointConfig& pc,
                           std::uint64_t point_index) {
  PointResult out;
  SweepRow& row = out.row;
  row.gamma = gamma;
  row.tau = c.schedule.total_time();
  row.twoq = N == 4;
  row.seed = pc.master_seed;

  if (pc.mode == RunMode::oracle) {
    const auto rho = evolve_density<N>(c.schedule, nm, outer(psi0, psi0), pc.dt);
    row.loss = 1 - fidelity_state(target, rho);
    row.entropy_val = entropy(rho, c.entropy_base);
    if constexpr (N == 4) {
      out.concurrence = concurrence(rho);
      row.eof_val = eof_from_concurrence(out.concurrence);
    }
    row.n_traj = 0;
    return out;
  }

  EnsembleConfig ec;
  ec.dt = pc.dt;
  ec.n_traj = pc.n_traj;
  ec.master_seed = pc.master_seed;
  ec.point_index = point_index;
  ec.workers = pc.workers;
  const auto r = run_ensemble<N>(c.schedule, nm, psi0, ec);

  const auto ls = loss_fidelity(r.final_states, target);
  row.loss = ls.mean;
  row.se_loss = ls.se;
  const double base = c.entropy_base;
  const auto ent =
      jackknife<N>(r.final_states, [base](const Mat<N>& rho) { return entropy(rho, base); });
  row.entropy_val = ent.mean;
  row.se_entropy = ent.se;
  if constexpr (N == 4) {
    const auto con = jackknife<N>(r.final_states, [](const Mat<4>& rho) { return concurrence(rho); });
    out.concurrence = con.mean;
    out.se_concurrence = con.se;
    const auto ef = jackknife<N>(r.final_states, [](const Mat<4>& rho) { return eof(rho); });
    row.eof_val = ef.mean;
    row.se_eof = ef.se;
  }
  row.n_traj = pc.n_traj;
  return out;
}

}  // namespace detail

inline PointResult run_curve_point(const Curve& c, double gamma, const PointConfig& pc,
                                   std::uint64_t point_index) {
  if (gamma < 0) throw std::domain_error("run_curve_point: gamma must be non-negative");
  if (c.nq == 1)
    return detail::run_point_impl<2>(c, c.psi0_1, c.target_1, c.noise_1(std::sqrt(gamma)), gamma,
                                     pc, point_index);
  return detail::run_point_impl<4>(c, c.psi0_2, c.target_2, c.noise_2(std::sqrt(gamma)), gamma, pc,
                                   point_index);
}

// ---- scenario runner -------------------------------------------------------

struct CurveResult {
  std::string label;
  std::vector<SweepRow> rows;
};

inline std::vector<CurveResult> run_scenario(
    const Scenario& s, const RunOptions& opt,
    const std::function<void(int, int)>& progress = {}) {
  const auto pc = resolve_options(s, opt);
  const auto& grid = opt.gamma_override ? *opt.gamma_override : s.gamma_grid;
  if (grid.empty()) throw std::domain_error("run_scenario: empty gamma grid");

  std::vector<CurveResult> out;
  const int total = (int)(s.curves.size() * grid.size());
  int done = 0;
  std::uint64_t point_index = 0;
  for (const auto& c : s.curves) {
    CurveResult cr;
    cr.label = c.label;
    for (double g : grid) {
      cr.rows.push_back(run_curve_point(c, g, pc, point_index++).row);
      if (progress) progress(++done, total);
    }
    out.push_back(std::move(cr));
  }
  return out;
}

// ---- registry ---------------------------------------------------------------

inline const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> reg = [] {
    std::vector<Scenario> v;
    const auto noise_axis_1q = [](Axis ax) {
      return [ax](double k) { return axis_noise_1q(ax, k); };
    };
    const auto iso_1q = [](double k) { return isotropic_1q(k); };
    const auto noise_axis_2q = [](Axis ax) {
      return [ax](double k) { return axis_noise_2q_both(ax, k); };
    };
    const auto iso_2q = [](double k) { return isotropic_2q_both(k); };

    {
      Scenario s;
      s.name = "fig1a";
      s.description = "single-qubit gate loss under z vs x noise, loop phases pi/8 and pi";
      s.gamma_grid = log_grid(3e-5, 3e-2, 13);
      s.curves = {single_qubit_curve("pi8-z", pi / 8, noise_axis_1q(Axis::z)),
                  single_qubit_curve("pi8-x", pi / 8, noise_axis_1q(Axis::x)),
                  single_qubit_curve("pi-z", pi, noise_axis_1q(Axis::z)),
                  single_qubit_curve("pi-x", pi, noise_axis_1q(Axis::x))};
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "fig1b";
      s.description = "single-qubit gate (loop phase pi) loss and entropy under isotropic noise";
      s.gamma_grid = log_grid(3e-5, 3e-2, 13);
      s.curves = {single_qubit_curve("", pi, iso_1q)};
      v.push_back(std::move(s));
    }

    ConditionalGateParams cp;
    cp.omega1 = 87.9238;  // drive pinned to the shipped default
    const auto cond = adiabatic_conditional_gate(cp);
    const auto cond_target = conditional_gate_target(cond.target_phase);
    {
      Scenario s;
      s.name = "fig2a";
      s.description = "conditional gate loss, entropy, and EOF under isotropic two-qubit noise";
      s.gamma_grid = lin_grid(0, 0.01, 11);
      s.curves = {two_qubit_curve("", cond, cond_target, iso_2q)};
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "fig2b";
      s.description = "conditional gate EOF under x, z, and isotropic noise on both qubits";
      s.gamma_grid = lin_grid(0, 0.01, 11);
      s.curves = {two_qubit_curve("x", cond, cond_target, noise_axis_2q(Axis::x)),
                  two_qubit_curve("z", cond, cond_target, noise_axis_2q(Axis::z)),
                  two_qubit_curve("iso", cond, cond_target, iso_2q)};
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "fig3a";
      s.description = "dynamic entangling gate EOF under isotropic two-qubit noise";
      s.gamma_grid = lin_grid(0, 3, 13);
      s.curves = {two_qubit_curve("", dynamic_entangling_gate(), entangler_target(), iso_2q)};
      v.push_back(std::move(s));
    }
    {
      Scenario s;
      s.name = "fig3b";
      s.description = "fast geometric gate EOF under isotropic two-qubit noise";
      s.gamma_grid = lin_grid(0, 1.5, 11);
      s.curves = {two_qubit_curve("", fast_geometric_gate(), entangler_target(), iso_2q)};
      v.push_back(std::move(s));
    }
    return v;
  }();
  return reg;
}

inline const Scenario* find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry())
    if (s.name == name) return &s;
  return nullptr;
}

// ---- analysis helpers ----------------------------------------------------------

struct AnisotropyReport {
  std::vector<double> gammas;  // grid points with nonzero loss on both curves
  std::vector<double> ratio;   // loss(z) / loss(x)
  bool z_dominates = false;    // every listed ratio > 1
};

inline AnisotropyReport compare_anisotropy(const std::vector<SweepRow>& z_rows,
                                           const std::vector<SweepRow>& x_rows) {
  if (z_rows.size() != x_rows.size())
    throw std::domain_error("compare_anisotropy: grids differ in size");
  AnisotropyReport rep;
  rep.z_dominates = true;
  for (std::size_t i = 0; i < z_rows.size(); ++i) {
    if (std::abs(z_rows[i].gamma - x_rows[i].gamma) > 1e-12)
      throw std::domain_error("compare_anisotropy: gamma grids do not match");
    const double lz = z_rows[i].loss, lx = x_rows[i].loss;
    if (lz <= 0 && lx <= 0) {  // both noiseless, count as parity
      rep.gammas.push_back(z_rows[i].gamma);
      rep.ratio.push_back(1.0);
      rep.z_dominates = false;  // ratio 1 is not strict dominance
      continue;
    }
    rep.gammas.push_back(z_rows[i].gamma);
    rep.ratio.push_back(lz / lx);
    if (!(lz > lx)) rep.z_dominates = false;
  }
  return rep;
}

struct LossFit {
  double c = 0;             // fitted rate in loss = (1 - e^{-c Gamma})/2
  double ratio = 0;         // c / (4 tau), 1 for the ideal law
  double max_residual = 0;  // worst pointwise deviation from the fit
};

// least-squares fit of loss = (1 - e^{-c Gamma})/2 over the rows
inline LossFit fit_exponential_loss(const std::vector<SweepRow>& rows) {
  if (rows.size() < 4) throw std::domain_error("fit_exponential_loss: need at least 4 rows");
  double gspan = 0;
  for (const auto& r : rows) gspan = std::max(gspan, std::abs(r.gamma - rows[0].gamma));
  if (gspan <= 0) throw std::domain_error("fit_exponential_loss: degenerate gamma grid");

  const auto model = [](double c, double g) { return 0.5 * (1 - std::exp(-c * g)); };
  const auto sse = [&](double c) {
    double s = 0;
    for (const auto& r : rows) {
      const double d = model(c, r.gamma) - r.loss;
      s += d * d;
    }
    return s;
  };

  // seed from the linearizing transform, then golden-section + Newton polish
  double num = 0, den = 0;
  for (const auto& r : rows)
    if (r.gamma > 0 && r.loss < 0.499) {
      num += -std::log1p(-2 * r.loss) * r.gamma;
      den += r.gamma * r.gamma;
    }
  const double c0 = den > 0 ? num / den : 0;
  double lo = 0, hi = std::max(10 * c0, 1.0);
  const double gr = 0.5 * (std::sqrt(5.0) - 1);
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = sse(a), fb = sse(b);
  for (int it = 0; it < 200; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = sse(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = sse(b);
    }
  }
  double c = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {  // Newton on d(sse)/dc = 0
    double g1 = 0, g2 = 0;
    for (const auto& r : rows) {
      const double e = std::exp(-c * r.gamma);
      const double res = model(c, r.gamma) - r.loss;
      g1 += res * r.gamma * e;                             // gradient / const
      g2 += 0.5 * r.gamma * r.gamma * e * e - res * r.gamma * r.gamma * e;
    }
    if (g2 <= 0) break;
    c = std::max(0.0, c - g1 / g2);
  }

  LossFit fit;
  fit.c = c;
  fit.ratio = c / (4 * rows[0].tau);
  for (const auto& r : rows) fit.max_residual = std::max(fit.max_residual, std::abs(model(c, r.gamma) - r.loss));
  return fit;
}

}  // namespace geogate
