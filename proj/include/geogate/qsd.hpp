#pragma once
// Stochastic unraveling of the open-system dynamics: quantum state
// diffusion with one complex Wiener increment per channel. Chunks are
// propagated by the exact midpoint-Hamiltonian exponential; drift and
// diffusion enter through an Euler update between chunks. Ensembles are
// embarrassingly parallel and reduce in trajectory order, so results do
// not depend on the worker count.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "geogate/linalg.hpp"
#include "geogate/noise.hpp"
#include "geogate/rng.hpp"
#include "geogate/schedule.hpp"

namespace geogate {

template <int N>
struct CompiledStep {
  Mat<N> u;         // propagator for this step
  double h = 0;     // diffusive interval after the unitary, 0 for instant rotations
  double t_end = 0;
};

// schedule flattened to a chunk sequence, shared read-only by all trajectories
template <int N>
struct CompiledSchedule {
  std::vector<CompiledStep<N>> steps;
  double total_time = 0;
};

template <int N>
CompiledSchedule<N> compile_schedule(const Schedule& sch, double dt = 5e-4) {
  if (1 << sch.nq != N) throw std::logic_error("compile_schedule: dimension mismatch");
  CompiledSchedule<N> cs;
  double t = 0;
  for (const auto& s : sch.segs) {
    if (s.kind == SegKind::rot) {
      cs.steps.push_back({rot_unitary<N>(s), 0.0, t});
      continue;
    }
    const int n = chunk_count(s, dt);
    const double h = s.duration / n;
    for (int k = 0; k < n; ++k)
      cs.steps.push_back({chunk_unitary<N>(s, (k + 0.5) * h, h, sch.frame), h, t + (k + 1) * h});
    t += s.duration;
  }
  cs.total_time = t;
  return cs;
}

// traceless expectation basis: {x, y, z} for one qubit, the 15 pauli
// products for two (same order as the full tables, identity dropped)
template <int N>
const std::array<Mat<N>, N * N - 1>& pauli_ops();

template <>
inline const std::array<Mat<2>, 3>& pauli_ops<2>() {
  static const std::array<Mat<2>, 3> t = {pauli_x, pauli_y, pauli_z};
  return t;
}

template <>
inline const std::array<Mat<4>, 15>& pauli_ops<4>() {
  static const std::array<Mat<4>, 15> t = [] {
    std::array<Mat<4>, 15> out;
    for (int k = 1; k < 16; ++k) out[k - 1] = pauli_table_2q()[k];
    return out;
  }();
  return t;
}

// sampling grid for a given stride: t = 0, every stride-th step, final step
template <int N>
std::vector<double> sample_times(const CompiledSchedule<N>& cs, int stride) {
  if (stride <= 0) throw std::domain_error("sample_times: stride must be positive");
  std::vector<double> ts{0.0};
  const int n = (int)cs.steps.size();
  for (int i = 0; i < n; ++i)
    if (i + 1 == n || (i + 1) % stride == 0) ts.push_back(cs.steps[i].t_end);
  return ts;
}

// one trajectory, a pure function of the seed; on_sample(index, psi) fires
// on the grid above when sample_stride > 0
template <int N>
Vec<N> run_trajectory(const CompiledSchedule<N>& cs, const NoiseModel<N>& noise, Vec<N> psi,
                      std::uint64_t seed, int sample_stride = 0,
                      const std::function<void(int, const Vec<N>&)>& on_sample = {}) {
  Rng rng(seed);
  const bool sampling = on_sample && sample_stride > 0;
  int sample_idx = 0;
  if (sampling) on_sample(sample_idx++, psi);
  const int n_steps = (int)cs.steps.size();
  for (int i = 0; i < n_steps; ++i) {
    const auto& st = cs.steps[i];
    psi = st.u * psi;
    if (st.h > 0 && !noise.empty()) {
      Vec<N> dpsi{};
      for (const auto& c : noise.channels) {
        const Vec<N> lp = c.op * psi;    // L |psi>
        const cplx e = inner(psi, lp);   // <L>
        const cplx edag = std::conj(e);  // <L^dag>
        Vec<N> term = edag * lp;
        term -= 0.5 * (c.dag_op * psi);
        term -= (0.5 * edag * e) * psi;
        dpsi += st.h * term;
        dpsi += rng.wiener(st.h) * (lp - e * psi);
      }
      psi += dpsi;
      const double n2 = norm2(psi);
      if (n2 < 1e-12) throw std::runtime_error("qsd: trajectory norm collapsed");
      psi *= cplx(1.0 / std::sqrt(n2));
    }
    if (sampling && (i + 1 == n_steps || (i + 1) % sample_stride == 0))
      on_sample(sample_idx++, psi);
  }
  return psi;
}

struct EnsembleConfig {
  double dt = 5e-4;
  int n_traj = 1;
  std::uint64_t master_seed = 1;
  std::uint64_t point_index = 0;  // distinguishes sweep points under one master seed
  int sample_stride = 0;          // 0: record final states only
  int workers = 0;                // 0: GEOGATE_WORKERS env var, else hardware concurrency
};

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GEOGATE_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? (int)hc : 1;
}

inline std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t point_index, int traj) {
  return derive_seed(master, (point_index << 32) + (std::uint64_t)traj);
}

template <int N>
struct EnsembleResult {
  Mat<N> rho{};                      // mean final projector
  std::vector<Vec<N>> final_states;  // per trajectory, trajectory order
  std::vector<double> t_samples;     // sampling grid when sample_stride > 0
  std::vector<std::array<double, N * N - 1>> pauli_mean;  // per sampled time
  std::vector<std::array<double, N * N - 1>> pauli_se;
  int n_traj = 0;
};

template <int N>
EnsembleResult<N> run_ensemble(const Schedule& sch, const NoiseModel<N>& noise, const Vec<N>& psi0,
                               const EnsembleConfig& cfg) {
  if (cfg.n_traj < 1) throw std::domain_error("run_ensemble: n_traj must be positive");
  if (std::abs(norm2(psi0) - 1.0) > 1e-10)
    throw std::domain_error("run_ensemble: initial state must be normalized");
  const auto cs = compile_schedule<N>(sch, cfg.dt);

  constexpr int n_ops = N * N - 1;
  const bool series = cfg.sample_stride > 0;
  const auto ts = series ? sample_times(cs, cfg.sample_stride) : std::vector<double>{};
  const int n_samp = (int)ts.size();

  EnsembleResult<N> out;
  out.n_traj = cfg.n_traj;
  out.final_states.resize(cfg.n_traj);

  const auto record_row = [&](double* row) {
    return std::function<void(int, const Vec<N>&)>([row](int k, const Vec<N>& psi) {
      const auto& ops = pauli_ops<N>();
      for (int o = 0; o < n_ops; ++o) row[(std::size_t)k * n_ops + o] = expect_re(psi, ops[o]);
    });
  };

  if (noise.empty()) {
    // all trajectories coincide, run one and replicate it
    std::vector<double> row((std::size_t)n_samp * n_ops);
    const auto fin =
        run_trajectory(cs, noise, psi0, trajectory_seed(cfg.master_seed, cfg.point_index, 0),
                       cfg.sample_stride, series ? record_row(row.data()) : nullptr);
    for (auto& v : out.final_states) v = fin;
    out.rho = outer(fin, fin);
    if (series) {
      out.t_samples = ts;
      out.pauli_se.assign(n_samp, {});
      out.pauli_mean.assign(n_samp, {});
      for (int k = 0; k < n_samp; ++k)
        for (int o = 0; o < n_ops; ++o) out.pauli_mean[k][o] = row[(std::size_t)k * n_ops + o];
    }
    return out;
  }

  std::vector<double> samp;  // [traj][sample][op]
  if (series) samp.resize((std::size_t)cfg.n_traj * n_samp * n_ops);

  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  const auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= cfg.n_traj) return;
      try {
        double* row = series ? samp.data() + (std::size_t)i * n_samp * n_ops : nullptr;
        out.final_states[i] =
            run_trajectory(cs, noise, psi0, trajectory_seed(cfg.master_seed, cfg.point_index, i),
                           cfg.sample_stride, series ? record_row(row) : nullptr);
      } catch (...) {
        const std::lock_guard<std::mutex> g(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  const int nw = std::min(resolve_workers(cfg.workers), cfg.n_traj);
  if (nw <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  // reductions run single-threaded in trajectory order
  Mat<N> acc{};
  for (const auto& v : out.final_states) acc += outer(v, v);
  out.rho = (1.0 / cfg.n_traj) * acc;

  if (series) {
    out.t_samples = ts;
    out.pauli_mean.assign(n_samp, {});
    out.pauli_se.assign(n_samp, {});
    for (int k = 0; k < n_samp; ++k)
      for (int o = 0; o < n_ops; ++o) {
        double s = 0;
        for (int i = 0; i < cfg.n_traj; ++i) s += samp[((std::size_t)i * n_samp + k) * n_ops + o];
        const double m = s / cfg.n_traj;
        double s2 = 0;
        for (int i = 0; i < cfg.n_traj; ++i) {
          const double d = samp[((std::size_t)i * n_samp + k) * n_ops + o] - m;
          s2 += d * d;
        }
        out.pauli_mean[k][o] = m;
        out.pauli_se[k][o] =
            cfg.n_traj > 1 ? std::sqrt(s2 / ((double)cfg.n_traj * (cfg.n_traj - 1))) : 0.0;
      }
  }
  return out;
}

}  // namespace geogate
