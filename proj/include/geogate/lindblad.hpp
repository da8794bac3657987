#pragma once
// Deterministic open-system reference: classical RK4 on the density
// matrix under rho' = -i[H,rho] + sum_k (L rho L^dag - {L^dag L, rho}/2).
// Serves as the sampling-error-free cross-check for the stochastic
// unraveling and as the integrator behind threshold scans.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "geogate/linalg.hpp"
#include "geogate/noise.hpp"
#include "geogate/schedule.hpp"

namespace geogate {

template <int N>
Mat<N> lindblad_rhs(const Mat<N>& h, const NoiseModel<N>& noise, const Mat<N>& rho) {
  Mat<N> out = (-iu) * (h * rho - rho * h);
  for (const auto& c : noise.channels) {
    out += c.op * rho * c.op_dag;
    out += (-0.5) * (c.dag_op * rho + rho * c.dag_op);
  }
  return out;
}

// fastest angular scale of a segment, used to cap the RK4 step
inline double stiffness_rate(const Segment& s, const FrameParams& fp, int nq) {
  switch (s.kind) {
    case SegKind::pulse:
      return std::abs(s.amp);
    case SegKind::free_evo:
      return std::abs(s.domega) + std::abs(s.omega_bf) + (nq == 2 ? 0.5 * std::abs(fp.j) : 0.0);
    case SegKind::rot:
      return 0;
    default: {  // tip, loop
      double r = std::hypot(fp.delta, s.omega1);
      if (nq == 2) r += 0.5 * std::abs(fp.j) + std::abs(fp.omega_b);
      return r;
    }
  }
}

// step count: the dt grid, refined so that rate * h <= 0.01
// (keeps eigenvalues of the integrated density above -1e-8 on the longest schedules)
inline int oracle_substeps(const Segment& s, const FrameParams& fp, int nq, double dt) {
  long n = std::max<long>(1, std::lround(s.duration / dt));
  n = std::max(n, (long)std::ceil(s.duration * stiffness_rate(s, fp, nq) / 0.01));
  return (int)n;
}

// one RK4 step with H sampled at the two endpoints and the midpoint
template <int N>
void rk4_step(const Mat<N>& h0, const Mat<N>& hm, const Mat<N>& h1, double h,
              const NoiseModel<N>& noise, Mat<N>& rho) {
  const Mat<N> k1 = lindblad_rhs(h0, noise, rho);
  const Mat<N> k2 = lindblad_rhs(hm, noise, rho + 0.5 * h * k1);
  const Mat<N> k3 = lindblad_rhs(hm, noise, rho + 0.5 * h * k2);
  const Mat<N> k4 = lindblad_rhs(h1, noise, rho + h * k3);
  rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {
template <int N>
void renorm_trace(Mat<N>& rho) {
  rho *= cplx(1.0 / std::real(trace(rho)));
}
}  // namespace detail

// fixed-H evolution, mostly for closed-form decay checks
template <int N>
void evolve_const(const Mat<N>& h, const NoiseModel<N>& noise, Mat<N>& rho, double duration,
                  double dt) {
  if (duration < 0) throw std::domain_error("evolve_const: negative duration");
  if (duration == 0) return;
  const int n = (int)std::max<long>(1, std::lround(duration / dt));
  const double step = duration / n;
  for (int k = 0; k < n; ++k) {
    rk4_step(h, h, h, step, noise, rho);
    detail::renorm_trace(rho);
  }
}

// density-matrix propagation of a whole schedule; the optional sample
// callback sees (time, rho) after every substep plus the initial state
template <int N>
Mat<N> evolve_density(const Schedule& sch, const NoiseModel<N>& noise, Mat<N> rho, double dt = 5e-4,
                      const std::function<void(double, const Mat<N>&)>& sample = {}) {
  if (1 << sch.nq != N) throw std::logic_error("evolve_density: dimension mismatch");
  double t = 0;
  if (sample) sample(t, rho);
  for (const auto& s : sch.segs) {
    if (s.kind == SegKind::rot) {
      const Mat<N> u = rot_unitary<N>(s);
      rho = u * rho * dagger(u);
      if (sample) sample(t, rho);
      continue;
    }
    const int n = oracle_substeps(s, sch.frame, sch.nq, dt);
    const double h = s.duration / n;
    for (int k = 0; k < n; ++k) {
      const double t0 = k * h;
      const Mat<N> ha = segment_hamiltonian<N>(s, t0, sch.frame);
      const Mat<N> hm = segment_hamiltonian<N>(s, t0 + 0.5 * h, sch.frame);
      const Mat<N> hb = segment_hamiltonian<N>(s, t0 + h, sch.frame);
      rk4_step(ha, hm, hb, h, noise, rho);
      detail::renorm_trace(rho);
      if (sample) sample(t + t0 + h, rho);
    }
    t += s.duration;
  }
  return rho;
}

}  // namespace geogate
