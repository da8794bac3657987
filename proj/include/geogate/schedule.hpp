#pragma once

// Piecewise drive schedules for the geometric gates, their
// rotating-frame Hamiltonians, and exact chunk propagators.
//
// A schedule is a list of segments executed in order:
//   tip    linear ramp of the drive amplitude from 0 to omega1 (or
//          back down), drive phase phi = 0
//   loop   constant amplitude omega1, phi swept linearly 0 -> 2pi
//          (or reversed)
//   pulse  resonant square pulse about a fixed axis, area = pi; the
//          pulsed qubit's static z term is absent for its duration
//   rot    instantaneous rotation e^{-i angle sigma_axis / 2}
//   free   no drive: a-qubit detuning domega, b-qubit splitting, and
//          the Ising coupling only
//
// Single-qubit frame: H = (delta/2) sz + (omega1(t)/2)(cos phi sx +
// sin phi sy). Two qubits add (omega_b/2) sz_b + (j/4) sz_a sz_b with
// the drive acting on qubit a only.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "geogate/linalg.hpp"
#include "geogate/textio.hpp"

namespace geogate {

inline constexpr double pi = std::numbers::pi;

struct FrameParams {
  double delta = 100.0;  // drive detuning of qubit a during adiabatic stages
  double omega_b = 1.0;  // b-qubit splitting during adiabatic stages
  double j = 37.5;       // Ising coupling, H_J = (j/4) sz_a sz_b
};

enum class Axis { x, y, z };

inline char axis_letter(Axis ax) { return ax == Axis::x ? 'x' : ax == Axis::y ? 'y' : 'z'; }

inline const Mat<2>& pauli_axis(Axis ax) {
  switch (ax) {
    case Axis::x: return pauli_x;
    case Axis::y: return pauli_y;
    default: return pauli_z;
  }
}

enum class SegKind { tip, loop, pulse, rot, free_evo };

struct Segment {
  SegKind kind;
  double duration = 0;  // 0 only for rot
  int dir = +1;         // tip: +1 ramps up, -1 down; loop: phi winding sense
  double omega1 = 0;    // drive amplitude at the top of the ramp
  int target = 0;       // 0 = qubit a, 1 = qubit b
  Axis axis = Axis::y;
  double amp = 0;       // pulse amplitude (amp * duration = pi)
  double angle = 0;     // rot angle
  double domega = 0;    // free: a-qubit detuning
  double omega_bf = 0;  // free: b-qubit splitting

  static Segment make_tip(int dir, double omega1, double duration) {
    if (duration <= 0) throw std::domain_error("tip: duration must be positive");
    Segment s{SegKind::tip, duration};
    s.dir = dir;
    s.omega1 = omega1;
    return s;
  }
  static Segment make_loop(int dir, double omega1, double duration) {
    if (duration <= 0) throw std::domain_error("loop: duration must be positive");
    Segment s{SegKind::loop, duration};
    s.dir = dir;
    s.omega1 = omega1;
    return s;
  }
  static Segment make_pi_pulse(int target, Axis axis, double duration) {
    if (duration <= 0) throw std::domain_error("pulse: duration must be positive");
    Segment s{SegKind::pulse, duration};
    s.target = target;
    s.axis = axis;
    s.amp = pi / duration;
    return s;
  }
  static Segment make_rot(int target, Axis axis, double angle) {
    Segment s{SegKind::rot, 0.0};
    s.target = target;
    s.axis = axis;
    s.angle = angle;
    return s;
  }
  static Segment make_free(double duration, double domega, double omega_bf) {
    if (duration <= 0) throw std::domain_error("free: duration must be positive");
    Segment s{SegKind::free_evo, duration};
    s.domega = domega;
    s.omega_bf = omega_bf;
    return s;
  }
};

// drive envelope within a segment, local time in [0, duration]
inline double drive_amp(const Segment& s, double tloc) {
  if (s.kind == SegKind::tip) {
    const double f = tloc / s.duration;
    return s.omega1 * (s.dir > 0 ? f : 1 - f);
  }
  if (s.kind == SegKind::loop) return s.omega1;
  return 0;
}

inline double drive_phi(const Segment& s, double tloc) {
  if (s.kind != SegKind::loop) return 0;
  const double f = tloc / s.duration;
  return 2 * pi * (s.dir > 0 ? f : 1 - f);
}

// H restricted to the qubit-a block of one sigma_z^b sector, written
// as c0 I + cx sx + cy sy + cz sz. sb = +1 selects |0>_b. Every
// shipped segment conserves sigma_z^b, so the two sectors evolve
// independently; the lone exception (pulse on qubit b) is rejected
// here and handled by the generic path.
struct PauliCoeffs {
  double c0 = 0, cx = 0, cy = 0, cz = 0;
};

inline PauliCoeffs sector_coeffs(const Segment& s, double tloc, const FrameParams& fp,
                                 int nq, int sb) {
  PauliCoeffs c;
  const bool twoq = nq == 2;
  switch (s.kind) {
    case SegKind::free_evo:
      c.cz = 0.5 * s.domega;
      if (twoq) {
        c.c0 = 0.5 * sb * s.omega_bf;
        c.cz += 0.25 * sb * fp.j;
      }
      return c;
    case SegKind::pulse: {
      if (s.target != 0) throw std::logic_error("sector_coeffs: pulse on qubit b is not sector-diagonal");
      const double half = 0.5 * s.amp;
      if (s.axis == Axis::x) c.cx = half;
      else if (s.axis == Axis::y) c.cy = half;
      else c.cz = half;
      if (twoq) {
        c.c0 = 0.5 * sb * fp.omega_b;
        c.cz += 0.25 * sb * fp.j;
      }
      return c;
    }
    case SegKind::tip:
    case SegKind::loop: {
      const double om = drive_amp(s, tloc);
      const double phi = drive_phi(s, tloc);
      c.cx = 0.5 * om * std::cos(phi);
      c.cy = 0.5 * om * std::sin(phi);
      c.cz = 0.5 * fp.delta;
      if (twoq) {
        c.c0 = 0.5 * sb * fp.omega_b;
        c.cz += 0.25 * sb * fp.j;
      }
      return c;
    }
    case SegKind::rot:
      throw std::logic_error("sector_coeffs: instantaneous rotation has no Hamiltonian");
  }
  throw std::logic_error("sector_coeffs: unreachable");
}

inline Mat<2> coeffs_to_mat(const PauliCoeffs& c) {
  Mat<2> h;
  h(0, 0) = c.c0 + c.cz;
  h(1, 1) = c.c0 - c.cz;
  h(0, 1) = cplx(c.cx, -c.cy);
  h(1, 0) = cplx(c.cx, c.cy);
  return h;
}

// full Hamiltonian of a segment at local time tloc
template <int N>
Mat<N> segment_hamiltonian(const Segment& s, double tloc, const FrameParams& fp);

template <>
inline Mat<2> segment_hamiltonian<2>(const Segment& s, double tloc, const FrameParams& fp) {
  return coeffs_to_mat(sector_coeffs(s, tloc, fp, 1, +1));
}

template <>
inline Mat<4> segment_hamiltonian<4>(const Segment& s, double tloc, const FrameParams& fp) {
  if (s.kind == SegKind::pulse && s.target == 1) {
    // resonant pulse on b: its splitting is dropped, the coupling stays
    return cplx(0.5 * s.amp) * kron(identity<2>(), pauli_axis(s.axis)) +
           cplx(0.25 * fp.j) * kron(pauli_z, pauli_z);
  }
  Mat<4> h;
  for (int b = 0; b < 2; ++b) {
    const Mat<2> hb = coeffs_to_mat(sector_coeffs(s, tloc, fp, 2, b == 0 ? +1 : -1));
    for (int a = 0; a < 2; ++a)
      for (int a2 = 0; a2 < 2; ++a2) h(2 * a + b, 2 * a2 + b) = hb(a, a2);
  }
  return h;
}

// e^{-i (c0 I + c.sigma) h} in closed form:
// e^{-i c0 h} [cos(r h) I - i sin(r h)/r (c.sigma)], r = |c|
inline Mat<2> pauli_exp(const PauliCoeffs& c, double h) {
  const double r = std::sqrt(c.cx * c.cx + c.cy * c.cy + c.cz * c.cz);
  const double a = r * h;
  const double cosa = std::cos(a);
  const double sinc = r > 0 ? std::sin(a) / r : h;
  const cplx ph = std::exp(cplx(0, -c.c0 * h));
  Mat<2> u;
  u(0, 0) = ph * cplx(cosa, -sinc * c.cz);
  u(1, 1) = ph * cplx(cosa, sinc * c.cz);
  u(0, 1) = ph * (-iu * sinc * cplx(c.cx, -c.cy));
  u(1, 0) = ph * (-iu * sinc * cplx(c.cx, c.cy));
  return u;
}

// exact propagator over one sub-chunk, Hamiltonian frozen at tmid
template <int N>
Mat<N> chunk_unitary(const Segment& s, double tmid, double h, const FrameParams& fp);

template <>
inline Mat<2> chunk_unitary<2>(const Segment& s, double tmid, double h, const FrameParams& fp) {
  return pauli_exp(sector_coeffs(s, tmid, fp, 1, +1), h);
}

template <>
inline Mat<4> chunk_unitary<4>(const Segment& s, double tmid, double h, const FrameParams& fp) {
  if (s.kind == SegKind::pulse && s.target == 1)
    return expm_herm(segment_hamiltonian<4>(s, tmid, fp), h);
  Mat<4> u;
  for (int b = 0; b < 2; ++b) {
    const Mat<2> ub = pauli_exp(sector_coeffs(s, tmid, fp, 2, b == 0 ? +1 : -1), h);
    for (int a = 0; a < 2; ++a)
      for (int a2 = 0; a2 < 2; ++a2) u(2 * a + b, 2 * a2 + b) = ub(a, a2);
  }
  return u;
}

// R_n(angle) = e^{-i angle sigma_n / 2}
inline Mat<2> rotation(Axis ax, double angle) {
  PauliCoeffs c;
  if (ax == Axis::x) c.cx = 0.5;
  else if (ax == Axis::y) c.cy = 0.5;
  else c.cz = 0.5;
  return pauli_exp(c, angle);
}

template <int N>
Mat<N> rot_unitary(const Segment& s);

template <>
inline Mat<2> rot_unitary<2>(const Segment& s) {
  if (s.target != 0) throw std::logic_error("rot_unitary: qubit b rotation in a single-qubit schedule");
  return rotation(s.axis, s.angle);
}

template <>
inline Mat<4> rot_unitary<4>(const Segment& s) {
  const Mat<2> r = rotation(s.axis, s.angle);
  return s.target == 0 ? kron(r, identity<2>()) : kron(identity<2>(), r);
}

// number of equal sub-chunks for a segment at step size dt
inline int chunk_count(const Segment& s, double dt) {
  return std::max(1, int(std::llround(s.duration / dt)));
}

// ---- gate angles --------------------------------------------------

// cone opening theta for a target Berry phase: gamma_B = 4 gamma and
// gamma = pi (1 - cos theta), the solid angle of the drive loop
inline double theta_for_gamma_b(double gamma_b) {
  if (!(gamma_b >= 0 && gamma_b < 8 * pi))
    throw std::domain_error("theta_for_gamma_b: gamma_b outside [0, 8 pi)");
  return std::acos(1 - gamma_b / (4 * pi));
}

inline double omega1_for_theta(double theta, double delta) {
  return delta * std::tan(theta);
}

// cos theta for the two effective detunings delta +- j/2 seen by
// qubit a depending on the b-qubit state
inline std::pair<double, double> conditional_cosines(double omega1, double delta, double j) {
  const double dp = delta + 0.5 * j, dm = delta - 0.5 * j;
  return {dp / std::hypot(dp, omega1), dm / std::hypot(dm, omega1)};
}

// Drive amplitude giving a conditional Berry-phase difference of
// magnitude dgamma: solves pi (cos theta_+ - cos theta_-) = dgamma.
// The function rises from 0, peaks, and falls back, so we scan for
// the first bracket and bisect to the smaller root.
inline double omega1_for_conditional(double delta, double j, double dgamma) {
  if (dgamma <= 0) throw std::domain_error("omega1_for_conditional: dgamma must be positive");
  auto g = [&](double w) {
    const auto [cp, cm] = conditional_cosines(w, delta, j);
    return pi * (cp - cm) - dgamma;
  };
  double lo = 0, hi = 0;
  const int n = 512;
  bool found = false;
  for (int k = 1; k <= n; ++k) {
    const double w = 10 * delta * k / n;
    if (g(w) >= 0) {
      hi = w;
      found = true;
      break;
    }
    lo = w;
  }
  if (!found) throw std::domain_error("omega1_for_conditional: requested phase is unreachable");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---- schedules ----------------------------------------------------

struct Schedule {
  std::string name;
  int nq = 1;
  FrameParams frame;
  std::vector<Segment> segs;
  double target_phase = 0;  // gamma_B (single gate) or signed conditional phase

  double total_time() const {
    double t = 0;
    for (const auto& s : segs) t += s.duration;
    return t;
  }

  std::string describe() const;
};

struct AdiabaticTimes {
  double t_tip = pi;
  double t_loop = 2 * pi;
  double t_pi = pi / 100;
  bool instant_pi = false;  // replace the pi pulse by an instantaneous rotation
};

// Berry-phase gate on one qubit: tip up, loop, spin echo, loop back,
// tip down, echo. The echoes cancel the dynamical phase, leaving
// -gamma_B/2 between |0> and |1>.
inline Schedule adiabatic_single_gate(double gamma_b, const FrameParams& fp = {},
                                      const AdiabaticTimes& tm = {}) {
  const double om1 = omega1_for_theta(theta_for_gamma_b(gamma_b), fp.delta);
  const Segment echo = tm.instant_pi ? Segment::make_rot(0, Axis::y, pi)
                                     : Segment::make_pi_pulse(0, Axis::y, tm.t_pi);
  Schedule s;
  s.name = "adiabatic_single";
  s.nq = 1;
  s.frame = fp;
  s.target_phase = gamma_b;
  s.segs = {Segment::make_tip(+1, om1, tm.t_tip),
            Segment::make_loop(+1, om1, tm.t_loop),
            echo,
            Segment::make_loop(-1, om1, tm.t_loop),
            Segment::make_tip(-1, om1, tm.t_tip),
            echo};
  return s;
}

struct ConditionalGateParams {
  double dgamma = pi / 8;  // requested |conditional phase|
  double omega1 = 0;       // if > 0, taken as-is instead of solving from dgamma
  FrameParams frame{};
  AdiabaticTimes times{.t_pi = 1e-4 * pi};
};

// Conditional version: the b qubit shifts qubit a's detuning by
// +-j/2, so one drive loop accumulates different Berry phases on the
// two b branches. The whole loop block runs twice around a b-side
// echo to cancel the b-conditioned dynamical phase.
inline Schedule adiabatic_conditional_gate(const ConditionalGateParams& p = {}) {
  const double om1 = p.omega1 > 0
                         ? p.omega1
                         : omega1_for_conditional(p.frame.delta, p.frame.j, p.dgamma);
  const auto [cp, cm] = conditional_cosines(om1, p.frame.delta, p.frame.j);
  Schedule s;
  s.name = "adiabatic_conditional";
  s.nq = 2;
  s.frame = p.frame;
  s.target_phase = pi * (cm - cp);  // achieved signed phase, -dgamma for j > 0
  const Segment echo_a = p.times.instant_pi
                             ? Segment::make_rot(0, Axis::y, pi)
                             : Segment::make_pi_pulse(0, Axis::y, p.times.t_pi);
  const std::vector<Segment> loop_block = {Segment::make_tip(+1, om1, p.times.t_tip),
                                           Segment::make_loop(+1, om1, p.times.t_loop),
                                           echo_a,
                                           Segment::make_loop(-1, om1, p.times.t_loop),
                                           Segment::make_tip(-1, om1, p.times.t_tip)};
  const Segment echo_b = Segment::make_rot(1, Axis::y, pi);
  s.segs = loop_block;
  s.segs.push_back(echo_b);
  s.segs.insert(s.segs.end(), loop_block.begin(), loop_block.end());
  s.segs.push_back(echo_b);
  return s;
}

// plain Ising evolution for time pi/j, the fastest entangler the
// coupling allows
inline Schedule dynamic_entangling_gate(const FrameParams& fp = {}) {
  Schedule s;
  s.name = "dynamic";
  s.nq = 2;
  s.frame = fp;
  s.segs = {Segment::make_free(pi / fp.j, 0.0, 0.0)};
  return s;
}

struct FastGateParams {
  double domega = 18.75;  // a-qubit detuning during free evolution
  double omega_b = 0.01;  // b-qubit splitting during free evolution
};

// Non-adiabatic geometric gate: two free-evolution intervals wrapped
// in instantaneous rotations on qubit a, total time 2 pi / j
inline Schedule fast_geometric_gate(const FrameParams& fp = {}, const FastGateParams& fg = {}) {
  Schedule s;
  s.name = "fast_geometric";
  s.nq = 2;
  s.frame = fp;
  const Segment u = Segment::make_free(pi / fp.j, fg.domega, fg.omega_b);
  auto rot_a = [](Axis ax, double ang) { return Segment::make_rot(0, ax, ang); };
  s.segs = {rot_a(Axis::y, -pi / 2),
            rot_a(Axis::x, -pi / 4),
            u,
            rot_a(Axis::x, -pi / 2),
            u,
            rot_a(Axis::x, 3 * pi / 4),
            rot_a(Axis::z, -pi / 2),
            rot_a(Axis::x, pi / 2)};
  return s;
}

inline std::string Schedule::describe() const {
  std::string out = "schedule " + name + " nq=" + std::to_string(nq) +
                    " tau=" + format_sig9(total_time()) +
                    " target_phase=" + format_sig9(target_phase) + "\n";
  out += "frame delta=" + format_sig9(frame.delta) + " omega_b=" + format_sig9(frame.omega_b) +
         " j=" + format_sig9(frame.j) + "\n";
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Segment& s = segs[k];
    out += std::to_string(k) + " ";
    switch (s.kind) {
      case SegKind::tip:
        out += "tip dir=" + std::string(s.dir > 0 ? "+1" : "-1") +
               " omega1=" + format_sig9(s.omega1) + " dur=" + format_sig9(s.duration);
        break;
      case SegKind::loop:
        out += "loop dir=" + std::string(s.dir > 0 ? "+1" : "-1") +
               " omega1=" + format_sig9(s.omega1) + " dur=" + format_sig9(s.duration);
        break;
      case SegKind::pulse:
        out += std::string("pulse q=") + (s.target == 0 ? 'a' : 'b') +
               " axis=" + axis_letter(s.axis) + " amp=" + format_sig9(s.amp) +
               " dur=" + format_sig9(s.duration);
        break;
      case SegKind::rot:
        out += std::string("rot q=") + (s.target == 0 ? 'a' : 'b') +
               " axis=" + axis_letter(s.axis) + " angle=" + format_sig9(s.angle);
        break;
      case SegKind::free_evo:
        out += "free domega=" + format_sig9(s.domega) + " omega_b=" + format_sig9(s.omega_bf) +
               " dur=" + format_sig9(s.duration);
        break;
    }
    out += "\n";
  }
  return out;
}

// Time-mirror of a schedule: segments reversed, ramp and winding
// directions flipped, rotations and pulses conjugated. Undoes the
// forward schedule's geometric action on the prepared state; diabatic
// leakage and free-evolution segments do not invert.
inline Schedule reversed_schedule(const Schedule& in) {
  Schedule out = in;
  out.name = in.name + "_reversed";
  out.target_phase = -in.target_phase;
  out.segs.assign(in.segs.rbegin(), in.segs.rend());
  for (auto& s : out.segs) {
    switch (s.kind) {
      case SegKind::tip:
      case SegKind::loop:
        s.dir = -s.dir;
        break;
      case SegKind::rot:
        s.angle = -s.angle;
        break;
      case SegKind::pulse:
        s.amp = -s.amp;
        break;
      case SegKind::free_evo:
        break;
    }
  }
  return out;
}

// zero-noise propagator of a whole schedule
template <int N>
Mat<N> schedule_unitary(const Schedule& sch, double dt = 5e-4) {
  if (1 << sch.nq != N) throw std::logic_error("schedule_unitary: dimension mismatch");
  Mat<N> u = identity<N>();
  for (const auto& s : sch.segs) {
    if (s.kind == SegKind::rot) {
      u = rot_unitary<N>(s) * u;
      continue;
    }
    const int n = chunk_count(s, dt);
    const double h = s.duration / n;
    for (int k = 0; k < n; ++k) u = chunk_unitary<N>(s, (k + 0.5) * h, h, sch.frame) * u;
  }
  return u;
}

// ---- prepared and ideal states -------------------------------------

inline Vec<2> plus_state() {
  Vec<2> v;
  v[0] = v[1] = 1 / std::sqrt(2.0);
  return v;
}

inline Vec<4> plus_plus_state() { return kron(plus_state(), plus_state()); }

// ideal single-qubit gate output on |+>: relative phase gamma_B
inline Vec<2> single_gate_target(double gamma_b) {
  Vec<2> v;
  v[0] = std::exp(cplx(0, -0.5 * gamma_b)) / std::sqrt(2.0);
  v[1] = std::exp(cplx(0, 0.5 * gamma_b)) / std::sqrt(2.0);
  return v;
}

// ideal conditional gate output on |+>|+> for signed phase dgamma
inline Vec<4> conditional_gate_target(double dgamma) {
  const cplx em = 0.5 * std::exp(cplx(0, -2 * dgamma));
  const cplx ep = 0.5 * std::exp(cplx(0, 2 * dgamma));
  Vec<4> v;
  v[0] = em;
  v[1] = ep;
  v[2] = ep;
  v[3] = em;
  return v;
}

// maximally entangled output shared by the dynamic and fast gates
inline Vec<4> entangler_target() {
  const cplx g = 0.5 * std::exp(cplx(0, -pi / 4));
  Vec<4> v;
  v[0] = g;
  v[1] = g * iu;
  v[2] = g * iu;
  v[3] = g;
  return v;
}

}  // namespace geogate
