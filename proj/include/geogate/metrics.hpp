#pragma once
// Figures of merit: state fidelity, Bloch-vector fidelity estimators,
// von Neumann entropy, concurrence and entanglement of formation, plus
// the ensemble statistics (loss, jackknife errors) and the noise-strength
// threshold search built on them.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "geogate/linalg.hpp"

namespace geogate {

template <int N>
double fidelity_state(const Vec<N>& target, const Mat<N>& rho) {  // <t|rho|t>
  return std::real(inner(target, rho * target));
}

template <int N>
double trace_distance(const Mat<N>& a, const Mat<N>& b) {
  const auto es = eigh(a - b);
  double s = 0;
  for (double w : es.w) s += std::abs(w);
  return 0.5 * s;
}

// ---- pauli expectation tables and tomography ------------------------

inline std::array<double, 4> expectations_1q(const Mat<2>& rho) {
  std::array<double, 4> ex;
  for (int k = 0; k < 4; ++k) ex[k] = std::real(trace(rho * pauli_table_1q()[k]));
  return ex;
}

inline std::array<double, 16> expectations_2q(const Mat<4>& rho) {
  std::array<double, 16> ex;
  for (int k = 0; k < 16; ++k) ex[k] = std::real(trace(rho * pauli_table_2q()[k]));
  return ex;
}

inline Mat<2> rho_from_expectations(const std::array<double, 4>& ex) {
  Mat<2> rho{};
  for (int k = 0; k < 4; ++k) rho += cplx(0.5 * ex[k]) * pauli_table_1q()[k];
  return rho;
}

inline Mat<4> rho_from_expectations(const std::array<double, 16>& ex) {
  Mat<4> rho{};
  for (int k = 0; k < 16; ++k) rho += cplx(0.25 * ex[k]) * pauli_table_2q()[k];
  return rho;
}

// ---- Bloch-vector fidelity of the single gate -----------------------

// gate fidelity written on the measured Bloch vector m = (sx, sy, sz) in
// the rotating frame, for tip angle theta and loop phase gamma_b
inline double fidelity_bloch(const std::array<double, 3>& m, double theta, double gamma_b) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cg = std::cos(gamma_b), sg = std::sin(gamma_b);
  return 0.5 * (1 + ct * cg * m[0] + sg * m[1] - st * cg * m[2]);
}

// same estimator fed with lab-frame components: undo the tip rotation
// about y before applying the rotating-frame formula
inline double fidelity_bloch_lab(const std::array<double, 3>& m, double theta, double gamma_b) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const std::array<double, 3> r = {m[0] * ct + m[2] * st, m[1], -m[0] * st + m[2] * ct};
  return fidelity_bloch(r, theta, gamma_b);
}

// ---- entropy and entanglement ---------------------------------------

namespace detail {
// negatives clamp to zero (statistical estimates are PSD only within tolerance)
template <int N>
std::array<double, N> clamped_spectrum(const Mat<N>& rho) {
  const auto es = eigh(rho);
  std::array<double, N> w{};
  double sum = 0;
  for (int i = 0; i < N; ++i) {
    w[i] = std::max(es.w[i], 0.0);
    sum += w[i];
  }
  for (double& x : w) x /= sum;  // renormalize after clamping
  return w;
}
}  // namespace detail

template <int N>
double entropy(const Mat<N>& rho, double base) {
  const auto w = detail::clamped_spectrum(rho);
  double s = 0;
  for (double x : w)
    if (x > 0) s -= x * std::log(x);
  return s / std::log(base);
}

// concurrence of a two-qubit density matrix
inline double concurrence(const Mat<4>& rho) {
  const Mat<4> yy = pauli_table_2q()[10];  // kron(sy, sy)
  Mat<4> conj_rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) conj_rho(i, j) = std::conj(rho(i, j));
  const Mat<4> rho_tilde = yy * conj_rho * yy;
  const Mat<4> sq = herm_sqrt(rho);
  const auto es = eigh(sq * rho_tilde * sq);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(es.w[i], 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline double binary_entropy(double x) {
  double s = 0;
  if (x > 0) s -= x * std::log2(x);
  if (x < 1) s -= (1 - x) * std::log2(1 - x);
  return s;
}

inline double eof_from_concurrence(double c) {
  if (c < 0 || c > 1 + 1e-12) throw std::domain_error("eof: concurrence outside [0, 1]");
  c = std::min(c, 1.0);
  return binary_entropy(0.5 * (1 + std::sqrt(1 - c * c)));
}

inline double eof(const Mat<4>& rho) { return eof_from_concurrence(concurrence(rho)); }

// ---- ensemble statistics --------------------------------------------

struct MeanSe {
  double mean = 0;
  double se = 0;
};

// loss 1 - |<t|psi_i>|^2 averaged over trajectories
template <int N>
MeanSe loss_fidelity(const std::vector<Vec<N>>& states, const Vec<N>& target) {
  const int n = (int)states.size();
  if (n == 0) throw std::domain_error("loss_fidelity: no states");
  double s = 0;
  for (const auto& v : states) s += 1.0 - std::norm(inner(target, v));
  const double mean = s / n;
  if (n == 1) return {mean, 0.0};
  double s2 = 0;
  for (const auto& v : states) {
    const double d = 1.0 - std::norm(inner(target, v)) - mean;
    s2 += d * d;
  }
  return {mean, std::sqrt(s2 / ((double)n * (n - 1)))};
}

template <int N>
Mat<N> mean_projector(const std::vector<Vec<N>>& states) {
  if (states.empty()) throw std::domain_error("mean_projector: no states");
  Mat<N> acc{};
  for (const auto& v : states) acc += outer(v, v);
  return (1.0 / (double)states.size()) * acc;
}

// delete-one-block jackknife over contiguous trajectory blocks for any
// statistic of the mean projector
template <int N>
MeanSe jackknife(const std::vector<Vec<N>>& states,
                 const std::function<double(const Mat<N>&)>& stat, int blocks = 10) {
  const int n = (int)states.size();
  if (n == 0) throw std::domain_error("jackknife: no states");
  const Mat<N> total_sum = (double)n * mean_projector(states);
  const double full = stat((1.0 / n) * total_sum);
  const int nb = std::min(blocks, n);
  if (nb < 2) return {full, 0.0};

  std::vector<double> theta(nb);
  int start = 0;
  for (int b = 0; b < nb; ++b) {
    const int len = n / nb + (b < n % nb ? 1 : 0);
    Mat<N> block{};
    for (int i = start; i < start + len; ++i) block += outer(states[i], states[i]);
    theta[b] = stat((1.0 / (n - len)) * (total_sum - block));
    start += len;
  }
  double tbar = 0;
  for (double t : theta) tbar += t;
  tbar /= nb;
  double s2 = 0;
  for (double t : theta) s2 += (t - tbar) * (t - tbar);
  return {full, std::sqrt((double)(nb - 1) / nb * s2)};
}

// ---- threshold search ------------------------------------------------

struct ThresholdResult {
  double gamma_thres = 0;  // bracket midpoint
  double lo = 0, hi = 0;   // final bracket
  int evals = 0;
};

// entanglement counts as extinguished when C <= max(1e-4, 2 se_C)
inline bool entanglement_dead(double c, double se_c) { return c <= std::max(1e-4, 2 * se_c); }

// bisect for the noise strength where the concurrence of the gate output
// hits zero; eval(gamma) returns (concurrence, se). The bracket shrinks
// until it is within rel_tol of its midpoint.
inline ThresholdResult find_gamma_threshold(
    const std::function<std::pair<double, double>(double)>& eval, double lo, double hi,
    double rel_tol = 0.02) {
  if (!(lo >= 0) || !(hi > lo)) throw std::domain_error("find_gamma_threshold: bad bracket");
  ThresholdResult out;
  auto dead = [&](double g) {
    const auto [c, se] = eval(g);
    ++out.evals;
    return entanglement_dead(c, se);
  };
  if (dead(lo)) throw std::runtime_error("find_gamma_threshold: already dead at bracket start");
  if (!dead(hi)) throw std::runtime_error("find_gamma_threshold: still alive at bracket end");
  while (hi - lo > rel_tol * 0.5 * (hi + lo)) {
    const double mid = 0.5 * (lo + hi);
    (dead(mid) ? hi : lo) = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.gamma_thres = 0.5 * (lo + hi);
  return out;
}

}  // namespace geogate
