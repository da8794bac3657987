#pragma once
// Collapse-operator sets shared by the density-matrix reference and the
// stochastic unraveling. Rates are folded into the operators: a channel
// with strength Gamma carries L = sqrt(Gamma) * P.

#include <stdexcept>
#include <vector>

#include "geogate/linalg.hpp"
#include "geogate/schedule.hpp"

namespace geogate {

template <int N>
struct Channel {
  Mat<N> op;      // L
  Mat<N> op_dag;  // L^dag
  Mat<N> dag_op;  // L^dag L

  explicit Channel(const Mat<N>& l) : op(l), op_dag(dagger(l)), dag_op(op_dag * l) {}
};

template <int N>
struct NoiseModel {
  std::vector<Channel<N>> channels;

  bool empty() const { return channels.empty(); }
  NoiseModel& add(const Mat<N>& l) {
    channels.emplace_back(l);
    return *this;
  }
};

namespace detail {
inline void check_kappa(double kappa) {
  if (kappa < 0) throw std::domain_error("noise: kappa must be non-negative");
}
}  // namespace detail

inline Mat<4> embed_on_qubit(const Mat<2>& op, int target) {
  if (target != 0 && target != 1) throw std::domain_error("embed_on_qubit: target must be 0 or 1");
  return target == 0 ? kron(op, identity<2>()) : kron(identity<2>(), op);
}

// presets below take kappa = sqrt(Gamma); kappa = 0 yields no channels

inline NoiseModel<2> axis_noise_1q(Axis ax, double kappa) {
  detail::check_kappa(kappa);
  NoiseModel<2> nm;
  if (kappa > 0) nm.add(kappa * pauli_axis(ax));
  return nm;
}

inline NoiseModel<2> isotropic_1q(double kappa) {
  detail::check_kappa(kappa);
  NoiseModel<2> nm;
  if (kappa > 0)
    for (Axis ax : {Axis::x, Axis::y, Axis::z}) nm.add(kappa * pauli_axis(ax));
  return nm;
}

inline NoiseModel<4> axis_noise_2q_both(Axis ax, double kappa) {
  detail::check_kappa(kappa);
  NoiseModel<4> nm;
  if (kappa > 0)
    for (int q : {0, 1}) nm.add(kappa * embed_on_qubit(pauli_axis(ax), q));
  return nm;
}

inline NoiseModel<4> isotropic_2q_both(double kappa) {
  detail::check_kappa(kappa);
  NoiseModel<4> nm;
  if (kappa > 0)
    for (int q : {0, 1})
      for (Axis ax : {Axis::x, Axis::y, Axis::z}) nm.add(kappa * embed_on_qubit(pauli_axis(ax), q));
  return nm;
}

inline NoiseModel<4> isotropic_on_qubit(int target, double kappa) {
  detail::check_kappa(kappa);
  NoiseModel<4> nm;
  if (kappa > 0)
    for (Axis ax : {Axis::x, Axis::y, Axis::z}) nm.add(kappa * embed_on_qubit(pauli_axis(ax), target));
  return nm;
}

}  // namespace geogate
