// Locates the noise strength where the dynamic two-qubit gate stops
// producing entanglement, using the reduced-cost fast mode, and prints
// the scale-free duration product gamma_thres * tau.

#include <cmath>
#include <cstdio>

#include "geogate/metrics.hpp"
#include "geogate/scenarios.hpp"

using namespace geogate;

int main() {
  const auto* s = find_scenario("fig3a");
  const auto& curve = s->curves[0];

  PointConfig pc;
  pc.mode = RunMode::fast;  // dt 2e-3, 200 trajectories
  pc.dt = 2e-3;
  pc.n_traj = 200;

  int idx = 0;
  const auto eval = [&](double gamma) {
    const auto p = run_curve_point(curve, gamma, pc, idx++);
    std::printf("  gamma = %.4f  C = %.4f +/- %.4f\n", gamma, p.concurrence, p.se_concurrence);
    return std::make_pair(p.concurrence, p.se_concurrence);
  };

  std::printf("bisecting entanglement death of '%s'\n", s->name.c_str());
  const auto tr = find_gamma_threshold(eval, 1.0, 3.0);
  const double tau = curve.schedule.total_time();
  std::printf("\ngamma_thres = %.3f in [%.3f, %.3f] after %d ensembles\n", tr.gamma_thres, tr.lo,
              tr.hi, tr.evals);
  std::printf("gamma_thres * tau = %.4f  (4 pi / 75 = %.4f)\n", tr.gamma_thres * tau,
              4 * pi / 75);
  return 0;
}
