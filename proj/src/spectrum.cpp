#include "cqed/spectrum.hpp"

#include <cmath>

namespace cqed {

namespace {

void check_n_max(int n_max) {
  if (n_max < 0) throw Error(ErrorCode::invalid_argument, "n_max must be non-negative");
}

}  // namespace

LevelSet jc_levels(const DerivedParams& d, int n_max) {
  check_n_max(n_max);
  const double Delta = d.omega_c - d.omega_a;
  LevelSet out;
  out.ground = 0.5 * Delta;
  for (int n = 0; n <= n_max; ++n) {
    const double coupling = 2.0 * d.g1 * std::sqrt(n + 1.0);
    const double omega_n = std::hypot(Delta, coupling);
    const double theta_n = std::atan2(coupling, -Delta);
    for (int sign : {-1, 1}) {
      out.levels.push_back({n, sign, d.omega_c * (n + 1) + 0.5 * sign * omega_n, theta_n, omega_n});
    }
  }
  return out;
}

BSCorrection bs_correction(const DerivedParams& d) {
  const double g2 = d.g1 * d.g1;
  const double cot = d.omega_f / d.omega_Delta;
  return {g2 / (d.omega_c + d.omega_a), -g2 * (1.0 / (d.omega_c + d.omega_a) + cot * cot / d.omega_c)};
}

LevelSet bs_levels(const DerivedParams& d, int n_max) {
  LevelSet out = jc_levels(d, n_max);
  const BSCorrection bs = bs_correction(d);
  const double Delta = d.omega_c - d.omega_a;
  const double g2 = d.g1 * d.g1;
  if (d.g1 > 0.2 * (d.omega_c + d.omega_a)) {
    out.diagnostics.push_back("g1/(omega_c+omega_a) > 0.2: Bloch-Siegert perturbation theory unreliable");
  }
  out.ground += bs.omega_BS0;
  for (DressedLevel& level : out.levels) {
    const double m = level.n + 1.0;
    level.energy = m * (d.omega_c + level.sign * bs.omega_BS) +
                   level.sign * std::sqrt(0.25 * Delta * Delta + m * g2) + bs.omega_BS0;
  }
  return out;
}

LinearResonances linear_resonances(const DerivedParams& d) {
  const double Delta = d.omega_c - d.omega_a;
  if (Delta == 0.0) throw Error(ErrorCode::invalid_argument, "linear resonances undefined at omega_a = omega_c");
  LinearResonances r;
  const double bs = d.omega_bs();
  const double pull = d.g1 * d.g1 / Delta;
  r.omega_minus = d.omega_c - bs + pull;
  r.omega_plus = d.omega_c + bs - pull;
  if (d.g1 > 0.3 * std::abs(Delta)) {
    r.diagnostics.push_back("g1/|Delta| > 0.3: dispersive resonances near degeneracy");
  }
  return r;
}

}  // namespace cqed
