#pragma once

#include <vector>

#include "cqed/params.hpp"

namespace cqed {

/// Dressed state |n, sign> of the Jaynes-Cummings ladder; energies in rad/ns.
struct DressedLevel {
  int n = 0;
  int sign = 1;
  double energy = 0.0;
  double theta_n = 0.0;
  double omega_n = 0.0;
};

struct LevelSet {
  double ground = 0.0;
  std::vector<DressedLevel> levels;  // n ascending, minus before plus
  Diagnostics diagnostics;
};

struct BSCorrection {
  double omega_BS = 0.0;
  double omega_BS0 = 0.0;
};

struct LinearResonances {
  double omega_minus = 0.0;  // ground branch
  double omega_plus = 0.0;   // excited branch
  Diagnostics diagnostics;
};

LevelSet jc_levels(const DerivedParams& d, int n_max);

BSCorrection bs_correction(const DerivedParams& d);

/// Levels with the counter-rotating second-order shifts. The closed form
/// pairs the upper sign with the qubit-like state only for omega_a > omega_c.
LevelSet bs_levels(const DerivedParams& d, int n_max);

/// omega_c -/+ omega_BS +/- g1^2/Delta. Throws Error(invalid_argument) at Delta = 0.
LinearResonances linear_resonances(const DerivedParams& d);

}  // namespace cqed
