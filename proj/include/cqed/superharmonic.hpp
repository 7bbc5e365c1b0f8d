#pragma once

#include "cqed/params.hpp"
#include "cqed/steadystate.hpp"

namespace cqed {

inline constexpr int kMaxShrOrder = 8;

/// Resonance omega_a ~ n omega_p. drive.Delta_1 is ignored; Delta_n is used.
struct ShrConfig {
  int n = 1;
  DriveConfig drive;
  DerivedParams derived;

  void validate() const;
};

/// round(omega_a / omega_p) clamped to [1, 8].
int nearest_shr_order(double omega_a, double omega_p);

/// Argument 4 g1 omega_f sqrt(E) / (omega_p omega_Delta) of the coupling Bessel factor.
double shr_bessel_argument(double E, const DerivedParams& d, double omega_p);

/// g_n = g1 J_{1-n}(x). Sign is kept; only g_n^2 enters the dynamics.
double effective_coupling(int n, double E, const DerivedParams& d, double omega_p);

/// n omega_p - omega_a
double detuning_n(int n, double omega_p, double omega_a);

cplx upsilon_ba_n(int n, double E, const DerivedParams& d, double omega_p);

/// Self-consistent fixed points with g_n re-evaluated at every trial E.
/// Stability reuses the primary Jacobian with (g_n(E_c), Delta_n).
SolveResult solve_shr(const ShrConfig& cfg, Branch branch = Branch::ground,
                      const ScanSettings& scan = kDefaultScan);

}  // namespace cqed
