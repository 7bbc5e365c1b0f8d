#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cqed/params.hpp"
#include "cqed/types.hpp"

namespace cqed {

/// Weak-nonlinear (Duffing) coefficients: the cavity amplitude obeys
/// (i(Omega0 + Omega2 E) + Gamma0 + Gamma2 E) alpha = -i sqrt(2 gamma_c1) b_in.
struct ResponseCoeffs {
  double Omega0 = 0.0;
  double Omega2 = 0.0;
  double Gamma0 = 0.0;
  double Gamma2 = 0.0;
};

/// One steady state of the mean-field equations in the pump frame.
///
/// For the excited branch P_z carries the sign of the flipped polarization,
/// so P_z / polarization(branch) is in (0, 1] on both branches.
struct FixedPoint {
  cplx alpha_R{};
  double E_c = 0.0;
  double P_z = 0.0;
  cplx P_plusR{};
  Branch branch = Branch::ground;
  Stability stability = Stability::stable;
  // Coupling and qubit detuning the point was solved with: (g1, Delta_1) for
  // the primary resonance, (g_n(E_c), Delta_n) near a superharmonic one.
  double g_eff = 0.0;
  double delta_eff = 0.0;
  int order = 1;

  bool stable() const { return stability == Stability::stable; }
};

struct BistabilityOnset {
  bool possible = false;
  double E_o = 0.0;
  double Omega0_o = 0.0;
  double S_p_o = 0.0;
};

struct SolveResult {
  std::vector<FixedPoint> points;
  Diagnostics diagnostics;
};

/// Solver settings for the self-consistent scan.
struct ScanSettings {
  int points = 512;
  double E_min = 1e-12;
  double E_max = 1e8;
  double rel_tol = 1e-13;
};

inline constexpr ScanSettings kDefaultScan{};

/// Qubit back-action term
///   g^2 T2 (i - delta T2) / (1 + delta^2 T2^2 + 4 g^2 T1 T2 E).
cplx backaction(double g, double delta, double T1, double T2, double E);

/// D(E) = -i Delta_pc + gamma_c + (i K_c + gamma_c4) E + i Upsilon(E) P0eff.
/// Fixed points satisfy E |D(E)|^2 = S_p.
cplx cavity_denominator(const DerivedParams& d, const DriveConfig& drive, Branch branch, double g,
                        double delta, double E);

/// Signed residual E |D(E)|^2 - S_p evaluated with the point's own coupling.
double fixed_point_residual(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive);

/// |residual| <= 1e-10 max(S_p, gamma_c^3).
bool residual_ok(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive);

/// Throws Error(solver) when |Delta_1 T2| < 1e-6, where the expansion in E
/// breaks down.
ResponseCoeffs response_coeffs(const DerivedParams& d, const DriveConfig& drive, Branch branch);

/// Real roots of [(Omega0 + Omega2 E)^2 + (Gamma0 + Gamma2 E)^2] E = S_p,
/// ascending. Double (triple) roots are returned as two (three) equal entries.
std::vector<double> solve_cubic(const ResponseCoeffs& c, double S_p);

/// Builds the full fixed point for a root E of the cubic.
FixedPoint fixed_point_from_E(double E, const DerivedParams& d, const DriveConfig& drive, Branch branch);

/// Fixed points of the full (non-expanded) back-action. g_eff and delta_eff
/// default to g1 and Delta_1.
SolveResult solve_selfconsistent(const DerivedParams& d, const DriveConfig& drive, Branch branch,
                                 std::optional<double> g_eff = std::nullopt,
                                 std::optional<double> delta_eff = std::nullopt,
                                 const ScanSettings& scan = kDefaultScan);

/// Coupling that may depend on the cavity photon number.
using CouplingLaw = std::function<double(double E)>;

/// General form used by the superharmonic solver: the coupling is
/// re-evaluated at every trial E.
SolveResult solve_selfconsistent(const DerivedParams& d, const DriveConfig& drive, Branch branch,
                                 const CouplingLaw& coupling, double delta, int order,
                                 const ScanSettings& scan = kDefaultScan);

/// Qubit polarization and coherence slaved to a cavity amplitude.
void qubit_state(cplx alpha, double g, double delta, double T1, double T2, double P0eff,
                 double* P_z, cplx* P_plusR);

/// Linear stability from the Jacobian spectrum: stable iff every eigenvalue
/// has positive real part, marginal when min Re is within 1e-9 gamma_c of 0.
Stability classify_stability(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive);

BistabilityOnset onset_of_bistability(const ResponseCoeffs& c);

}  // namespace cqed
