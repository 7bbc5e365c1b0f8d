#pragma once

#include <optional>

#include "cqed/types.hpp"

namespace cqed {

/// T1 = base * (1 + flux_coeff * |omega_f|), omega_f in rad/ns.
struct T1Law {
  double base_ns = 0.0;
  double flux_coeff_ns = 0.0;
};

/// 1/T2 = base_rate * (1 + flux_coeff * |omega_f| / omega_a).
struct T2Law {
  double base_rate_per_ns = 0.0;
  double flux_coeff = 0.0;
};

/// Raw device description in internal units (rad/ns, ns, kelvin).
struct PhysicalConfig {
  double omega_c = 0.0;
  double K_c = 0.0;
  double gamma_c1 = 0.0;
  double gamma_c2 = 0.0;
  double gamma_c3 = 0.0;
  double gamma_c4 = 0.0;
  double phi_c1 = 0.0;
  double phi_c2 = 0.0;
  double phi_c3 = 0.0;
  double phi_c4 = 0.0;
  double omega_Delta = 0.0;
  double g = 0.0;
  std::optional<double> gamma_q1;
  std::optional<double> gamma_q2;
  double temperature = 0.0;
  std::optional<T1Law> t1_law;
  std::optional<T2Law> t2_law;
  // Adds the counter-rotating frequency shift -/+ omega_BS to the cavity
  // frequency seen by the ground/excited branch.
  bool bloch_siegert = false;

  /// Throws Error(config) when an invariant is violated.
  void validate() const;
};

/// Everything downstream code needs at one flux point. Carries a copy of the
/// cavity parameters so solvers take (derived, drive) only.
struct DerivedParams {
  double omega_f = 0.0;
  double theta = 0.0;
  double omega_a = 0.0;
  double beta_f = 1.0;
  double g1 = 0.0;
  double n0 = 0.0;
  double P0 = -1.0;
  double T1 = 0.0;
  double T2 = 0.0;
  double gamma_c = 0.0;

  double omega_c = 0.0;
  double omega_Delta = 0.0;
  double K_c = 0.0;
  double gamma_c1 = 0.0;
  double gamma_c2 = 0.0;
  double gamma_c3 = 0.0;
  double gamma_c4 = 0.0;
  double phi_c1 = 0.0;
  double phi_c2 = 0.0;
  bool bloch_siegert = false;

  /// Equilibrium polarization seen by a branch: P0 for ground, -P0 for excited.
  double polarization(Branch b) const { return b == Branch::ground ? P0 : -P0; }
  /// g1^2 / (omega_c + omega_a)
  double omega_bs() const { return g1 * g1 / (omega_c + omega_a); }
};

struct DriveConfig {
  double omega_p = 0.0;
  double S_p = 0.0;
  double Delta_pc = 0.0;
  double Delta_1 = 0.0;
};

DerivedParams derive(const PhysicalConfig& config, double omega_f);

/// Bose occupation at angular frequency omega [rad/ns] and temperature [K].
double bose_occupation(double omega, double temperature);

double thermal_polarization(double n0);

/// Drive strength S_p = 2 gamma_c1 |b_in|^2 from a port power in dBm.
double power_to_drive(double power_dbm, double omega_p, double gamma_c1);
/// Inverse of power_to_drive.
double drive_to_power(double S_p, double omega_p, double gamma_c1);
/// Photon flux |b_in|^2 in photons/ns.
double photon_flux(double power_dbm, double omega_p);

/// omega_f [rad/ns] from the normalized flux Phi_e/Phi_0 and circulating current [A].
double flux_to_omega_f(double flux_ratio, double I_cc);

/// Builds the rotating-frame detunings for a pump tone. With bloch_siegert set
/// the cavity frequency is shifted by -omega_BS (ground) or +omega_BS (excited).
DriveConfig make_drive(const DerivedParams& d, double omega_p, double S_p,
                       Branch branch = Branch::ground);

}  // namespace cqed
