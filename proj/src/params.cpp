#include "cqed/params.hpp"

#include <cmath>
#include <limits>

namespace cqed {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::config, what);
}

}  // namespace

void PhysicalConfig::validate() const {
  require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c must be positive");
  require(std::isfinite(omega_Delta) && omega_Delta > 0.0, "omega_Delta must be positive");
  // g = 0 is accepted as the decoupled-cavity reference.
  require(std::isfinite(g) && g >= 0.0, "g must be non-negative");
  require(gamma_c1 > 0.0 && gamma_c2 > 0.0, "gamma_c1 and gamma_c2 must be positive");
  require(gamma_c3 >= 0.0, "gamma_c3 must be non-negative");
  require(K_c >= 0.0 && gamma_c4 >= 0.0, "K_c and gamma_c4 must be non-negative");
  require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive");
  if (!t1_law || !t2_law) {
    require(gamma_q1.has_value() && *gamma_q1 > 0.0,
            "gamma_q1 must be positive when no T1/T2 law is given");
    require(gamma_q2.has_value() && *gamma_q2 >= 0.0,
            "gamma_q2 must be non-negative when no T1/T2 law is given");
  }
  if (t1_law) require(t1_law->base_ns > 0.0 && t1_law->flux_coeff_ns >= 0.0, "invalid t1_law");
  if (t2_law) {
    require(t2_law->base_rate_per_ns > 0.0 && t2_law->flux_coeff >= 0.0, "invalid t2_law");
  }
}

double bose_occupation(double omega, double temperature) {
  if (!(temperature > 0.0)) throw Error(ErrorCode::invalid_argument, "temperature must be positive");
  const double x = si::hbar * omega * 1e9 / (si::k_B * temperature);
  return 1.0 / std::expm1(x);
}

double thermal_polarization(double n0) { return -1.0 / (2.0 * n0 + 1.0); }

DerivedParams derive(const PhysicalConfig& c, double omega_f) {
  if (!(c.temperature > 0.0)) throw Error(ErrorCode::config, "temperature must be positive");
  if (c.omega_Delta == 0.0) throw Error(ErrorCode::config, "omega_Delta = 0 leaves theta undefined");
  if (!std::isfinite(omega_f)) throw Error(ErrorCode::invalid_argument, "omega_f must be finite");

  DerivedParams d;
  d.omega_f = omega_f;
  d.theta = std::atan2(c.omega_Delta, omega_f);
  d.omega_a = std::hypot(omega_f, c.omega_Delta);
  const double ratio = omega_f / c.omega_Delta;
  d.beta_f = std::sqrt(1.0 + ratio * ratio);
  d.g1 = c.g / d.beta_f;
  d.n0 = bose_occupation(d.omega_a, c.temperature);
  d.P0 = thermal_polarization(d.n0);

  if (c.t1_law) {
    d.T1 = c.t1_law->base_ns * (1.0 + c.t1_law->flux_coeff_ns * std::abs(omega_f));
  } else {
    d.T1 = -d.P0 / *c.gamma_q1;
  }
  if (c.t2_law) {
    const double rate = c.t2_law->base_rate_per_ns *
                        (1.0 + c.t2_law->flux_coeff * std::abs(omega_f) / d.omega_a);
    d.T2 = 1.0 / rate;
  } else {
    d.T2 = -d.P0 / (0.5 * *c.gamma_q1 + *c.gamma_q2);
  }

  d.gamma_c = c.gamma_c1 + c.gamma_c2 + c.gamma_c3;
  d.omega_c = c.omega_c;
  d.omega_Delta = c.omega_Delta;
  d.K_c = c.K_c;
  d.gamma_c1 = c.gamma_c1;
  d.gamma_c2 = c.gamma_c2;
  d.gamma_c3 = c.gamma_c3;
  d.gamma_c4 = c.gamma_c4;
  d.phi_c1 = c.phi_c1;
  d.phi_c2 = c.phi_c2;
  d.bloch_siegert = c.bloch_siegert;
  return d;
}

double photon_flux(double power_dbm, double omega_p) {
  const double watts = 1e-3 * std::pow(10.0, power_dbm / 10.0);
  // photons/s = P / (hbar * omega[rad/s]); then per ns.
  return watts / (si::hbar * omega_p * 1e9) * 1e-9;
}

double power_to_drive(double power_dbm, double omega_p, double gamma_c1) {
  if (!(omega_p > 0.0) || !(gamma_c1 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "power_to_drive needs omega_p > 0 and gamma_c1 > 0");
  }
  return 2.0 * gamma_c1 * photon_flux(power_dbm, omega_p);
}

double drive_to_power(double S_p, double omega_p, double gamma_c1) {
  if (!(omega_p > 0.0) || !(gamma_c1 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "drive_to_power needs omega_p > 0 and gamma_c1 > 0");
  }
  if (S_p <= 0.0) return -std::numeric_limits<double>::infinity();
  const double flux_per_ns = S_p / (2.0 * gamma_c1);
  const double watts = flux_per_ns * 1e9 * si::hbar * omega_p * 1e9;
  return 10.0 * std::log10(watts / 1e-3);
}

double flux_to_omega_f(double flux_ratio, double I_cc) {
  if (!(I_cc > 0.0)) throw Error(ErrorCode::invalid_argument, "I_cc must be positive");
  return 2.0 * I_cc * si::flux_quantum / si::hbar * (flux_ratio - 0.5) * 1e-9;
}

DriveConfig make_drive(const DerivedParams& d, double omega_p, double S_p, Branch branch) {
  if (!(S_p >= 0.0)) throw Error(ErrorCode::invalid_argument, "S_p must be non-negative");
  double cavity = d.omega_c;
  if (d.bloch_siegert) cavity += branch == Branch::ground ? -d.omega_bs() : d.omega_bs();
  DriveConfig drive;
  drive.omega_p = omega_p;
  drive.S_p = S_p;
  drive.Delta_pc = omega_p - cavity;
  drive.Delta_1 = omega_p - d.omega_a;
  return drive;
}

}  // namespace cqed
