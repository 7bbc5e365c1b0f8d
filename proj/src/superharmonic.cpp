#include "cqed/superharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqed/specfun.hpp"

namespace cqed {

namespace {

void check_order(int n) {
  if (n < 1 || n > kMaxShrOrder) {
    throw Error(ErrorCode::invalid_argument, "superharmonic order must be in 1..8, got " + std::to_string(n));
  }
}

}  // namespace

void ShrConfig::validate() const {
  check_order(n);
  if (!(drive.omega_p > 0.0)) throw Error(ErrorCode::invalid_argument, "omega_p must be positive");
  if (!(drive.S_p >= 0.0)) throw Error(ErrorCode::invalid_argument, "S_p must be non-negative");
}

int nearest_shr_order(double omega_a, double omega_p) {
  if (!(omega_p > 0.0)) throw Error(ErrorCode::invalid_argument, "omega_p must be positive");
  const double r = std::round(omega_a / omega_p);
  return static_cast<int>(std::clamp(r, 1.0, static_cast<double>(kMaxShrOrder)));
}

double shr_bessel_argument(double E, const DerivedParams& d, double omega_p) {
  if (!(E >= 0.0)) throw Error(ErrorCode::invalid_argument, "photon number must be non-negative");
  return 4.0 * d.g1 * d.omega_f * std::sqrt(E) / (omega_p * d.omega_Delta);
}

double effective_coupling(int n, double E, const DerivedParams& d, double omega_p) {
  check_order(n);
  return d.g1 * specfun::bessel_j(1 - n, shr_bessel_argument(E, d, omega_p));
}

double detuning_n(int n, double omega_p, double omega_a) { return n * omega_p - omega_a; }

cplx upsilon_ba_n(int n, double E, const DerivedParams& d, double omega_p) {
  return backaction(effective_coupling(n, E, d, omega_p), detuning_n(n, omega_p, d.omega_a), d.T1, d.T2, E);
}

SolveResult solve_shr(const ShrConfig& cfg, Branch branch, const ScanSettings& scan) {
  cfg.validate();
  const DerivedParams& d = cfg.derived;
  const double omega_p = cfg.drive.omega_p;
  const int n = cfg.n;
  auto coupling = [&](double E) { return effective_coupling(n, E, d, omega_p); };
  SolveResult out = solve_selfconsistent(d, cfg.drive, branch, coupling, detuning_n(n, omega_p, d.omega_a), n, scan);
  for (const FixedPoint& fp : out.points) {
    const double x = std::abs(shr_bessel_argument(fp.E_c, d, omega_p));
    if (x > 30.0) {
      out.diagnostics.push_back("Bessel argument " + std::to_string(x) + " exceeds 30 at E_c = " +
                                std::to_string(fp.E_c));
    }
  }
  return out;
}

}  // namespace cqed
