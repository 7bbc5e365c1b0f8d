#pragma once

#include "cqed/linalg.hpp"
#include "cqed/params.hpp"
#include "cqed/steadystate.hpp"

namespace cqed {

/// Linearized dynamics d(dx)/dt = -J dx in the basis
/// (a_R, a_R^dag, sigma_z, sigma_+R, sigma_+R^dag).
struct Jacobian {
  Mat5 entries = Mat5::Zero();
  cplx W{};
  cplx V_c{};
};

struct Susceptibility {
  Mat5 chi = Mat5::Zero();
  Mat2 chi_cc = Mat2::Zero();
  double omega = 0.0;
  double condition = 0.0;
};

struct ImdGains {
  double G_s = 0.0;
  double G_i = 0.0;
};

/// Coupling and detuning are taken from fp.g_eff and fp.delta_eff.
Jacobian jacobian(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive);

/// chi = (J - i omega)^{-1}. Throws Error(singular) when the condition number
/// exceeds 1e14.
Susceptibility susceptibility(const Jacobian& J, double omega);

/// b_2^out / b_1^in. Throws Error(invalid_argument) for S_p <= 0.
cplx transmission(const FixedPoint& fp, double S_p, const DerivedParams& d);

/// Signal and idler gain for a single tone at omega_p + omega.
ImdGains imd_gains(const Mat2& chi_cc, const DerivedParams& d);

/// Convenience: Jacobian, susceptibility and gains at one offset.
ImdGains imd_gains_at(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive, double omega);

}  // namespace cqed
