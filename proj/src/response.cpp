#include "cqed/response.hpp"

#include <cmath>

namespace cqed {

Jacobian jacobian(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive) {
  const cplx I(0.0, 1.0);
  const cplx kerr(d.gamma_c4, d.K_c);
  const cplx a = fp.alpha_R;
  const cplx ac = std::conj(a);
  const cplx Pp = fp.P_plusR;
  const cplx Ppc = std::conj(Pp);
  const double Pz = fp.P_z;
  const double g = fp.g_eff;
  const double delta = fp.delta_eff;

  Jacobian J;
  J.W = -I * drive.Delta_pc + d.gamma_c + 2.0 * kerr * fp.E_c;
  J.V_c = kerr * a * a;

  Mat5& m = J.entries;
  m.setZero();
  m(0, 0) = J.W;
  m(0, 1) = J.V_c;
  m(1, 0) = std::conj(J.V_c);
  m(1, 1) = std::conj(J.W);
  m(2, 2) = 1.0 / d.T1;
  m(3, 3) = cplx(1.0 / d.T2, delta);
  m(4, 4) = cplx(1.0 / d.T2, -delta);

  Mat5 v = Mat5::Zero();
  v(0, 4) = 1.0;
  v(1, 3) = -1.0;
  v(2, 0) = 2.0 * Pp;
  v(2, 1) = -2.0 * Ppc;
  v(2, 3) = 2.0 * a;
  v(2, 4) = -2.0 * ac;
  v(3, 1) = Pz;
  v(3, 2) = ac;
  v(4, 0) = -Pz;
  v(4, 2) = -a;
  m += (I * g) * v;
  return J;
}

Susceptibility susceptibility(const Jacobian& J, double omega) {
  Susceptibility s;
  s.omega = omega;
  Mat5 shifted = J.entries;
  for (int i = 0; i < 5; ++i) shifted(i, i) -= cplx(0.0, omega);
  s.chi = invert_pivoted(shifted, &s.condition);
  if (!(s.condition <= 1e14)) {
    throw Error(ErrorCode::singular, "J - i omega is numerically singular (condition number above 1e14)");
  }
  s.chi_cc = s.chi.topLeftCorner<2, 2>();
  return s;
}

cplx transmission(const FixedPoint& fp, double S_p, const DerivedParams& d) {
  if (!(S_p > 0.0)) throw Error(ErrorCode::invalid_argument, "transmission undefined without a drive (S_p <= 0)");
  const double b_in = std::sqrt(S_p / (2.0 * d.gamma_c1));
  return cplx(0.0, -1.0) * std::sqrt(2.0 * d.gamma_c2) * std::polar(1.0, -d.phi_c2) * fp.alpha_R / b_in;
}

ImdGains imd_gains(const Mat2& chi_cc, const DerivedParams& d) {
  const double scale = 2.0 * std::sqrt(d.gamma_c1 * d.gamma_c2);
  const cplx r00 = -scale * std::polar(1.0, -d.phi_c2) * chi_cc(0, 0);
  const cplx r10 = scale * std::polar(1.0, d.phi_c2) * chi_cc(1, 0);
  return {std::norm(r00), std::norm(r10)};
}

ImdGains imd_gains_at(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive, double omega) {
  return imd_gains(susceptibility(jacobian(fp, d, drive), omega).chi_cc, d);
}

}  // namespace cqed
