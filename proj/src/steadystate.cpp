#include "cqed/steadystate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqed/linalg.hpp"
#include "cqed/response.hpp"

namespace cqed {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

cplx drive_term(const DerivedParams& d, double S_p) {
  // -i sqrt(2 gamma_c1) e^{i phi_c1} b_in with b_in real and positive.
  if (S_p <= 0.0) return {0.0, 0.0};
  const double b_in = std::sqrt(S_p / (2.0 * d.gamma_c1));
  return cplx(0.0, -1.0) * std::sqrt(2.0 * d.gamma_c1) * std::polar(1.0, d.phi_c1) * b_in;
}

double cubic_value(const double a[4], double E) { return ((a[3] * E + a[2]) * E + a[1]) * E + a[0]; }
double cubic_slope(const double a[4], double E) { return (3.0 * a[3] * E + 2.0 * a[2]) * E + a[1]; }

void mark_coincident(std::vector<FixedPoint>& points) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i].E_c;
    const double b = points[i + 1].E_c;
    if (std::abs(b - a) <= 1e-6 * std::max(std::abs(a), std::abs(b))) {
      points[i].stability = Stability::marginal;
      points[i + 1].stability = Stability::marginal;
    }
  }
}

FixedPoint make_fixed_point(double E, const cplx& D, double g, double delta, int order,
                            const DerivedParams& d, const DriveConfig& drive, Branch branch) {
  FixedPoint fp;
  fp.E_c = E;
  fp.branch = branch;
  fp.g_eff = g;
  fp.delta_eff = delta;
  fp.order = order;
  fp.alpha_R = drive.S_p > 0.0 ? drive_term(d, drive.S_p) / D : cplx{};
  qubit_state(fp.alpha_R, g, delta, d.T1, d.T2, d.polarization(branch), &fp.P_z, &fp.P_plusR);
  fp.stability = classify_stability(fp, d, drive);
  return fp;
}

}  // namespace

cplx backaction(double g, double delta, double T1, double T2, double E) {
  const double g2 = g * g;
  const double den = 1.0 + delta * delta * T2 * T2 + 4.0 * g2 * T1 * T2 * E;
  return g2 * T2 * cplx(-delta * T2, 1.0) / den;
}

cplx cavity_denominator(const DerivedParams& d, const DriveConfig& drive, Branch branch, double g,
                        double delta, double E) {
  const cplx I(0.0, 1.0);
  return -I * drive.Delta_pc + d.gamma_c + cplx(d.gamma_c4, d.K_c) * E +
         I * backaction(g, delta, d.T1, d.T2, E) * d.polarization(branch);
}

double fixed_point_residual(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive) {
  const cplx D = cavity_denominator(d, drive, fp.branch, fp.g_eff, fp.delta_eff, fp.E_c);
  return fp.E_c * std::norm(D) - drive.S_p;
}

bool residual_ok(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive) {
  const double r = fixed_point_residual(fp, d, drive);
  const double bound = 1e-10 * std::max(drive.S_p, d.gamma_c * d.gamma_c * d.gamma_c);
  return std::isfinite(r) && std::abs(r) <= bound;
}

void qubit_state(cplx alpha, double g, double delta, double T1, double T2, double P0eff,
                 double* P_z, cplx* P_plusR) {
  const double base = 1.0 + delta * delta * T2 * T2;
  const double den = base + 4.0 * g * g * T1 * T2 * std::norm(alpha);
  *P_z = P0eff * base / den;
  *P_plusR = cplx(0.0, -1.0) * g * T2 * std::conj(alpha) * cplx(1.0, -delta * T2) * P0eff / den;
}

ResponseCoeffs response_coeffs(const DerivedParams& d, const DriveConfig& drive, Branch branch) {
  const double D1 = drive.Delta_1;
  if (!(std::abs(D1 * d.T2) >= 1e-6)) {
    throw Error(ErrorCode::solver,
                "|Delta_1 T2| < 1e-6: weak-nonlinear expansion invalid, use the self-consistent solver");
  }
  const double P = d.polarization(branch);
  const double g2 = d.g1 * d.g1;
  const double z1 = 1.0 / (D1 * d.T1);
  const double z2 = 1.0 / (D1 * d.T2);
  const double lorentz = 1.0 + z2 * z2;
  const double quartic = 4.0 * g2 * g2 / (D1 * D1 * D1) / (z1 * lorentz * lorentz);

  ResponseCoeffs c;
  c.Omega0 = -drive.Delta_pc - g2 / D1 * P / lorentz;
  c.Omega2 = d.K_c + quartic * z2 * P;
  c.Gamma0 = d.gamma_c - g2 / D1 * z2 * P / lorentz;
  c.Gamma2 = d.gamma_c4 + quartic * z2 * z2 * P;
  return c;
}

std::vector<double> solve_cubic(const ResponseCoeffs& c, double S_p) {
  if (!(S_p >= 0.0)) throw Error(ErrorCode::invalid_argument, "S_p must be non-negative");
  if (S_p == 0.0) return {0.0};

  const double a[4] = {-S_p, c.Omega0 * c.Omega0 + c.Gamma0 * c.Gamma0,
                       2.0 * (c.Omega0 * c.Omega2 + c.Gamma0 * c.Gamma2),
                       c.Omega2 * c.Omega2 + c.Gamma2 * c.Gamma2};
  if (a[3] == 0.0) {
    if (a[1] > 0.0) return {S_p / a[1]};
    return {};
  }

  const double b = a[2] / a[3];
  const double cc = a[1] / a[3];
  const double dd = a[0] / a[3];
  const double shift = b / 3.0;
  const double p = cc - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + dd;
  const double scale = std::max({std::abs(shift), std::sqrt(std::abs(cc)), std::cbrt(std::abs(dd))});

  std::vector<double> t;
  bool coincident = false;
  const double p3 = 4.0 * p * p * p;
  const double q2 = 27.0 * q * q;
  const double disc = p3 + q2;  // < 0: three distinct real roots
  if (std::abs(p) <= 1e-12 * scale * scale && std::abs(q) <= 1e-12 * scale * scale * scale) {
    t = {0.0, 0.0, 0.0};
    coincident = true;
  } else if (std::abs(disc) <= 1e-10 * std::max(std::abs(p3), q2)) {
    const double single = 3.0 * q / p;
    const double twin = -1.5 * q / p;
    t = {single, twin, twin};
    coincident = true;
  } else if (disc < 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) t.push_back(r * std::cos(phi - 2.0 * kPi * k / 3.0));
  } else if (p < 0.0) {
    const double r = std::sqrt(-p / 3.0);
    const double arg = -1.5 * std::abs(q) / p * std::sqrt(-3.0 / p);
    t.push_back(-2.0 * std::copysign(1.0, q) * r * std::cosh(std::acosh(arg) / 3.0));
  } else if (p > 0.0) {
    const double r = std::sqrt(p / 3.0);
    t.push_back(-2.0 * r * std::sinh(std::asinh(1.5 * q / p * std::sqrt(3.0 / p)) / 3.0));
  } else {
    t.push_back(std::cbrt(-q));
  }

  std::vector<double> roots;
  for (double ti : t) {
    double E = ti - shift;
    if (!coincident) {
      const double slope = cubic_slope(a, E);
      if (slope != 0.0) {
        const double polished = E - cubic_value(a, E) / slope;
        if (std::isfinite(polished) && std::abs(cubic_value(a, polished)) <= std::abs(cubic_value(a, E))) {
          E = polished;
        }
      }
    }
    roots.push_back(E);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

FixedPoint fixed_point_from_E(double E, const DerivedParams& d, const DriveConfig& drive, Branch branch) {
  const ResponseCoeffs c = response_coeffs(d, drive, branch);
  const cplx D(c.Gamma0 + c.Gamma2 * E, c.Omega0 + c.Omega2 * E);
  return make_fixed_point(E, D, d.g1, drive.Delta_1, 1, d, drive, branch);
}

SolveResult solve_selfconsistent(const DerivedParams& d, const DriveConfig& drive, Branch branch,
                                 std::optional<double> g_eff, std::optional<double> delta_eff,
                                 const ScanSettings& scan) {
  const double g = g_eff.value_or(d.g1);
  return solve_selfconsistent(
      d, drive, branch, [g](double) { return g; }, delta_eff.value_or(drive.Delta_1), 1, scan);
}

SolveResult solve_selfconsistent(const DerivedParams& d, const DriveConfig& drive, Branch branch,
                                 const CouplingLaw& coupling, double delta, int order,
                                 const ScanSettings& scan) {
  if (!(drive.S_p >= 0.0)) throw Error(ErrorCode::invalid_argument, "S_p must be non-negative");
  SolveResult out;

  auto denominator = [&](double E) {
    return cavity_denominator(d, drive, branch, coupling(E), delta, E);
  };
  auto residual = [&](double E) { return E * std::norm(denominator(E)) - drive.S_p; };

  if (drive.S_p == 0.0) {
    out.points.push_back(make_fixed_point(0.0, denominator(0.0), coupling(0.0), delta, order, d, drive, branch));
    return out;
  }

  std::vector<double> roots;
  auto bisect = [&](double lo, double hi, double f_lo) {
    double f_hi_abs = std::abs(residual(hi));
    double f_lo_abs = std::abs(f_lo);
    for (int it = 0; it < 400 && hi - lo > scan.rel_tol * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = residual(mid);
      if (fm == 0.0) return mid;
      if ((fm < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = fm;
        f_lo_abs = std::abs(fm);
      } else {
        hi = mid;
        f_hi_abs = std::abs(fm);
      }
    }
    return f_lo_abs <= f_hi_abs ? lo : hi;
  };

  const double ratio = std::log(scan.E_max / scan.E_min) / (scan.points - 1);
  double prev_E = 0.0;
  double prev_f = -drive.S_p;
  for (int k = 0; k < scan.points; ++k) {
    const double E = k == scan.points - 1 ? scan.E_max : scan.E_min * std::exp(ratio * k);
    const double f = residual(E);
    if (!std::isfinite(f)) {
      out.diagnostics.push_back("non-finite residual during scan at E = " + std::to_string(E));
      continue;
    }
    if (f == 0.0) {
      roots.push_back(E);
    } else if (prev_f != 0.0 && ((f < 0.0) != (prev_f < 0.0))) {
      roots.push_back(bisect(prev_E, E, prev_f));
    }
    prev_E = E;
    prev_f = f;
  }
  if (prev_f < 0.0) {
    out.diagnostics.push_back("scan bound hit: residual still negative at E = 1e8 photons (unphysical drive)");
  }

  for (double E : roots) {
    out.points.push_back(make_fixed_point(E, denominator(E), coupling(E), delta, order, d, drive, branch));
  }
  mark_coincident(out.points);
  return out;
}

Stability classify_stability(const FixedPoint& fp, const DerivedParams& d, const DriveConfig& drive) {
  const Jacobian J = jacobian(fp, d, drive);
  const auto ev = eigenvalues(J.entries);
  double min_re = std::numeric_limits<double>::infinity();
  for (const cplx& l : ev) min_re = std::min(min_re, l.real());
  if (std::abs(min_re) < 1e-9 * d.gamma_c) return Stability::marginal;
  return min_re > 0.0 ? Stability::stable : Stability::unstable;
}

BistabilityOnset onset_of_bistability(const ResponseCoeffs& c) {
  BistabilityOnset o;
  const double W2 = std::abs(c.Omega2);
  o.possible = c.Omega2 != 0.0 && c.Gamma2 < W2 / kSqrt3;
  if (!o.possible) return o;
  const double gap = W2 - kSqrt3 * c.Gamma2;
  const double sq = c.Omega2 * c.Omega2 + c.Gamma2 * c.Gamma2;
  o.E_o = 2.0 * c.Gamma0 / (kSqrt3 * gap);
  o.Omega0_o = -c.Gamma0 * (c.Omega2 / W2) * (4.0 * c.Gamma2 * W2 + kSqrt3 * sq) /
               (c.Omega2 * c.Omega2 - 3.0 * c.Gamma2 * c.Gamma2);
  o.S_p_o = 8.0 / (3.0 * kSqrt3) * c.Gamma0 * c.Gamma0 * c.Gamma0 * sq / (gap * gap * gap);
  return o;
}

}  // namespace cqed
