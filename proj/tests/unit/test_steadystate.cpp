#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cqed/steadystate.hpp"
#include "oracles/cusp.hpp"
#include "oracles/reference_device.hpp"

using namespace cqed;

namespace {

// Cavity-only device with a Kerr term.
DerivedParams kerr_cavity(double K) {
  PhysicalConfig c = oracle::reference_config();
  c.g = 0.0;
  c.K_c = K;
  return derive(c, ghz_to_rad_per_ns(8.1));
}

// Device with short bath-limited T1/T2 where the expansion in E is accurate.
DerivedParams weak_device() {
  PhysicalConfig c = oracle::reference_config();
  c.t1_law.reset();
  c.t2_law.reset();
  c.g = ghz_to_rad_per_ns(0.05);
  c.gamma_q1 = 0.1;
  c.gamma_q2 = 0.05;
  return derive(c, ghz_to_rad_per_ns(0.9));
}

double cubic(const ResponseCoeffs& c, double S_p, long double E) {
  const long double w = c.Omega0 + c.Omega2 * E;
  const long double g = c.Gamma0 + c.Gamma2 * E;
  return static_cast<double>((w * w + g * g) * E - S_p);
}

// Independent root finder: dense log scan plus bisection in long double.
std::vector<double> scan_roots(const ResponseCoeffs& c, double S_p, double E_max) {
  std::vector<double> roots;
  long double prev = 0.0L;
  double f_prev = -S_p;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const long double E = 1e-9L * std::pow(static_cast<long double>(E_max) / 1e-9L, static_cast<long double>(i) / n);
    const double f = cubic(c, S_p, E);
    if ((f < 0) != (f_prev < 0)) {
      long double lo = prev, hi = E;
      for (int k = 0; k < 200; ++k) {
        const long double mid = 0.5L * (lo + hi);
        if ((cubic(c, S_p, mid) < 0) == (f_prev < 0)) lo = mid; else hi = mid;
      }
      roots.push_back(static_cast<double>(0.5L * (lo + hi)));
    }
    prev = E;
    f_prev = f;
  }
  return roots;
}

}  // namespace

TEST_CASE("bare cavity steady state is a Lorentzian") {
  const DerivedParams d = kerr_cavity(0.0);
  for (double detune : {0.0, 0.7, -3.0}) {
    const DriveConfig drive = make_drive(d, d.omega_c + detune * d.gamma_c, 1e-6);
    const SolveResult r = solve_selfconsistent(d, drive, Branch::ground);
    REQUIRE(r.points.size() == 1);
    const double expect = drive.S_p / (drive.Delta_pc * drive.Delta_pc + d.gamma_c * d.gamma_c);
    CHECK(r.points[0].E_c == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r.points[0].stable());
    CHECK(residual_ok(r.points[0], d, drive));
  }
}

TEST_CASE("undriven system sits at E = 0") {
  const DerivedParams d = derive(oracle::reference_config(), ghz_to_rad_per_ns(8.1));
  const DriveConfig drive = make_drive(d, d.omega_c, 0.0);
  const SolveResult r = solve_selfconsistent(d, drive, Branch::ground);
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].E_c == 0.0);
  CHECK(r.points[0].alpha_R == cplx{});
  CHECK(r.points[0].P_z == doctest::Approx(d.P0).epsilon(1e-15));
  CHECK(solve_cubic(ResponseCoeffs{1, 1, 1, 1}, 0.0) == std::vector<double>{0.0});
  CHECK_THROWS_AS(solve_cubic(ResponseCoeffs{1, 1, 1, 1}, -1.0), Error);
}

TEST_CASE("response coefficients are the Taylor expansion of D(E)") {
  const DerivedParams d = weak_device();
  for (double dp : {0.0, 3e-4, -2e-3}) {
    for (Branch b : {Branch::ground, Branch::excited}) {
      const DriveConfig drive = make_drive(d, d.omega_c + dp, 1e-9);
      const ResponseCoeffs c = response_coeffs(d, drive, b);
      const cplx D0 = cavity_denominator(d, drive, b, d.g1, drive.Delta_1, 0.0);
      CHECK(D0.real() == doctest::Approx(c.Gamma0).epsilon(1e-12));
      CHECK(D0.imag() == doctest::Approx(c.Omega0).epsilon(1e-12));
      // central difference around 0 via symmetric E is not available; use
      // Richardson on the forward difference
      const double h = 1e-4;
      auto deriv = [&](double step) {
        return (cavity_denominator(d, drive, b, d.g1, drive.Delta_1, step) - D0) / step;
      };
      const cplx slope = 2.0 * deriv(h / 2) - deriv(h);
      CHECK(slope.real() == doctest::Approx(c.Gamma2).epsilon(1e-6));
      CHECK(slope.imag() == doctest::Approx(c.Omega2).epsilon(1e-6));
    }
  }
}

TEST_CASE("expansion refuses |Delta_1 T2| below 1e-6") {
  const DerivedParams d = weak_device();
  DriveConfig drive = make_drive(d, d.omega_a, 1e-6);
  CHECK_THROWS_AS(response_coeffs(d, drive, Branch::ground), Error);
}

TEST_CASE("cubic roots agree with a scan and bisection oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked_three = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    ResponseCoeffs c;
    c.Gamma0 = 1.0 + 0.5 * u(rng);
    c.Omega2 = u(rng) > 0 ? 1.0 : -1.0;
    c.Gamma2 = 0.3 * std::abs(u(rng));
    c.Omega0 = -c.Omega2 * (1.0 + 6.0 * std::abs(u(rng)));
    const double S_p = std::pow(10.0, 2.0 * u(rng) + 0.5);
    const std::vector<double> got = solve_cubic(c, S_p);
    const std::vector<double> want = scan_roots(c, S_p, 1e4);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
    if (got.size() == 3) ++checked_three;
  }
  CHECK(checked_three > 40);
}

TEST_CASE("onset of bistability is a triple root") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ResponseCoeffs c;
    c.Gamma0 = 0.2 + u(rng);
    c.Omega2 = (u(rng) > 0.5 ? 1.0 : -1.0) * (0.1 + u(rng));
    c.Gamma2 = 0.95 * u(rng) * std::abs(c.Omega2) / std::sqrt(3.0);
    const BistabilityOnset o = onset_of_bistability(c);
    REQUIRE(o.possible);
    c.Omega0 = o.Omega0_o;
    const double a3 = c.Omega2 * c.Omega2 + c.Gamma2 * c.Gamma2;
    const double a2 = 2.0 * (c.Omega0 * c.Omega2 + c.Gamma0 * c.Gamma2);
    const double a1 = c.Omega0 * c.Omega0 + c.Gamma0 * c.Gamma0;
    // S'(E_o) = S''(E_o) = 0 and S(E_o) = S_p_o
    CHECK(o.E_o == doctest::Approx(-a2 / (3.0 * a3)).epsilon(1e-10));
    CHECK(a2 * a2 == doctest::Approx(3.0 * a1 * a3).epsilon(1e-10));
    CHECK(((a3 * o.E_o + a2) * o.E_o + a1) * o.E_o == doctest::Approx(o.S_p_o).epsilon(1e-10));
    const std::vector<double> roots = solve_cubic(c, o.S_p_o);
    REQUIRE(roots.size() == 3);
    for (double r : roots) CHECK(r == doctest::Approx(o.E_o).epsilon(1e-6));
  }
}

TEST_CASE("bistability needs Gamma2 below |Omega2|/sqrt3") {
  CHECK_FALSE(onset_of_bistability(ResponseCoeffs{0.0, 1.0, 1.0, 0.6}).possible);
  CHECK_FALSE(onset_of_bistability(ResponseCoeffs{0.0, 0.0, 1.0, 0.0}).possible);
  CHECK(onset_of_bistability(ResponseCoeffs{0.0, -1.0, 1.0, 0.5}).possible);
}

TEST_CASE("bistable window opens past the onset detuning") {
  const ResponseCoeffs base{0.0, 1.0, 1.0, 0.1};
  const BistabilityOnset o = onset_of_bistability(base);
  const double lo = o.Omega0_o - 0.5 * std::abs(o.Omega0_o);
  const double hi = o.Omega0_o + 0.5 * std::abs(o.Omega0_o);
  ResponseCoeffs above = base;
  above.Omega0 = oracle::most_bistable_detuning(base, 1.01 * o.S_p_o, lo, hi);
  CHECK(oracle::cubic_discriminant(above, 1.01 * o.S_p_o) > 0);
  CHECK(solve_cubic(above, 1.01 * o.S_p_o).size() == 3);
  ResponseCoeffs below = base;
  below.Omega0 = oracle::most_bistable_detuning(base, 0.99 * o.S_p_o, lo, hi);
  CHECK(oracle::cubic_discriminant(below, 0.99 * o.S_p_o) < 0);
  CHECK(solve_cubic(below, 0.99 * o.S_p_o).size() == 1);
}

TEST_CASE("self-consistent solver matches the cubic where the expansion holds") {
  const DerivedParams d = weak_device();
  for (double dp : {0.0, 2e-4, -5e-4}) {
    for (Branch b : {Branch::ground, Branch::excited}) {
      DriveConfig drive = make_drive(d, d.omega_c + dp, 1.0);
      const cplx D0 = cavity_denominator(d, drive, b, d.g1, drive.Delta_1, 0.0);
      drive.S_p = 1e-3 * std::norm(D0);
      const SolveResult sc = solve_selfconsistent(d, drive, b);
      const std::vector<double> cub = solve_cubic(response_coeffs(d, drive, b), drive.S_p);
      REQUIRE(sc.points.size() == 1);
      REQUIRE(cub.size() == 1);
      CHECK(sc.points[0].E_c == doctest::Approx(cub[0]).epsilon(1e-5));
      const FixedPoint fp = fixed_point_from_E(cub[0], d, drive, b);
      CHECK(std::abs(fp.alpha_R - sc.points[0].alpha_R) < 1e-4 * std::abs(fp.alpha_R));
    }
  }
}

TEST_CASE("qubit state slaved to the cavity") {
  double Pz = 0.0;
  cplx Pp{};
  qubit_state(cplx(0.0, 0.0), 0.1, 0.5, 100.0, 10.0, -1.0, &Pz, &Pp);
  CHECK(Pz == -1.0);
  CHECK(Pp == cplx{});
  // strong drive saturates the qubit
  qubit_state(cplx(1e3, 0.0), 0.1, 0.5, 100.0, 10.0, -1.0, &Pz, &Pp);
  CHECK(std::abs(Pz) < 1e-4);
  // excited branch carries the flipped polarization
  const DerivedParams d = derive(oracle::reference_config(), ghz_to_rad_per_ns(8.1));
  const DriveConfig drive = make_drive(d, d.omega_c, 1e-6, Branch::excited);
  const SolveResult r = solve_selfconsistent(d, drive, Branch::excited);
  REQUIRE_FALSE(r.points.empty());
  CHECK(r.points[0].P_z > 0.0);
  CHECK(r.points[0].P_z / d.polarization(Branch::excited) <= 1.0);
}

TEST_CASE("Kerr bistability: middle branch unstable, outer branches stable") {
  const double K = 1e-6;
  const DerivedParams d = kerr_cavity(K);
  const double Delta = 3.0 * d.gamma_c;
  const double E_mid = 2.0 * Delta / (3.0 * K);
  const double S_p = E_mid * (std::pow(-Delta + K * E_mid, 2) + d.gamma_c * d.gamma_c);
  const DriveConfig drive = make_drive(d, d.omega_c + Delta, S_p);
  const SolveResult r = solve_selfconsistent(d, drive, Branch::ground);
  REQUIRE(r.points.size() == 3);
  CHECK(r.points[0].stability == Stability::stable);
  CHECK(r.points[1].stability == Stability::unstable);
  CHECK(r.points[2].stability == Stability::stable);
  for (const FixedPoint& fp : r.points) CHECK(residual_ok(fp, d, drive));

  // Direct time integration of the cavity equation from each root, nudged.
  const cplx I(0.0, 1.0);
  const cplx drive_term = -I * std::sqrt(2.0 * d.gamma_c1) * std::sqrt(S_p / (2.0 * d.gamma_c1));
  auto rhs = [&](cplx a) { return -(-I * Delta + d.gamma_c + I * K * std::norm(a)) * a + drive_term; };
  for (std::size_t k = 0; k < 3; ++k) {
    cplx a = r.points[k].alpha_R * (1.0 + 1e-3);
    const double dt = 0.02 / d.gamma_c;
    for (int step = 0; step < 1500; ++step) {
      const cplx k1 = rhs(a), k2 = rhs(a + 0.5 * dt * k1), k3 = rhs(a + 0.5 * dt * k2), k4 = rhs(a + dt * k3);
      a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const double drift = std::abs(std::norm(a) - r.points[k].E_c) / r.points[k].E_c;
    if (k == 1) {
      CHECK(drift > 0.1);
    } else {
      CHECK(drift < 1e-3);
    }
  }
}

TEST_CASE("random draws: residual bound, odd root count") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1500; ++i) {
    const oracle::Draw draw = oracle::random_draw(rng);
    const SolveResult r = solve_selfconsistent(draw.derived, draw.drive, draw.branch);
    CHECK(r.diagnostics.empty());
    bool coincident = false;
    for (const FixedPoint& fp : r.points) {
      CHECK(fp.E_c >= 0.0);
      CHECK(residual_ok(fp, draw.derived, draw.drive));
      coincident = coincident || fp.stability == Stability::marginal;
    }
    if (!coincident) CHECK(r.points.size() % 2 == 1);
    CHECK(std::is_sorted(r.points.begin(), r.points.end(),
                         [](const FixedPoint& a, const FixedPoint& b) { return a.E_c < b.E_c; }));
  }
}

TEST_CASE("unphysical drive reports the scan bound") {
  const DerivedParams d = kerr_cavity(0.0);
  const DriveConfig drive = make_drive(d, d.omega_c, 1e30);
  const SolveResult r = solve_selfconsistent(d, drive, Branch::ground);
  CHECK(r.points.empty());
  CHECK(r.diagnostics.size() == 1);
}
