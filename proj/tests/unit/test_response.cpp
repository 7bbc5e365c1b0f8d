#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cqed/response.hpp"
#include "oracles/charpoly.hpp"
#include "oracles/reference_device.hpp"

using namespace cqed;

namespace {

double op_norm_bound(const Mat5& m) {
  // Frobenius norm bounds the operator 2-norm from above.
  return m.norm();
}

FixedPoint undriven(const DerivedParams& d, Branch b = Branch::ground) {
  FixedPoint fp;
  fp.branch = b;
  fp.P_z = d.polarization(b);
  fp.g_eff = d.g1;
  return fp;
}

DerivedParams bare(double K = 0.0) {
  PhysicalConfig c = oracle::reference_config();
  c.g = 0.0;
  c.K_c = K;
  return derive(c, ghz_to_rad_per_ns(8.1));
}

}  // namespace

TEST_CASE("decoupled undriven Jacobian is diagonal") {
  const DerivedParams d = bare();
  const DriveConfig drive = make_drive(d, d.omega_c + 1e-3, 0.0);
  FixedPoint fp = undriven(d);
  fp.delta_eff = drive.Delta_1;
  const Jacobian J = jacobian(fp, d, drive);
  Mat5 expect = Mat5::Zero();
  expect(0, 0) = cplx(d.gamma_c, -drive.Delta_pc);
  expect(1, 1) = cplx(d.gamma_c, drive.Delta_pc);
  expect(2, 2) = 1.0 / d.T1;
  expect(3, 3) = cplx(1.0 / d.T2, drive.Delta_1);
  expect(4, 4) = cplx(1.0 / d.T2, -drive.Delta_1);
  CHECK((J.entries - expect).norm() == 0.0);

  const Susceptibility s = susceptibility(J, 0.0);
  CHECK(std::abs(s.chi_cc(0, 0) - 1.0 / cplx(d.gamma_c, -drive.Delta_pc)) < 1e-12 * std::abs(s.chi_cc(0, 0)));
  CHECK(std::abs(s.chi_cc(1, 1) - 1.0 / cplx(d.gamma_c, drive.Delta_pc)) < 1e-12 * std::abs(s.chi_cc(1, 1)));
  CHECK(s.chi_cc(0, 1) == cplx{});
}

TEST_CASE("cavity block eigenvalues: trace and determinant") {
  const double K = 1e-6;
  const DerivedParams d = bare(K);
  const DriveConfig drive = make_drive(d, d.omega_c + 2.0 * d.gamma_c, 3e-4);
  const SolveResult r = solve_selfconsistent(d, drive, Branch::ground);
  REQUIRE_FALSE(r.points.empty());
  const Jacobian J = jacobian(r.points[0], d, drive);
  const auto ev = eigenvalues(J.entries);
  // with g1 = 0 the qubit eigenvalues are known; the other two belong to the cavity
  std::vector<cplx> cavity;
  for (const cplx& l : ev) {
    const bool qubit = std::abs(l - 1.0 / d.T1) < 1e-12 || std::abs(l - cplx(1.0 / d.T2, drive.Delta_1)) < 1e-9 ||
                       std::abs(l - cplx(1.0 / d.T2, -drive.Delta_1)) < 1e-9;
    if (!qubit) cavity.push_back(l);
  }
  REQUIRE(cavity.size() == 2);
  const cplx sum = cavity[0] + cavity[1];
  const cplx prod = cavity[0] * cavity[1];
  CHECK(std::abs(sum - (J.W + std::conj(J.W))) < 1e-10 * d.gamma_c);
  CHECK(std::abs(prod - (std::norm(J.W) - std::norm(J.V_c))) < 1e-9 * d.gamma_c * d.gamma_c);
}

TEST_CASE("Jacobian spectrum: characteristic polynomial oracle and conjugation symmetry") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const oracle::Draw draw = oracle::random_draw(rng);
    const SolveResult r = solve_selfconsistent(draw.derived, draw.drive, draw.branch);
    for (const FixedPoint& fp : r.points) {
      const Jacobian J = jacobian(fp, draw.derived, draw.drive);
      const auto ev = eigenvalues(J.entries);
      const auto ref = oracle::charpoly_roots(J.entries);
      const double scale = std::max(norm_inf(J.entries), 1e-3);
      // match each eigenvalue to its nearest oracle root
      for (const cplx& l : ev) {
        double best = INFINITY;
        for (const auto& z : ref) best = std::min(best, std::abs(l - z));
        CHECK(best < 1e-7 * scale);
      }
      // conjugate multiset
      for (const cplx& l : ev) {
        double best = INFINITY;
        for (const cplx& m : ev) best = std::min(best, std::abs(std::conj(l) - m));
        CHECK(best < 1e-10 * scale);
      }
      ++checked;
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("susceptibility inverse identity on random fixed points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> offset(-10.0, 10.0);
  for (int i = 0; i < 300; ++i) {
    const oracle::Draw draw = oracle::random_draw(rng);
    const SolveResult r = solve_selfconsistent(draw.derived, draw.drive, draw.branch);
    for (const FixedPoint& fp : r.points) {
      const Jacobian J = jacobian(fp, draw.derived, draw.drive);
      const double omega = offset(rng) * draw.derived.gamma_c;
      const Susceptibility s = susceptibility(J, omega);
      Mat5 shifted = J.entries;
      for (int k = 0; k < 5; ++k) shifted(k, k) -= cplx(0.0, omega);
      CHECK(op_norm_bound(shifted * s.chi - Mat5::Identity()) < 1e-10);
    }
  }
}

TEST_CASE("cavity block matches the closed form without the qubit") {
  const double K = 2e-6;
  const DerivedParams d = bare(K);
  for (double detune : {-1.0, 0.5, 2.5}) {
    const DriveConfig drive = make_drive(d, d.omega_c + detune * d.gamma_c, 2e-4);
    const SolveResult r = solve_selfconsistent(d, drive, Branch::ground);
    for (const FixedPoint& fp : r.points) {
      const Jacobian J = jacobian(fp, d, drive);
      for (double w : {-3.0, 0.0, 0.4, 7.0}) {
        const double omega = w * d.gamma_c;
        const cplx I(0.0, 1.0);
        const cplx A = J.W - I * omega;
        const cplx B = std::conj(J.W) - I * omega;
        const cplx det = A * B - std::norm(J.V_c);
        if (std::abs(det) < 1e-6 * d.gamma_c * d.gamma_c) continue;
        const Susceptibility s = susceptibility(J, omega);
        const cplx want[2][2] = {{B / det, -J.V_c / det}, {-std::conj(J.V_c) / det, A / det}};
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) CHECK(std::abs(s.chi_cc(a, b) - want[a][b]) <= 1e-12 * std::abs(want[0][0]));
      }
    }
  }
}

TEST_CASE("transmission") {
  PhysicalConfig c = oracle::reference_config();
  c.g = 0.0;
  const DerivedParams d = derive(c, 0.0);
  const DriveConfig on = make_drive(d, d.omega_c, 1e-7);
  const SolveResult r = solve_selfconsistent(d, on, Branch::ground);
  REQUIRE(r.points.size() == 1);
  const double peak = std::norm(transmission(r.points[0], on.S_p, d));
  CHECK(peak == doctest::Approx(4.0 * 1.1 / (2.1 * 2.1)).epsilon(1e-12));
  CHECK(peak == doctest::Approx(0.9977).epsilon(1e-4));
  // |S21|^2 = 4 gamma_c1 gamma_c2 E / S_p
  CHECK(peak == doctest::Approx(4.0 * d.gamma_c1 * d.gamma_c2 * r.points[0].E_c / on.S_p).epsilon(1e-12));

  double prev = peak;
  for (double k : {1.0, 3.0, 10.0, 100.0, 1000.0}) {
    const DriveConfig off = make_drive(d, d.omega_c + k * d.gamma_c, 1e-7);
    const double t = std::norm(transmission(solve_selfconsistent(d, off, Branch::ground).points.at(0), off.S_p, d));
    CHECK(t < prev);
    prev = t;
  }
  CHECK(prev < 1e-5);
  CHECK_THROWS_AS(transmission(r.points[0], 0.0, d), Error);
}

TEST_CASE("IMD gains without pump") {
  const DerivedParams d = derive(oracle::reference_config(), ghz_to_rad_per_ns(8.1));
  const DriveConfig drive = make_drive(d, d.omega_c + 1e-4, 0.0);
  const SolveResult r = solve_selfconsistent(d, drive, Branch::ground);
  REQUIRE(r.points.size() == 1);
  for (double w : {-5.0, 0.0, 1.0, 20.0}) {
    const double omega = w * d.gamma_c;
    const ImdGains g = imd_gains_at(r.points[0], d, drive, omega);
    CHECK(g.G_i == 0.0);
    // equals the linear transmission of a weak tone at omega_p + omega
    const DriveConfig probe = make_drive(d, drive.omega_p + omega, 1e-12);
    const SolveResult lin = solve_selfconsistent(d, probe, Branch::ground);
    const double t = std::norm(transmission(lin.points.at(0), probe.S_p, d));
    CHECK(g.G_s == doctest::Approx(t).epsilon(1e-6));
  }
}

TEST_CASE("IMD gains are phase invariant and idler symmetric") {
  PhysicalConfig c = oracle::reference_config();
  c.K_c = 1e-6;
  c.phi_c2 = 0.0;
  const DerivedParams d0 = derive(c, ghz_to_rad_per_ns(8.1));
  c.phi_c2 = 1.234;
  const DerivedParams d1 = derive(c, ghz_to_rad_per_ns(8.1));
  const DriveConfig drive = make_drive(d0, d0.omega_c + 1.5 * d0.gamma_c, 2e-4);
  const SolveResult r = solve_selfconsistent(d0, drive, Branch::ground);
  REQUIRE_FALSE(r.points.empty());
  const FixedPoint& fp = r.points[0];
  for (double w : {-2.0, 0.3, 4.0}) {
    const double omega = w * d0.gamma_c;
    const ImdGains a = imd_gains_at(fp, d0, drive, omega);
    const ImdGains b = imd_gains_at(fp, d1, drive, omega);
    CHECK(a.G_s == doctest::Approx(b.G_s).epsilon(1e-14));
    CHECK(a.G_i == doctest::Approx(b.G_i).epsilon(1e-14));
    CHECK(a.G_i > 0.0);

    const Jacobian J = jacobian(fp, d0, drive);
    const Mat2 plus = susceptibility(J, omega).chi_cc;
    const Mat2 minus = susceptibility(J, -omega).chi_cc;
    CHECK(std::abs(minus(1, 0) - std::conj(plus(0, 1))) < 1e-10 * std::abs(plus(0, 0)));
    CHECK(std::abs(minus(0, 0) - std::conj(plus(1, 1))) < 1e-10 * std::abs(plus(0, 0)));
  }
}

TEST_CASE("signal gain is a Lorentzian of half-width gamma_c without pump") {
  const DerivedParams d = bare();
  const DriveConfig drive = make_drive(d, d.omega_c, 0.0);
  const FixedPoint fp = solve_selfconsistent(d, drive, Branch::ground).points.at(0);
  const double g0 = imd_gains_at(fp, d, drive, 0.0).G_s;
  const double half = imd_gains_at(fp, d, drive, d.gamma_c).G_s;
  CHECK(half / g0 == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(imd_gains_at(fp, d, drive, -d.gamma_c).G_s / g0 == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("stable fixed points have decaying poles") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const oracle::Draw draw = oracle::random_draw(rng);
    for (const FixedPoint& fp : solve_selfconsistent(draw.derived, draw.drive, draw.branch).points) {
      const auto ev = eigenvalues(jacobian(fp, draw.derived, draw.drive).entries);
      const double min_re = std::min_element(ev.begin(), ev.end(), [](cplx a, cplx b) {
                              return a.real() < b.real();
                            })->real();
      if (fp.stable()) CHECK(min_re > 0.0);
      if (fp.stability == Stability::unstable) CHECK(min_re < 0.0);
    }
  }
}

TEST_CASE("singular probe is reported") {
  Jacobian J;
  J.entries = Mat5::Identity();
  J.entries(2, 2) = 0.0;
  CHECK_THROWS_AS(susceptibility(J, 0.0), Error);
  J.entries(2, 2) = 1e-17;
  try {
    susceptibility(J, 0.0);
    FAIL("expected a singular error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular);
  }
}
