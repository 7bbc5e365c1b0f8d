#include "cqed/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace cqed {

namespace {

using lcplx = std::complex<long double>;
using LMat5 = std::array<std::array<lcplx, 5>, 5>;

double norm_one(const Mat5& a) {
  double best = 0.0;
  for (int j = 0; j < 5; ++j) {
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

double norm_inf(const Mat5& a) {
  double best = 0.0;
  for (int i = 0; i < 5; ++i) {
    double s = 0.0;
    for (int j = 0; j < 5; ++j) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

Mat5 invert_pivoted(const Mat5& a, double* condition) {
  LMat5 m{};
  LMat5 inv{};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      m[i][j] = lcplx(a(i, j).real(), a(i, j).imag());
      inv[i][j] = i == j ? lcplx(1.0L) : lcplx(0.0L);
    }
  }

  for (int col = 0; col < 5; ++col) {
    int pivot = col;
    long double best = std::abs(m[col][col]);
    for (int r = col + 1; r < 5; ++r) {
      const long double v = std::abs(m[r][col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0L) throw Error(ErrorCode::singular, "matrix is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);

    const lcplx p = m[col][col];
    for (int r = 0; r < 5; ++r) {
      if (r == col) continue;
      const lcplx f = m[r][col] / p;
      if (f == lcplx(0.0L)) continue;
      for (int c = 0; c < 5; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }

  Mat5 out;
  for (int i = 0; i < 5; ++i) {
    const lcplx p = m[i][i];
    for (int j = 0; j < 5; ++j) {
      const lcplx v = inv[i][j] / p;
      out(i, j) = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
  }
  if (condition != nullptr) *condition = norm_one(a) * norm_one(out);
  return out;
}

std::array<cplx, 5> eigenvalues(const Mat5& a) {
  Eigen::ComplexEigenSolver<Mat5> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::solver, "eigenvalue iteration did not converge");
  }
  std::array<cplx, 5> ev;
  for (int i = 0; i < 5; ++i) ev[i] = solver.eigenvalues()(i);
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return ev;
}

}  // namespace cqed
