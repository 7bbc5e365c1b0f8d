#include "cqed/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "cqed/types.hpp"

namespace cqed::specfun {

namespace {

// Below this argument the ascending series is used; cancellation there is
// negligible and it avoids the normalization sum for tiny x.
constexpr double kSeriesCrossover = 1.0;

double ascending_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  double sum = term;
  const double q = half * half;
  for (int k = 0; k < 200; ++k) {
    term *= -q / ((k + 1.0) * (n + k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1} started well above
// max(n, x), normalized with J_0 + 2 sum_k J_{2k} = 1. x > 0 here.
double miller(int n, double x) {
  const double top = std::max<double>(n, x);
  int m = static_cast<int>(top + 20.0 + std::sqrt(40.0 * top));
  m += m % 2;
  constexpr double kBig = 1e250;
  double next = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k, arbitrary scale
  double even_sum = 0.0;
  double result = 0.0;
  const double two_over_x = 2.0 / x;
  for (int k = m; k > 0; --k) {
    const double prev = k * two_over_x * cur - next;
    next = cur;
    cur = prev;  // now J_{k-1}
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      next /= kBig;
      even_sum /= kBig;
      result /= kBig;
    }
    if (k - 1 == n) result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) even_sum += cur;
  }
  const double norm = 2.0 * even_sum + cur;
  return result / norm;
}

}  // namespace

double bessel_j(int l, double x) {
  if (std::abs(l) > kMaxBesselOrder) {
    throw Error(ErrorCode::invalid_argument,
                "Bessel order " + std::to_string(l) + " exceeds |l| <= 64");
  }
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "Bessel argument must be finite");

  const int n = std::abs(l);
  // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
  int sign = 1;
  if (l < 0 && (n % 2 == 1)) sign = -sign;
  if (x < 0.0 && (n % 2 == 1)) sign = -sign;
  const double ax = std::abs(x);

  if (ax == 0.0) return n == 0 ? 1.0 : 0.0;
  const double value = ax < kSeriesCrossover ? ascending_series(n, ax) : miller(n, ax);
  return sign * value;
}

}  // namespace cqed::specfun
