#pragma once

namespace cqed::specfun {

inline constexpr int kMaxBesselOrder = 64;

/// Bessel function of the first kind J_l(x) for integer order |l| <= 64.
/// Absolute error is below 1e-12 for |x| <= 50. Negative orders use
/// J_{-l}(x) = (-1)^l J_l(x). Throws cqed::Error(invalid_argument) on bad input.
double bessel_j(int l, double x);

}  // namespace cqed::specfun
