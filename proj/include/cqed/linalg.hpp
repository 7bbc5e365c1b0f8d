#pragma once

#include <array>

#include <Eigen/Core>

#include "cqed/types.hpp"

namespace cqed {

using Mat5 = Eigen::Matrix<cplx, 5, 5>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;

/// Inverse by Gaussian elimination with partial pivoting, carried out in
/// extended precision. Also reports the 1-norm condition number.
/// Throws Error(singular) when a pivot vanishes.
Mat5 invert_pivoted(const Mat5& a, double* condition = nullptr);

/// Eigenvalues sorted by (real, imag).
std::array<cplx, 5> eigenvalues(const Mat5& a);

double norm_inf(const Mat5& a);

}  // namespace cqed
