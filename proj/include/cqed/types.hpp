#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqed {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// CODATA 2018 exact / recommended values, SI units.
namespace si {
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double h = 6.62607015e-34;       // J s
inline constexpr double k_B = 1.380649e-23;       // J/K
inline constexpr double e = 1.602176634e-19;      // C
inline constexpr double flux_quantum = h / (2.0 * e);  // Wb
}  // namespace si

/// Internal units: time in ns, angular frequencies and rates in rad/ns.
inline constexpr double ghz_to_rad_per_ns(double f_ghz) { return kTwoPi * f_ghz; }
inline constexpr double rad_per_ns_to_ghz(double w) { return w / kTwoPi; }

enum class ErrorCode {
  invalid_argument = 1,
  config = 2,
  solver = 3,
  io = 4,
  singular = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Which qubit state the cavity back-action follows. The excited branch is
/// modeled by flipping the sign of the equilibrium polarization.
enum class Branch { ground, excited };

inline const char* to_string(Branch b) { return b == Branch::ground ? "ground" : "excited"; }

enum class Stability { stable, unstable, marginal };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
  }
  return "?";
}

/// Non-fatal solver messages, attached to results instead of thrown.
using Diagnostics = std::vector<std::string>;

}  // namespace cqed
