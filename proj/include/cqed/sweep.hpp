#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cqed/params.hpp"

namespace cqed {

enum class Task { transmission_map, imd, bistability, shr_map, spectrum };

const char* to_string(Task t);
Task task_from_string(const std::string& name);

enum class AxisName { omega_f, omega_p, power_dBm };
enum class Spacing { linear, log };

const char* to_string(AxisName a);

/// Frequencies on an axis are ordinary frequencies in GHz; power in dBm.
struct Axis {
  AxisName name = AxisName::omega_f;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  Spacing spacing = Spacing::linear;

  double value(int i) const;
};

enum class BranchFilter { ground, excited, combined };

const char* to_string(BranchFilter b);
BranchFilter branch_filter_from_string(const std::string& name);

struct GridSpec {
  Task task = Task::transmission_map;
  std::vector<Axis> axes;
  // Values for quantities without an axis. omega_p defaults to omega_c.
  double omega_f_ghz = 0.0;
  std::optional<double> omega_p_ghz;
  double power_dbm = -112.0;
  int shr_order = 0;  // 0: nearest order round(omega_a / omega_p)
  double signal_offset_khz = 50.0;
  int n_max = 3;
  BranchFilter branch = BranchFilter::combined;

  /// Throws Error(config).
  void validate() const;
  std::size_t cell_count() const;
};

using Value = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;  // names carry the unit suffix
  std::vector<std::vector<Value>> rows;
};

struct SweepMetadata {
  std::string parameter_hash;
  std::string code_version;
  std::string task;
  int scan_points = 0;
  double scan_E_min = 0.0;
  double scan_E_max = 0.0;
  double scan_rel_tol = 0.0;
  double residual_bound = 0.0;  // relative to max(S_p, gamma_c^3)
  std::vector<std::string> notes;
};

struct SweepResult {
  Table table;
  SweepMetadata metadata;
  Diagnostics diagnostics;
};

/// Population-weighted power sum with p_ground = (1 - P0)/2 and
/// p_excited = (1 + P0)/2. A missing branch hands its weight to the other.
double combine_branches(std::optional<double> ground, std::optional<double> excited, double P0);

/// 10 log10(ratio).
double to_db(double ratio);

/// Worker count from the request, else CQED_WORKERS, else the hardware.
int resolve_workers(int requested);

SweepResult run_sweep(const GridSpec& spec, const PhysicalConfig& config, int workers = 0);

void write_csv(const SweepResult& result, std::ostream& out);
std::string to_json(const SweepResult& result);

/// FNV-1a 64 over a canonical text form of the inputs, as 16 hex digits.
std::string parameter_hash(const GridSpec& spec, const PhysicalConfig& config);

inline constexpr const char* kCodeVersion = "1.0.0";

}  // namespace cqed
