#pragma once

#include <string>

#include "cqed/params.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

/// Device description from JSON text. Frequencies and rates are given in GHz
/// (rates as gamma/2pi), temperature in mK, T1 base in us, T2 base rate in
/// 1/us. Unknown keys are rejected. Throws Error(config).
PhysicalConfig parse_device(const std::string& json_text);
PhysicalConfig load_device(const std::string& path);

/// Grid description from JSON text. Throws Error(config).
GridSpec parse_grid(const std::string& json_text);
GridSpec load_grid(const std::string& path);

/// Reads a whole file, Error(io) with the path on failure.
std::string read_text_file(const std::string& path);

}  // namespace cqed
