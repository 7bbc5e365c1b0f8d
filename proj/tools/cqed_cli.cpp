// Command-line front end; talks to the library through the C interface only.
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cqed/cqed.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDiagnostics = 3;
constexpr int kExitFailure = 1;

struct Options {
  std::string config;
  std::string grid;
  std::string out = "-";
  std::string format = "csv";
  std::string branch;
  int workers = 0;
  std::optional<double> power_dbm;
  std::optional<int> shr_order;
  std::optional<double> signal_offset_khz;
};

struct DeviceDeleter {
  void operator()(cqed_device* p) const { cqed_device_free(p); }
};
struct GridDeleter {
  void operator()(cqed_grid* p) const { cqed_grid_free(p); }
};
struct ResultDeleter {
  void operator()(cqed_result* p) const { cqed_result_free(p); }
};

int report(cqed_status status, const char* context) {
  std::fprintf(stderr, "cqed: %s: %s\n", context, cqed_last_error());
  if (status == CQED_ERR_CONFIG || status == CQED_ERR_INVALID_ARGUMENT) return kExitConfig;
  return kExitFailure;
}

// Unreadable or malformed input files are configuration errors.
int report_load(cqed_status status, const char* context) {
  const int code = report(status, context);
  return status == CQED_ERR_IO ? kExitConfig : code;
}

int run(const std::string& task, const Options& o) {
  cqed_device* raw_device = nullptr;
  if (cqed_status s = cqed_device_load(o.config.c_str(), &raw_device); s != CQED_OK) {
    return report_load(s, "device config");
  }
  std::unique_ptr<cqed_device, DeviceDeleter> device(raw_device);

  cqed_grid* raw_grid = nullptr;
  cqed_status s = o.grid.empty() ? cqed_grid_parse("{}", &raw_grid) : cqed_grid_load(o.grid.c_str(), &raw_grid);
  if (s != CQED_OK) return report_load(s, "grid config");
  std::unique_ptr<cqed_grid, GridDeleter> grid(raw_grid);

  if ((s = cqed_grid_set_task(grid.get(), task.c_str())) != CQED_OK) return report(s, "task");
  if (o.power_dbm && (s = cqed_grid_set_power_dbm(grid.get(), *o.power_dbm)) != CQED_OK) return report(s, "--power-dbm");
  if (o.shr_order && (s = cqed_grid_set_shr_order(grid.get(), *o.shr_order)) != CQED_OK) return report(s, "--shr-order");
  if (o.signal_offset_khz && (s = cqed_grid_set_signal_offset_khz(grid.get(), *o.signal_offset_khz)) != CQED_OK) {
    return report(s, "--signal-offset-khz");
  }
  if (!o.branch.empty() && (s = cqed_grid_set_branch(grid.get(), o.branch.c_str())) != CQED_OK) {
    return report(s, "--branch");
  }

  cqed_result* raw_result = nullptr;
  if ((s = cqed_run_sweep(device.get(), grid.get(), o.workers, &raw_result)) != CQED_OK) return report(s, "sweep");
  std::unique_ptr<cqed_result, ResultDeleter> result(raw_result);

  if ((s = cqed_result_write(result.get(), o.format.c_str(), o.out.c_str())) != CQED_OK) return report(s, "output");

  const size_t n_diag = cqed_result_diagnostic_count(result.get());
  for (size_t i = 0; i < n_diag; ++i) std::fprintf(stderr, "cqed: diagnostic: %s\n", cqed_result_diagnostic(result.get(), i));
  return n_diag > 0 ? kExitDiagnostics : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state and linear-response maps of a flux qubit coupled to a driven cavity"};
  app.set_version_flag("--version", std::string(cqed_version()));
  app.require_subcommand(1);

  Options o;
  std::string chosen;
  const char* tasks[][2] = {
      {"transmission-map", "pump transmission |S21|^2 over the grid"},
      {"imd", "intermodulation signal and idler gains"},
      {"bistability", "weak-nonlinear coefficients and bistability onset"},
      {"shr-map", "transmission near a superharmonic resonance"},
      {"spectrum", "dressed levels with and without counter-rotating corrections"},
  };
  for (const auto& t : tasks) {
    CLI::App* sub = app.add_subcommand(t[0], t[1]);
    sub->add_option("--config", o.config, "device JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--grid", o.grid, "grid JSON")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output path, - for stdout");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--branch", o.branch, "ground, excited or combined")
        ->check(CLI::IsMember({"ground", "excited", "combined"}));
    sub->add_option("--workers", o.workers, "worker threads (default: CQED_WORKERS or all cores)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--power-dbm", o.power_dbm, "pump power when not swept");
    sub->add_option("--shr-order", o.shr_order, "superharmonic order, 0 picks the nearest")->check(CLI::Range(0, 8));
    sub->add_option("--signal-offset-khz", o.signal_offset_khz, "signal minus pump frequency");
    sub->callback([&chosen, name = std::string(t[0])] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  return run(chosen, o);
}
