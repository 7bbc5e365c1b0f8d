#include "cqed/cqed.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cqed/config.hpp"
#include "cqed/params.hpp"
#include "cqed/specfun.hpp"
#include "cqed/sweep.hpp"

struct cqed_device {
  cqed::PhysicalConfig config;
};

struct cqed_grid {
  cqed::GridSpec spec;
};

struct cqed_result {
  cqed::SweepResult result;
};

namespace {

thread_local std::string last_error;

cqed_status fail(cqed_status status, const std::string& message) {
  last_error = message;
  return status;
}

cqed_status from_code(cqed::ErrorCode code) {
  switch (code) {
    case cqed::ErrorCode::invalid_argument: return CQED_ERR_INVALID_ARGUMENT;
    case cqed::ErrorCode::config: return CQED_ERR_CONFIG;
    case cqed::ErrorCode::solver: return CQED_ERR_SOLVER;
    case cqed::ErrorCode::io: return CQED_ERR_IO;
    case cqed::ErrorCode::singular: return CQED_ERR_SINGULAR;
  }
  return CQED_ERR_INTERNAL;
}

template <typename F>
cqed_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return CQED_OK;
  } catch (const cqed::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CQED_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CQED_ERR_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw cqed::Error(cqed::ErrorCode::invalid_argument, std::string(what) + " is NULL");
}

std::string render(const cqed::SweepResult& r, const char* format) {
  need(format, "format");
  if (std::strcmp(format, "json") == 0) return cqed::to_json(r);
  if (std::strcmp(format, "csv") == 0) {
    std::ostringstream ss;
    cqed::write_csv(r, ss);
    return ss.str();
  }
  throw cqed::Error(cqed::ErrorCode::invalid_argument, std::string("unknown format '") + format + "' (csv, json)");
}

template <typename Setter>
cqed_status update_grid(cqed_grid* grid, Setter&& set) {
  return guarded([&] {
    need(grid, "grid");
    cqed::GridSpec copy = grid->spec;
    set(copy);
    try {
      copy.validate();
    } catch (const cqed::Error& e) {
      throw cqed::Error(cqed::ErrorCode::invalid_argument, e.what());
    }
    grid->spec = copy;
  });
}

}  // namespace

extern "C" {

const char* cqed_last_error(void) { return last_error.c_str(); }
const char* cqed_version(void) { return cqed::kCodeVersion; }

cqed_status cqed_device_load(const char* path, cqed_device** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new cqed_device{cqed::load_device(path)};
  });
}

cqed_status cqed_device_parse(const char* json_text, cqed_device** out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = new cqed_device{cqed::parse_device(json_text)};
  });
}

void cqed_device_free(cqed_device* device) { delete device; }

cqed_status cqed_grid_load(const char* path, cqed_grid** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new cqed_grid{cqed::load_grid(path)};
  });
}

cqed_status cqed_grid_parse(const char* json_text, cqed_grid** out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = new cqed_grid{cqed::parse_grid(json_text)};
  });
}

void cqed_grid_free(cqed_grid* grid) { delete grid; }

cqed_status cqed_grid_set_task(cqed_grid* grid, const char* task) {
  return update_grid(grid, [&](cqed::GridSpec& g) {
    need(task, "task");
    g.task = cqed::task_from_string(task);
  });
}

cqed_status cqed_grid_set_power_dbm(cqed_grid* grid, double power_dbm) {
  return update_grid(grid, [&](cqed::GridSpec& g) { g.power_dbm = power_dbm; });
}

cqed_status cqed_grid_set_shr_order(cqed_grid* grid, int order) {
  return update_grid(grid, [&](cqed::GridSpec& g) { g.shr_order = order; });
}

cqed_status cqed_grid_set_signal_offset_khz(cqed_grid* grid, double offset_khz) {
  return update_grid(grid, [&](cqed::GridSpec& g) { g.signal_offset_khz = offset_khz; });
}

cqed_status cqed_grid_set_branch(cqed_grid* grid, const char* branch) {
  return update_grid(grid, [&](cqed::GridSpec& g) {
    need(branch, "branch");
    g.branch = cqed::branch_filter_from_string(branch);
  });
}

cqed_status cqed_run_sweep(const cqed_device* device, const cqed_grid* grid, int workers, cqed_result** out) {
  return guarded([&] {
    need(device, "device");
    need(grid, "grid");
    need(out, "out");
    *out = new cqed_result{cqed::run_sweep(grid->spec, device->config, workers)};
  });
}

size_t cqed_result_row_count(const cqed_result* result) {
  return result ? result->result.table.rows.size() : 0;
}

size_t cqed_result_diagnostic_count(const cqed_result* result) {
  return result ? result->result.diagnostics.size() : 0;
}

const char* cqed_result_diagnostic(const cqed_result* result, size_t index) {
  if (result == nullptr || index >= result->result.diagnostics.size()) return nullptr;
  return result->result.diagnostics[index].c_str();
}

cqed_status cqed_result_write(const cqed_result* result, const char* format, const char* path) {
  return guarded([&] {
    need(result, "result");
    need(path, "path");
    const std::string text = render(result->result, format);
    if (std::strcmp(path, "-") == 0) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) throw cqed::Error(cqed::ErrorCode::io, "failed writing to stdout");
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw cqed::Error(cqed::ErrorCode::io, std::string("cannot open '") + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw cqed::Error(cqed::ErrorCode::io, std::string("failed writing '") + path + "'");
  });
}

cqed_status cqed_result_to_string(const cqed_result* result, const char* format, char** out) {
  return guarded([&] {
    need(result, "result");
    need(out, "out");
    const std::string text = render(result->result, format);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void cqed_string_free(char* s) { std::free(s); }

void cqed_result_free(cqed_result* result) { delete result; }

cqed_status cqed_bessel_j(int order, double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = cqed::specfun::bessel_j(order, x);
  });
}

cqed_status cqed_derive(const cqed_device* device, double omega_f, cqed_derived* out) {
  return guarded([&] {
    need(device, "device");
    need(out, "out");
    const cqed::DerivedParams d = cqed::derive(device->config, omega_f);
    *out = cqed_derived{d.omega_f, d.theta, d.omega_a, d.g1, d.n0, d.P0, d.T1, d.T2, d.gamma_c};
  });
}

cqed_status cqed_power_to_drive(const cqed_device* device, double power_dbm, double omega_p, double* out) {
  return guarded([&] {
    need(device, "device");
    need(out, "out");
    *out = cqed::power_to_drive(power_dbm, omega_p, device->config.gamma_c1);
  });
}

}  // extern "C"
