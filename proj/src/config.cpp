#include "cqed/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace cqed {

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config, std::string(what) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::config, std::string(what) + ": top level must be an object");
  return j;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw Error(ErrorCode::config, where + ": unknown key '" + it.key() + "'");
  }
}

double number(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::config, where + ": missing '" + key + "'");
  if (!it->is_number()) throw Error(ErrorCode::config, where + ": '" + key + "' must be a number");
  return it->get<double>();
}

std::optional<double> maybe_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return std::nullopt;
  return number(j, key, where);
}

int integer(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (!it->is_number_integer()) throw Error(ErrorCode::config, where + ": '" + key + "' must be an integer");
  return it->get<int>();
}

std::string text(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (!it->is_string()) throw Error(ErrorCode::config, where + ": '" + key + "' must be a string");
  return it->get<std::string>();
}

AxisName axis_from_string(const std::string& s) {
  if (s == "omega_f") return AxisName::omega_f;
  if (s == "omega_p") return AxisName::omega_p;
  if (s == "power_dBm") return AxisName::power_dBm;
  throw Error(ErrorCode::config, "unknown axis '" + s + "' (omega_f, omega_p, power_dBm)");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PhysicalConfig parse_device(const std::string& json_text) {
  const json root = parse_object(json_text, "device config");
  reject_unknown(root, {"device", "t1_law", "t2_law"}, "device config");
  if (!root.contains("device") || !root["device"].is_object()) {
    throw Error(ErrorCode::config, "device config: missing 'device' object");
  }
  const json& dev = root["device"];
  const std::string where = "device";
  reject_unknown(dev,
                 {"omega_c_ghz", "omega_delta_ghz", "g_ghz", "kerr_ghz", "gamma_c1_ghz", "gamma_c1_over_omega_c",
                  "gamma_c2_ghz", "gamma_c2_over_gamma_c1", "gamma_c3_ghz", "gamma_c4_ghz", "phi_c1", "phi_c2",
                  "phi_c3", "phi_c4", "gamma_q1_ghz", "gamma_q2_ghz", "temperature_mk", "bloch_siegert"},
                 where);

  PhysicalConfig c;
  c.omega_c = ghz_to_rad_per_ns(number(dev, "omega_c_ghz", where));
  c.omega_Delta = ghz_to_rad_per_ns(number(dev, "omega_delta_ghz", where));
  c.g = ghz_to_rad_per_ns(number(dev, "g_ghz", where));
  c.K_c = ghz_to_rad_per_ns(maybe_number(dev, "kerr_ghz", where).value_or(0.0));

  if (dev.contains("gamma_c1_ghz") == dev.contains("gamma_c1_over_omega_c")) {
    throw Error(ErrorCode::config, "device: give exactly one of gamma_c1_ghz, gamma_c1_over_omega_c");
  }
  c.gamma_c1 = dev.contains("gamma_c1_ghz") ? ghz_to_rad_per_ns(number(dev, "gamma_c1_ghz", where))
                                            : number(dev, "gamma_c1_over_omega_c", where) * c.omega_c;
  if (dev.contains("gamma_c2_ghz") == dev.contains("gamma_c2_over_gamma_c1")) {
    throw Error(ErrorCode::config, "device: give exactly one of gamma_c2_ghz, gamma_c2_over_gamma_c1");
  }
  c.gamma_c2 = dev.contains("gamma_c2_ghz") ? ghz_to_rad_per_ns(number(dev, "gamma_c2_ghz", where))
                                            : number(dev, "gamma_c2_over_gamma_c1", where) * c.gamma_c1;
  c.gamma_c3 = ghz_to_rad_per_ns(maybe_number(dev, "gamma_c3_ghz", where).value_or(0.0));
  c.gamma_c4 = ghz_to_rad_per_ns(maybe_number(dev, "gamma_c4_ghz", where).value_or(0.0));
  c.phi_c1 = maybe_number(dev, "phi_c1", where).value_or(0.0);
  c.phi_c2 = maybe_number(dev, "phi_c2", where).value_or(0.0);
  c.phi_c3 = maybe_number(dev, "phi_c3", where).value_or(0.0);
  c.phi_c4 = maybe_number(dev, "phi_c4", where).value_or(0.0);
  if (auto v = maybe_number(dev, "gamma_q1_ghz", where)) c.gamma_q1 = ghz_to_rad_per_ns(*v);
  if (auto v = maybe_number(dev, "gamma_q2_ghz", where)) c.gamma_q2 = ghz_to_rad_per_ns(*v);
  c.temperature = number(dev, "temperature_mk", where) * 1e-3;
  if (dev.contains("bloch_siegert")) {
    if (!dev["bloch_siegert"].is_boolean()) throw Error(ErrorCode::config, "device: 'bloch_siegert' must be a boolean");
    c.bloch_siegert = dev["bloch_siegert"].get<bool>();
  }

  if (root.contains("t1_law")) {
    const json& law = root["t1_law"];
    if (!law.is_object()) throw Error(ErrorCode::config, "t1_law must be an object");
    reject_unknown(law, {"base_us", "flux_coeff_ns"}, "t1_law");
    c.t1_law = T1Law{number(law, "base_us", "t1_law") * 1e3, number(law, "flux_coeff_ns", "t1_law")};
  }
  if (root.contains("t2_law")) {
    const json& law = root["t2_law"];
    if (!law.is_object()) throw Error(ErrorCode::config, "t2_law must be an object");
    reject_unknown(law, {"base_rate_mhz", "flux_coeff"}, "t2_law");
    c.t2_law = T2Law{number(law, "base_rate_mhz", "t2_law") * 1e-3, number(law, "flux_coeff", "t2_law")};
  }
  c.validate();
  return c;
}

PhysicalConfig load_device(const std::string& path) {
  try {
    return parse_device(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::io) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

GridSpec parse_grid(const std::string& json_text) {
  const json root = parse_object(json_text, "grid config");
  const std::string where = "grid";
  reject_unknown(root,
                 {"task", "axes", "omega_f_ghz", "omega_p_ghz", "power_dbm", "shr_order", "signal_offset_khz",
                  "n_max", "branch"},
                 where);
  GridSpec g;
  if (root.contains("task")) {
    try {
      g.task = task_from_string(text(root, "task", where));
    } catch (const Error& e) {
      throw Error(ErrorCode::config, e.what());
    }
  }
  if (root.contains("axes")) {
    if (!root["axes"].is_array()) throw Error(ErrorCode::config, "grid: 'axes' must be an array");
    for (const json& a : root["axes"]) {
      if (!a.is_object()) throw Error(ErrorCode::config, "grid: each axis must be an object");
      reject_unknown(a, {"name", "start", "stop", "count", "spacing"}, "axis");
      if (!a.contains("name") || !a.contains("count")) throw Error(ErrorCode::config, "axis: needs 'name' and 'count'");
      Axis axis;
      axis.name = axis_from_string(text(a, "name", "axis"));
      axis.start = number(a, "start", "axis");
      axis.stop = number(a, "stop", "axis");
      axis.count = integer(a, "count", "axis");
      if (a.contains("spacing")) {
        const std::string s = text(a, "spacing", "axis");
        if (s == "linear") {
          axis.spacing = Spacing::linear;
        } else if (s == "log") {
          axis.spacing = Spacing::log;
        } else {
          throw Error(ErrorCode::config, "axis: spacing must be 'linear' or 'log'");
        }
      }
      g.axes.push_back(axis);
    }
  }
  if (root.contains("omega_f_ghz")) g.omega_f_ghz = number(root, "omega_f_ghz", where);
  if (root.contains("omega_p_ghz")) g.omega_p_ghz = number(root, "omega_p_ghz", where);
  if (root.contains("power_dbm")) g.power_dbm = number(root, "power_dbm", where);
  if (root.contains("shr_order")) g.shr_order = integer(root, "shr_order", where);
  if (root.contains("signal_offset_khz")) g.signal_offset_khz = number(root, "signal_offset_khz", where);
  if (root.contains("n_max")) g.n_max = integer(root, "n_max", where);
  if (root.contains("branch")) {
    try {
      g.branch = branch_filter_from_string(text(root, "branch", where));
    } catch (const Error& e) {
      throw Error(ErrorCode::config, e.what());
    }
  }
  g.validate();
  return g;
}

GridSpec load_grid(const std::string& path) {
  try {
    return parse_grid(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::io) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace cqed
