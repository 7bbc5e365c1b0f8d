#include "cqed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cqed/response.hpp"
#include "cqed/spectrum.hpp"
#include "cqed/steadystate.hpp"
#include "cqed/superharmonic.hpp"

namespace cqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kResidualBound = 1e-10;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::config, what);
}

std::string fmt(const char* spec, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt12(double v) { return fmt("%.12g", v); }

struct Cell {
  double omega_f_ghz = 0.0;
  double omega_p_ghz = 0.0;
  double power_dbm = 0.0;
};

struct CellOutput {
  std::vector<std::vector<Value>> rows;
  Diagnostics diagnostics;
};

std::vector<std::string> columns_for(Task task) {
  const std::vector<std::string> prefix = {"omega_f_GHz", "omega_p_GHz", "power_dBm", "omega_a_GHz"};
  std::vector<std::string> cols = prefix;
  auto add = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) cols.emplace_back(n);
  };
  switch (task) {
    case Task::transmission_map:
      add({"branch", "root", "n_roots", "E_c_photons", "stability", "residual_ok", "s21_dB", "weight",
           "combined_s21_dB"});
      break;
    case Task::shr_map:
      add({"branch", "root", "n_roots", "E_c_photons", "stability", "residual_ok", "s21_dB", "weight",
           "combined_s21_dB", "shr_n", "g_n_GHz", "bessel_arg"});
      break;
    case Task::imd:
      add({"branch", "root", "n_roots", "E_c_photons", "stability", "residual_ok", "s21_dB", "G_s_dB", "G_i_dB",
           "weight", "combined_s21_dB", "combined_G_s_dB", "combined_G_i_dB"});
      break;
    case Task::bistability:
      add({"branch", "Omega0_rad_per_ns", "Omega2_rad_per_ns", "Gamma0_rad_per_ns", "Gamma2_rad_per_ns",
           "S_p_per_ns2", "onset_possible", "E_o_photons", "Omega0_o_rad_per_ns", "S_p_o_per_ns2", "P_o_dBm",
           "n_cubic_roots"});
      break;
    case Task::spectrum:
      cols = {"omega_f_GHz", "omega_a_GHz", "g1_GHz", "level", "n", "sign", "E_jc_GHz", "E_bs_GHz",
              "omega_n_GHz", "theta_n_rad", "res_minus_GHz", "res_plus_GHz"};
      break;
  }
  return cols;
}

std::vector<Branch> branches_for(BranchFilter f) {
  switch (f) {
    case BranchFilter::ground: return {Branch::ground};
    case BranchFilter::excited: return {Branch::excited};
    case BranchFilter::combined: break;
  }
  return {Branch::ground, Branch::excited};
}

std::string cell_label(std::size_t index, const Cell& c, Task task) {
  std::string s = "cell " + std::to_string(index) + " (omega_f=" + fmt12(c.omega_f_ghz) + " GHz";
  if (task != Task::spectrum) {
    s += ", omega_p=" + fmt12(c.omega_p_ghz) + " GHz, power=" + fmt12(c.power_dbm) + " dBm";
  }
  return s + ")";
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Per-branch result of a fixed-point task.
struct BranchSolve {
  Branch branch = Branch::ground;
  DriveConfig drive;
  SolveResult solved;
  std::vector<double> s21;  // |S21|^2 per root
  std::vector<double> G_s;
  std::vector<double> G_i;
};

// Observable averaged over the stable roots of each branch, combined with
// thermal weights. Falls back to all ground-branch roots when nothing is stable.
struct Combined {
  double value = kNaN;
  double weight_ground = 0.0;
  double weight_excited = 0.0;
};

Combined combine(const std::vector<BranchSolve>& solves, double P0,
                 std::vector<double> BranchSolve::*field, bool* fallback) {
  std::optional<double> per[2];
  for (const BranchSolve& b : solves) {
    std::vector<double> stable;
    for (std::size_t i = 0; i < b.solved.points.size(); ++i) {
      if (b.solved.points[i].stable()) stable.push_back((b.*field)[i]);
    }
    per[b.branch == Branch::ground ? 0 : 1] = mean_of(stable);
  }
  Combined c;
  if (!per[0] && !per[1]) {
    for (const BranchSolve& b : solves) {
      if (auto m = mean_of(b.*field)) {
        per[b.branch == Branch::ground ? 0 : 1] = m;
        *fallback = true;
        break;
      }
    }
  }
  c.value = combine_branches(per[0], per[1], P0);
  if (per[0] && per[1]) {
    c.weight_ground = 0.5 * (1.0 - P0);
    c.weight_excited = 1.0 - c.weight_ground;
  } else if (per[0]) {
    c.weight_ground = 1.0;
  } else if (per[1]) {
    c.weight_excited = 1.0;
  }
  return c;
}

class CellEvaluator {
 public:
  CellEvaluator(const GridSpec& spec, const PhysicalConfig& config) : spec_(spec), config_(config) {}

  CellOutput operator()(std::size_t index, const Cell& cell) const {
    CellOutput out;
    const std::string label = cell_label(index, cell, spec_.task);
    try {
      switch (spec_.task) {
        case Task::transmission_map:
        case Task::imd:
        case Task::shr_map: fixed_point_task(cell, label, out); break;
        case Task::bistability: bistability_task(cell, label, out); break;
        case Task::spectrum: spectrum_task(cell, label, out); break;
      }
    } catch (const std::exception& e) {
      out.diagnostics.push_back(label + ": " + e.what());
    }
    return out;
  }

 private:
  std::vector<Value> prefix(const Cell& cell, const DerivedParams& d) const {
    return {cell.omega_f_ghz, cell.omega_p_ghz, cell.power_dbm, rad_per_ns_to_ghz(d.omega_a)};
  }

  void fixed_point_task(const Cell& cell, const std::string& label, CellOutput& out) const {
    const DerivedParams d = derive(config_, ghz_to_rad_per_ns(cell.omega_f_ghz));
    const double omega_p = ghz_to_rad_per_ns(cell.omega_p_ghz);
    const double S_p = power_to_drive(cell.power_dbm, omega_p, d.gamma_c1);
    const double offset = ghz_to_rad_per_ns(spec_.signal_offset_khz * 1e-6);
    const int order = spec_.task != Task::shr_map ? 1
                      : spec_.shr_order > 0      ? spec_.shr_order
                                                 : nearest_shr_order(d.omega_a, omega_p);

    std::vector<BranchSolve> solves;
    for (Branch branch : branches_for(spec_.branch)) {
      BranchSolve b;
      b.branch = branch;
      b.drive = make_drive(d, omega_p, S_p, branch);
      if (spec_.task == Task::shr_map) {
        ShrConfig shr;
        shr.n = order;
        shr.drive = b.drive;
        shr.derived = d;
        b.solved = solve_shr(shr, branch);
      } else {
        b.solved = solve_selfconsistent(d, b.drive, branch);
      }
      for (const std::string& msg : b.solved.diagnostics) {
        out.diagnostics.push_back(label + " " + to_string(branch) + ": " + msg);
      }
      for (const FixedPoint& fp : b.solved.points) {
        b.s21.push_back(std::norm(transmission(fp, S_p, d)));
        if (spec_.task == Task::imd) {
          try {
            const ImdGains gains = imd_gains_at(fp, d, b.drive, offset);
            b.G_s.push_back(gains.G_s);
            b.G_i.push_back(gains.G_i);
          } catch (const Error& e) {
            out.diagnostics.push_back(label + " " + to_string(branch) + " E_c=" + fmt12(fp.E_c) + ": " + e.what());
            b.G_s.push_back(kNaN);
            b.G_i.push_back(kNaN);
          }
        }
      }
      solves.push_back(std::move(b));
    }

    bool fallback = false;
    const Combined s21 = combine(solves, d.P0, &BranchSolve::s21, &fallback);
    Combined gs;
    Combined gi;
    if (spec_.task == Task::imd) {
      gs = combine(solves, d.P0, &BranchSolve::G_s, &fallback);
      gi = combine(solves, d.P0, &BranchSolve::G_i, &fallback);
    }
    if (fallback) out.diagnostics.push_back(label + ": no stable fixed point, combined value averages all roots");

    for (const BranchSolve& b : solves) {
      const double weight = b.branch == Branch::ground ? s21.weight_ground : s21.weight_excited;
      const auto n_roots = static_cast<long long>(b.solved.points.size());
      for (std::size_t i = 0; i < b.solved.points.size(); ++i) {
        const FixedPoint& fp = b.solved.points[i];
        const bool ok = residual_ok(fp, d, b.drive);
        if (!ok) {
          out.diagnostics.push_back(label + " " + to_string(b.branch) + ": residual bound violated at E_c=" +
                                    fmt12(fp.E_c));
        }
        std::vector<Value> row = prefix(cell, d);
        row.insert(row.end(), {Value(std::string(to_string(b.branch))), Value(static_cast<long long>(i)),
                               Value(n_roots), Value(fp.E_c), Value(std::string(to_string(fp.stability))),
                               Value(static_cast<long long>(ok)), Value(to_db(b.s21[i]))});
        if (spec_.task == Task::imd) {
          row.insert(row.end(), {Value(to_db(b.G_s[i])), Value(to_db(b.G_i[i]))});
        }
        row.insert(row.end(), {Value(weight), Value(to_db(s21.value))});
        if (spec_.task == Task::imd) {
          row.insert(row.end(), {Value(to_db(gs.value)), Value(to_db(gi.value))});
        }
        if (spec_.task == Task::shr_map) {
          row.insert(row.end(), {Value(static_cast<long long>(order)), Value(rad_per_ns_to_ghz(fp.g_eff)),
                                 Value(shr_bessel_argument(fp.E_c, d, omega_p))});
        }
        out.rows.push_back(std::move(row));
      }
    }
  }

  void bistability_task(const Cell& cell, const std::string& label, CellOutput& out) const {
    const DerivedParams d = derive(config_, ghz_to_rad_per_ns(cell.omega_f_ghz));
    const double omega_p = ghz_to_rad_per_ns(cell.omega_p_ghz);
    const double S_p = power_to_drive(cell.power_dbm, omega_p, d.gamma_c1);
    for (Branch branch : branches_for(spec_.branch)) {
      const DriveConfig drive = make_drive(d, omega_p, S_p, branch);
      std::vector<Value> row = prefix(cell, d);
      row.emplace_back(std::string(to_string(branch)));
      try {
        const ResponseCoeffs c = response_coeffs(d, drive, branch);
        const BistabilityOnset o = onset_of_bistability(c);
        const auto roots = static_cast<long long>(solve_cubic(c, S_p).size());
        const double E_o = o.possible ? o.E_o : kNaN;
        const double W_o = o.possible ? o.Omega0_o : kNaN;
        const double S_o = o.possible ? o.S_p_o : kNaN;
        const double P_o = o.possible ? drive_to_power(o.S_p_o, omega_p, d.gamma_c1) : kNaN;
        row.insert(row.end(), {Value(c.Omega0), Value(c.Omega2), Value(c.Gamma0), Value(c.Gamma2), Value(S_p),
                               Value(static_cast<long long>(o.possible)), Value(E_o), Value(W_o), Value(S_o),
                               Value(P_o), Value(roots)});
      } catch (const Error& e) {
        out.diagnostics.push_back(label + " " + to_string(branch) + ": " + e.what());
        for (int k = 0; k < 5; ++k) row.emplace_back(kNaN);
        row.emplace_back(0LL);
        for (int k = 0; k < 4; ++k) row.emplace_back(kNaN);
        row.emplace_back(0LL);
      }
      out.rows.push_back(std::move(row));
    }
  }

  void spectrum_task(const Cell& cell, const std::string& label, CellOutput& out) const {
    const DerivedParams d = derive(config_, ghz_to_rad_per_ns(cell.omega_f_ghz));
    const LevelSet jc = jc_levels(d, spec_.n_max);
    const LevelSet bs = bs_levels(d, spec_.n_max);
    for (const std::string& msg : bs.diagnostics) out.diagnostics.push_back(label + ": " + msg);
    double res_minus = kNaN;
    double res_plus = kNaN;
    try {
      const LinearResonances r = linear_resonances(d);
      res_minus = rad_per_ns_to_ghz(r.omega_minus);
      res_plus = rad_per_ns_to_ghz(r.omega_plus);
      for (const std::string& msg : r.diagnostics) out.diagnostics.push_back(label + ": " + msg);
    } catch (const Error& e) {
      out.diagnostics.push_back(label + ": " + e.what());
    }

    const auto head = [&] {
      return std::vector<Value>{cell.omega_f_ghz, rad_per_ns_to_ghz(d.omega_a), rad_per_ns_to_ghz(d.g1)};
    };
    std::vector<Value> ground = head();
    ground.insert(ground.end(), {Value(std::string("ground")), Value(-1LL), Value(0LL),
                                 Value(rad_per_ns_to_ghz(jc.ground)), Value(rad_per_ns_to_ghz(bs.ground)),
                                 Value(kNaN), Value(kNaN), Value(res_minus), Value(res_plus)});
    out.rows.push_back(std::move(ground));
    for (std::size_t i = 0; i < jc.levels.size(); ++i) {
      const DressedLevel& l = jc.levels[i];
      std::vector<Value> row = head();
      row.insert(row.end(), {Value(std::to_string(l.n) + (l.sign > 0 ? "+" : "-")),
                             Value(static_cast<long long>(l.n)), Value(static_cast<long long>(l.sign)),
                             Value(rad_per_ns_to_ghz(l.energy)), Value(rad_per_ns_to_ghz(bs.levels[i].energy)),
                             Value(rad_per_ns_to_ghz(l.omega_n)), Value(l.theta_n), Value(res_minus),
                             Value(res_plus)});
      out.rows.push_back(std::move(row));
    }
  }

  const GridSpec& spec_;
  const PhysicalConfig& config_;
};

std::vector<Cell> make_cells(const GridSpec& spec, const PhysicalConfig& config) {
  Cell base;
  base.omega_f_ghz = spec.omega_f_ghz;
  base.omega_p_ghz = spec.omega_p_ghz.value_or(rad_per_ns_to_ghz(config.omega_c));
  base.power_dbm = spec.power_dbm;
  auto assign = [](Cell& c, const Axis& a, int i) {
    const double v = a.value(i);
    switch (a.name) {
      case AxisName::omega_f: c.omega_f_ghz = v; break;
      case AxisName::omega_p: c.omega_p_ghz = v; break;
      case AxisName::power_dBm: c.power_dbm = v; break;
    }
  };
  std::vector<Cell> cells;
  if (spec.axes.empty()) {
    cells.push_back(base);
  } else if (spec.axes.size() == 1) {
    for (int i = 0; i < spec.axes[0].count; ++i) {
      Cell c = base;
      assign(c, spec.axes[0], i);
      cells.push_back(c);
    }
  } else {
    for (int i = 0; i < spec.axes[0].count; ++i) {
      for (int j = 0; j < spec.axes[1].count; ++j) {
        Cell c = base;
        assign(c, spec.axes[0], i);
        assign(c, spec.axes[1], j);
        cells.push_back(c);
      }
    }
  }
  return cells;
}

void append_canonical(std::string& s, const char* key, double v) {
  s += key;
  s += '=';
  s += fmt("%.17g", v);
  s += '\n';
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const char* to_string(Task t) {
  switch (t) {
    case Task::transmission_map: return "transmission-map";
    case Task::imd: return "imd";
    case Task::bistability: return "bistability";
    case Task::shr_map: return "shr-map";
    case Task::spectrum: return "spectrum";
  }
  return "?";
}

Task task_from_string(const std::string& name) {
  for (Task t : {Task::transmission_map, Task::imd, Task::bistability, Task::shr_map, Task::spectrum}) {
    if (name == to_string(t)) return t;
  }
  throw Error(ErrorCode::invalid_argument, "unknown task '" + name + "'");
}

const char* to_string(AxisName a) {
  switch (a) {
    case AxisName::omega_f: return "omega_f";
    case AxisName::omega_p: return "omega_p";
    case AxisName::power_dBm: return "power_dBm";
  }
  return "?";
}

const char* to_string(BranchFilter b) {
  switch (b) {
    case BranchFilter::ground: return "ground";
    case BranchFilter::excited: return "excited";
    case BranchFilter::combined: return "combined";
  }
  return "?";
}

BranchFilter branch_filter_from_string(const std::string& name) {
  for (BranchFilter b : {BranchFilter::ground, BranchFilter::excited, BranchFilter::combined}) {
    if (name == to_string(b)) return b;
  }
  throw Error(ErrorCode::invalid_argument, "unknown branch '" + name + "' (ground, excited, combined)");
}

double Axis::value(int i) const {
  if (i == count - 1) return stop;
  const double t = static_cast<double>(i) / (count - 1);
  if (spacing == Spacing::log) return start * std::pow(stop / start, t);
  return start + (stop - start) * t;
}

void GridSpec::validate() const {
  require(axes.size() <= 2, "grid: at most two axes");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const Axis& a = axes[i];
    const std::string name = to_string(a.name);
    require(a.count >= 2, "axis " + name + ": count must be at least 2");
    require(std::isfinite(a.start) && std::isfinite(a.stop) && a.start < a.stop,
            "axis " + name + ": need finite start < stop");
    require(a.spacing == Spacing::linear || a.start > 0.0, "axis " + name + ": log spacing needs start > 0");
    require(a.name != AxisName::omega_p || a.start > 0.0, "axis omega_p: frequencies must be positive");
    for (std::size_t j = 0; j < i; ++j) require(axes[j].name != a.name, "grid: duplicate axis " + name);
    if (task == Task::spectrum) require(a.name == AxisName::omega_f, "grid: spectrum only sweeps omega_f");
  }
  require(std::isfinite(omega_f_ghz), "grid: omega_f_ghz must be finite");
  require(!omega_p_ghz || (std::isfinite(*omega_p_ghz) && *omega_p_ghz > 0.0), "grid: omega_p_ghz must be positive");
  require(std::isfinite(power_dbm), "grid: power_dbm must be finite");
  require(shr_order >= 0 && shr_order <= 8, "grid: shr_order must be in 0..8");
  require(std::isfinite(signal_offset_khz), "grid: signal_offset_khz must be finite");
  require(n_max >= 0 && n_max <= 1000, "grid: n_max must be in 0..1000");
}

std::size_t GridSpec::cell_count() const {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

double combine_branches(std::optional<double> ground, std::optional<double> excited, double P0) {
  if (ground && excited) {
    const double p_ground = 0.5 * (1.0 - P0);
    const double p_excited = 1.0 - p_ground;
    return p_ground * *ground + p_excited * *excited;
  }
  if (ground) return *ground;
  if (excited) return *excited;
  return kNaN;
}

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CQED_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

std::string parameter_hash(const GridSpec& spec, const PhysicalConfig& c) {
  std::string s;
  append_canonical(s, "omega_c", c.omega_c);
  append_canonical(s, "K_c", c.K_c);
  append_canonical(s, "gamma_c1", c.gamma_c1);
  append_canonical(s, "gamma_c2", c.gamma_c2);
  append_canonical(s, "gamma_c3", c.gamma_c3);
  append_canonical(s, "gamma_c4", c.gamma_c4);
  append_canonical(s, "phi_c1", c.phi_c1);
  append_canonical(s, "phi_c2", c.phi_c2);
  append_canonical(s, "phi_c3", c.phi_c3);
  append_canonical(s, "phi_c4", c.phi_c4);
  append_canonical(s, "omega_Delta", c.omega_Delta);
  append_canonical(s, "g", c.g);
  append_canonical(s, "gamma_q1", c.gamma_q1.value_or(kNaN));
  append_canonical(s, "gamma_q2", c.gamma_q2.value_or(kNaN));
  append_canonical(s, "temperature", c.temperature);
  append_canonical(s, "t1_base", c.t1_law ? c.t1_law->base_ns : kNaN);
  append_canonical(s, "t1_flux", c.t1_law ? c.t1_law->flux_coeff_ns : kNaN);
  append_canonical(s, "t2_base", c.t2_law ? c.t2_law->base_rate_per_ns : kNaN);
  append_canonical(s, "t2_flux", c.t2_law ? c.t2_law->flux_coeff : kNaN);
  append_canonical(s, "bloch_siegert", c.bloch_siegert ? 1.0 : 0.0);
  s += std::string("task=") + to_string(spec.task) + '\n';
  for (const Axis& a : spec.axes) {
    s += std::string("axis=") + to_string(a.name) + (a.spacing == Spacing::log ? ",log\n" : ",linear\n");
    append_canonical(s, "start", a.start);
    append_canonical(s, "stop", a.stop);
    append_canonical(s, "count", a.count);
  }
  append_canonical(s, "omega_f_ghz", spec.omega_f_ghz);
  append_canonical(s, "omega_p_ghz", spec.omega_p_ghz.value_or(kNaN));
  append_canonical(s, "power_dbm", spec.power_dbm);
  append_canonical(s, "shr_order", spec.shr_order);
  append_canonical(s, "signal_offset_khz", spec.signal_offset_khz);
  append_canonical(s, "n_max", spec.n_max);
  s += std::string("branch=") + to_string(spec.branch) + '\n';
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s)));
  return buf;
}

SweepResult run_sweep(const GridSpec& spec, const PhysicalConfig& config, int workers) {
  spec.validate();
  config.validate();
  const std::vector<Cell> cells = make_cells(spec, config);
  std::vector<CellOutput> outputs(cells.size());
  const CellEvaluator evaluate(spec, config);

  const int n_workers = std::max(1, std::min<int>(resolve_workers(workers), static_cast<int>(cells.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      outputs[i] = evaluate(i, cells[i]);
    }
  };
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  SweepResult result;
  result.table.columns = columns_for(spec.task);
  for (CellOutput& o : outputs) {
    for (auto& row : o.rows) result.table.rows.push_back(std::move(row));
    for (auto& d : o.diagnostics) result.diagnostics.push_back(std::move(d));
  }

  SweepMetadata& m = result.metadata;
  m.parameter_hash = parameter_hash(spec, config);
  m.code_version = kCodeVersion;
  m.task = to_string(spec.task);
  m.scan_points = kDefaultScan.points;
  m.scan_E_min = kDefaultScan.E_min;
  m.scan_E_max = kDefaultScan.E_max;
  m.scan_rel_tol = kDefaultScan.rel_tol;
  m.residual_bound = kResidualBound;
  if (spec.task == Task::shr_map) {
    m.notes.push_back("stability near superharmonic resonances uses the primary Jacobian with (g_n(E_c), Delta_n)");
  }
  if (config.bloch_siegert) m.notes.push_back("cavity frequency shifted by -/+ omega_BS per branch");
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  const auto& cols = result.table.columns;
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : result.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out << fmt12(*d);
      } else if (const long long* n = std::get_if<long long>(&row[i])) {
        out << *n;
      } else {
        out << std::get<std::string>(row[i]);
      }
    }
    out << '\n';
  }
}

std::string to_json(const SweepResult& result) {
  using nlohmann::ordered_json;
  auto number = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };

  ordered_json j;
  const SweepMetadata& m = result.metadata;
  j["metadata"] = {{"parameter_hash", m.parameter_hash},
                   {"code_version", m.code_version},
                   {"task", m.task},
                   {"solver",
                    {{"scan_points", m.scan_points},
                     {"scan_E_min", m.scan_E_min},
                     {"scan_E_max", m.scan_E_max},
                     {"bisection_rel_tol", m.scan_rel_tol},
                     {"residual_bound", m.residual_bound}}},
                   {"notes", m.notes}};
  j["columns"] = result.table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : result.table.rows) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& key = result.table.columns[i];
      if (const double* d = std::get_if<double>(&row[i])) {
        r[key] = number(*d);
      } else if (const long long* n = std::get_if<long long>(&row[i])) {
        r[key] = *n;
      } else {
        r[key] = std::get<std::string>(row[i]);
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["diagnostics"] = result.diagnostics;
  return j.dump(2) + "\n";
}

}  // namespace cqed
