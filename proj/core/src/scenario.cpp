#include "levito/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "levito/error.hpp"

namespace levito {
namespace {

using constants::kTwoPi;

// Reads `prefix + key` when present, else `key`.
class Reader {
 public:
  Reader(const Config& cfg, std::string prefix) : cfg_(cfg), prefix_(std::move(prefix)) {}

  std::string key(const std::string& k) const {
    return !prefix_.empty() && cfg_.has(prefix_ + k) ? prefix_ + k : k;
  }
  bool has(const std::string& k) const { return cfg_.has(key(k)); }
  double number(const std::string& k, double fallback) const { return cfg_.get_double(key(k), fallback); }
  std::optional<double> optional(const std::string& k) const { return cfg_.find_double(key(k)); }
  std::string text(const std::string& k, const std::string& fallback) const {
    return cfg_.get_string(key(k), fallback);
  }

  double positive(const std::string& k, double fallback) const {
    const double v = number(k, fallback);
    if (!(v > 0.0)) throw ConfigError(key(k), "must be positive");
    return v;
  }
  double non_negative(const std::string& k, double fallback) const {
    const double v = number(k, fallback);
    if (!(v >= 0.0)) throw ConfigError(key(k), "must be non-negative");
    return v;
  }
  std::optional<double> optional_positive(const std::string& k) const {
    auto v = optional(k);
    if (v && !(*v > 0.0)) throw ConfigError(key(k), "must be positive");
    return v;
  }
  double fraction(const std::string& k, double fallback, bool open_low, bool open_high) const {
    const double v = number(k, fallback);
    const bool ok = (open_low ? v > 0.0 : v >= 0.0) && (open_high ? v < 1.0 : v <= 1.0);
    if (!ok) throw ConfigError(key(k), "outside its allowed range");
    return v;
  }

 private:
  const Config& cfg_;
  std::string prefix_;
};

SystemConfig load_system(const Config& cfg, const std::string& prefix) {
  const Reader r(cfg, prefix);
  SystemConfig s;
  s.geometry.a = r.positive("geometry.a_nm", 100.0) * 1e-9;
  s.geometry.b = r.positive("geometry.b_nm", 50.0) * 1e-9;
  s.geometry.c = r.has("geometry.c_nm") ? r.positive("geometry.c_nm", 0.0) * 1e-9 : s.geometry.b;
  s.geometry.rho = r.positive("geometry.density_kg_m3", 2200.0);
  try {
    s.geometry.validate();
  } catch (const DomainError& e) {
    throw ConfigError(r.key("geometry.a_nm"), e.what());
  }
  s.permittivity = r.number("geometry.permittivity", 2.1);
  if (!(s.permittivity > 1.0)) throw ConfigError(r.key("geometry.permittivity"), "must exceed 1");

  s.tweezer.power = r.positive("tweezer.power_w", 0.01);
  s.tweezer.waist = r.positive("tweezer.waist_um", 1.0) * 1e-6;
  s.tweezer.wavelength = r.positive("tweezer.wavelength_nm", 1550.0) * 1e-9;

  s.cavity.length = r.positive("cavity.length_mm", 1.0) * 1e-3;
  s.cavity.wavelength = r.positive("cavity.wavelength_nm", s.tweezer.wavelength * 1e9) * 1e-9;
  s.cavity.phase = r.number("cavity.phase_rad", 0.0);
  const auto waist = r.optional_positive("cavity.waist_um");
  const auto target = r.optional_positive("cavity.target_coupling_hz");
  if (waist && target) {
    throw ConfigError(r.key("cavity.target_coupling_hz"), "give either cavity.waist_um or cavity.target_coupling_hz");
  }
  if (!waist && !target) {
    throw ConfigError(r.key("cavity.waist_um"), "missing required key (or set cavity.target_coupling_hz)");
  }
  if (waist) s.cavity.waist = *waist * 1e-6;
  if (target) s.target_coupling = *target * kTwoPi;
  s.target_power = r.positive("cavity.target_power_w", s.tweezer.power);
  if (const auto k = r.optional_positive("cavity.kappa_hz")) s.kappa = *k * kTwoPi;

  try {
    s.kind = parse_mode_kind(r.text("mode.kind", "torsional"));
  } catch (const DomainError& e) {
    throw ConfigError(r.key("mode.kind"), e.what());
  }
  s.detuning_ratio = r.number("mode.detuning_ratio", 1.0);
  s.coupling_ratio = r.optional("mode.coupling_ratio");

  s.gas.pressure = r.non_negative("gas.pressure_pa", 1e-4);
  s.gas.temperature = r.positive("gas.temperature_k", 300.0);
  s.gas.molecule_mass = r.positive("gas.molecule_mass_kg", constants::kAirMoleculeMass);
  s.gas.accommodation = r.fraction("gas.accommodation", 0.9, false, false);

  s.temperature = r.non_negative("mechanics.temperature_k", 300.0);
  if (const auto g = r.optional("mechanics.gamma_hz")) {
    if (!(*g >= 0.0)) throw ConfigError(r.key("mechanics.gamma_hz"), "must be non-negative");
    s.gamma_override = *g * kTwoPi;
  }
  return s;
}

struct Column {
  std::vector<std::string> names;
  std::size_t add(std::string name) {
    names.push_back(std::move(name));
    return names.size() - 1;
  }
};

using Row = std::vector<std::optional<double>>;

enum class Family { couplings_vs_power, couplings_vs_phase, entanglement };

struct ScenarioInfo {
  Family family;
  SweepAxis default_axis;
};

const std::map<std::string, ScenarioInfo>& registry() {
  static const std::map<std::string, ScenarioInfo> r = {
      {"fig2", {Family::couplings_vs_power, {"tweezer.power_w", 1e-3, 1.0, 31, true}}},
      {"figS2", {Family::couplings_vs_phase, {"cavity.phase_rad", 0.0, 2.0 * constants::kPi, 73, false}}},
      {"fig3a", {Family::entanglement, {"filter.gamma_rad_s", 1e2, 1e7, 41, true}}},
      {"fig3b", {Family::entanglement, {"filter.gamma_rad_s", 1e2, 1e7, 41, true}}},
      {"figS3", {Family::entanglement, {"filter.gamma_rad_s", 1e2, 1e7, 41, true}}},
      {"fig4a", {Family::entanglement, {"mechanics.temperature_k", 0.0, 300.0, 31, false}}},
      {"fig4b", {Family::entanglement, {"swap.eta", 0.5, 1.0, 26, false}}},
      {"custom", {Family::entanglement, {"", 0.0, 0.0, 0, false}}},
  };
  return r;
}

std::vector<std::string> columns_for(Family family, const std::string& axis_key) {
  std::vector<std::string> c = {axis_key};
  switch (family) {
    case Family::couplings_vs_power:
      c.insert(c.end(), {"omega_phi_hz", "omega_y_hz", "g_sphi_hz", "g_sy_hz", "ratio_phi", "ratio_y",
                         "cavity_waist_phi_um", "cavity_waist_y_um"});
      break;
    case Family::couplings_vs_phase:
      c.insert(c.end(), {"g_phi_hz", "g_sphi_hz", "g_y_hz", "g_sy_hz"});
      break;
    case Family::entanglement:
      c.insert(c.end(), {"omega_m_hz", "g_hz", "kappa_hz", "gamma_m_hz", "n_bar", "filter_gamma_rad_s", "eta1",
                         "eta2", "total_distance_km", "stable", "en_tms_tor", "en_bs_tor", "en_tms_bs",
                         "en_swap_bs", "en_swap_tms"});
      break;
  }
  return c;
}

Row couplings_vs_power_row(const ScenarioConfig& sc, double axis) {
  SystemConfig tor = sc.system;
  tor.kind = ModeKind::torsional;
  SystemConfig com = sc.com;
  com.kind = ModeKind::com;
  const SystemPoint pt = evaluate_system(tor);
  const SystemPoint pc = evaluate_system(com);
  const double wt = pt.mode.omega_m;
  const double wy = pc.mode.omega_m;
  const double gt = std::abs(pt.mode.g_cs);
  const double gy = std::abs(pc.mode.g_cs);
  return {axis, wt / kTwoPi, wy / kTwoPi, gt / kTwoPi, gy / kTwoPi, gt / wt, gy / wy, pt.cavity_waist * 1e6,
          pc.cavity_waist * 1e6};
}

Row couplings_vs_phase_row(const ScenarioConfig& sc, double axis) {
  SystemConfig tor = sc.system;
  tor.kind = ModeKind::torsional;
  SystemConfig com = sc.com;
  com.kind = ModeKind::com;
  // `sc` is the unswept config: waists are fitted at each branch's own phase,
  // then only the phase moves (a fit per point would chase the zeros).
  auto at_phase = [axis](SystemConfig s) {
    if (s.target_coupling) {
      s.cavity.waist = evaluate_system(s).cavity_waist;
      s.target_coupling.reset();
    }
    s.cavity.phase = axis;
    return evaluate_system(s).mode;
  };
  const ModeParams mt = at_phase(tor);
  const ModeParams my = at_phase(com);
  return {axis, mt.g_disp / kTwoPi, mt.g_cs / kTwoPi, my.g_disp / kTwoPi, my.g_cs / kTwoPi};
}

Row entanglement_row(const ScenarioConfig& sc, double axis) {
  sc.system.require_kappa();
  const SystemPoint p = evaluate_system(sc.system);
  if (!(sc.filter_gamma > 0.0)) throw ConfigError("filter.gamma_rad_s", "missing required key");
  const LinearModel& m = *p.model;

  std::optional<double> distance;
  if (sc.loss.alpha0 > 0.0 && sc.swap.eta1 <= sc.loss.eta0) {
    distance = 2.0 * 10.0 / sc.loss.alpha0 * std::log10(sc.loss.eta0 / sc.swap.eta1);
  }
  Row row = {axis, p.mode.omega_m / kTwoPi, p.g / kTwoPi, m.kappa / kTwoPi, p.gamma / kTwoPi, p.n_bar,
             sc.filter_gamma, sc.swap.eta1, sc.swap.eta2, distance};
  if (!is_stable(m)) {
    row.insert(row.end(), {0.0, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
    return row;
  }
  const OutputResult out = output_cm(m, sc.filter_gamma, sc.numerics);
  SwapSetup bs = sc.swap;
  bs.mode_choice = FilterKind::bs;
  SwapSetup tms = sc.swap;
  tms.mode_choice = FilterKind::tms;
  row.insert(row.end(), {1.0, pair_entanglement(out, OutputPair::tms_tor), pair_entanglement(out, OutputPair::bs_tor),
                         pair_entanglement(out, OutputPair::tms_bs), swap_entanglement(out, out, bs),
                         swap_entanglement(out, out, tms)});
  return row;
}

Row evaluate_point(Family family, const Config& base, const SweepAxis& axis, double value) {
  Config cfg = base;
  cfg.set(axis.key, format_double(value));
  const ScenarioConfig sc = load_config(cfg);
  const auto unused = cfg.unused_keys();
  if (std::find(unused.begin(), unused.end(), axis.key) != unused.end()) {
    throw ConfigError("sweep.key", "'" + axis.key + "' is not a parameter of this scenario");
  }
  switch (family) {
    case Family::couplings_vs_power: return couplings_vs_power_row(sc, value);
    case Family::couplings_vs_phase: return couplings_vs_phase_row(load_config(base), value);
    case Family::entanglement: break;
  }
  return entanglement_row(sc, value);
}

}  // namespace

double SystemConfig::require_kappa() const {
  if (!kappa) throw ConfigError("cavity.kappa_hz", "missing required key");
  return *kappa;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v;
  if (points <= 0) return v;
  if (points == 1) return {min};
  v.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    v.push_back(log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min));
  }
  v.front() = min;
  v.back() = max;
  return v;
}

ScenarioConfig load_config(const Config& cfg) {
  ScenarioConfig sc;
  sc.system = load_system(cfg, "");
  sc.com = load_system(cfg, "com.");

  if (const auto g = cfg.find_double("filter.gamma_rad_s")) {
    if (!(*g > 0.0)) throw ConfigError("filter.gamma_rad_s", "must be positive");
    sc.filter_gamma = *g;
  }
  if (const auto g = cfg.find_double("filter.gamma_hz")) {
    if (sc.filter_gamma > 0.0) throw ConfigError("filter.gamma_hz", "give either filter.gamma_hz or filter.gamma_rad_s");
    if (!(*g > 0.0)) throw ConfigError("filter.gamma_hz", "must be positive");
    sc.filter_gamma = *g * kTwoPi;
  }

  const Reader r(cfg, "");
  sc.swap.T_r = r.fraction("swap.transmissivity", 0.5, true, true);
  sc.loss.eta0 = r.fraction("swap.eta0", 1.0, true, false);
  sc.loss.alpha0 = r.non_negative("swap.alpha_db_km", 0.0);
  sc.loss.d = r.non_negative("swap.arm_km", 0.0);
  const double from_loss = detection_efficiency(sc.loss);
  const double eta = cfg.has("swap.eta") ? r.fraction("swap.eta", 1.0, true, false) : from_loss;
  sc.swap.eta1 = cfg.has("swap.eta1") ? r.fraction("swap.eta1", 1.0, true, false) : eta;
  sc.swap.eta2 = cfg.has("swap.eta2") ? r.fraction("swap.eta2", 1.0, true, false) : eta;

  if (cfg.has("sweep.key")) {
    SweepAxis a;
    a.key = cfg.get_string("sweep.key");
    a.min = cfg.get_double("sweep.min");
    a.max = cfg.get_double("sweep.max");
    const long n = cfg.get_int("sweep.points");
    if (n < 1 || n > 100000) throw ConfigError("sweep.points", "must lie in [1, 100000]");
    a.points = static_cast<int>(n);
    const std::string scale = cfg.get_string("sweep.scale", "linear");
    if (scale != "linear" && scale != "log") throw ConfigError("sweep.scale", "expected linear or log");
    a.log = scale == "log";
    if (a.log && !(a.min > 0.0 && a.max > 0.0)) throw ConfigError("sweep.min", "log sweeps need positive bounds");
    sc.sweep = a;
  }

  sc.numerics.rel_tol = cfg.get_double("numerics.rel_tol", 1e-6);
  if (!(sc.numerics.rel_tol > 0.0 && sc.numerics.rel_tol < 1e-2)) {
    throw ConfigError("numerics.rel_tol", "must lie in (0, 1e-2)");
  }
  return sc;
}

ScenarioConfig load_config(const std::filesystem::path& path) { return load_config(Config::load(path)); }

SystemPoint evaluate_system(const SystemConfig& sys) {
  const Polarizability pol = axis_polarizabilities(sys.geometry, sys.permittivity);
  CavityParams cavity = sys.cavity;
  if (sys.target_coupling) {
    TweezerParams at_fit = sys.tweezer;
    at_fit.power = sys.target_power;
    cavity.waist = solve_waist_for_target_coupling(sys.kind, *sys.target_coupling, at_fit, cavity, sys.geometry, pol);
  }
  SystemPoint p;
  p.cavity_waist = cavity.waist;
  p.mode = mode_params(sys.kind, sys.tweezer, cavity, sys.geometry, pol, 0.0);
  p.mode.Delta = sys.detuning_ratio * p.mode.omega_m;
  p.g = sys.coupling_ratio ? *sys.coupling_ratio * p.mode.omega_m : p.mode.g_cs;
  if (sys.gamma_override) {
    p.gamma = *sys.gamma_override;
  } else {
    p.gamma = sys.kind == ModeKind::torsional ? torsional_damping(sys.gas, sys.geometry)
                                              : com_damping(sys.gas, sys.geometry);
  }
  p.n_bar = thermal_occupation(p.mode.omega_m, sys.temperature);
  if (sys.kappa) p.model = build_model(p.mode.omega_m, p.g, p.gamma, p.n_bar, p.mode.Delta, *sys.kappa);
  return p;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("LEVITOSIM_JOBS"); env != nullptr && *env != '\0') {
    const auto v = parse_double(env);
    if (!v || *v < 1.0 || *v != std::floor(*v)) throw ConfigError("LEVITOSIM_JOBS", "expected a positive integer");
    return static_cast<unsigned>(*v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ResultTable run_scenario(const std::string& name, const Config& cfg, const RunOptions& opt) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("scenario", "unknown scenario '" + name + "'");
  const Family family = it->second.family;

  const ScenarioConfig sc = load_config(cfg);
  if (family == Family::entanglement) sc.system.require_kappa();
  SweepAxis axis = sc.sweep ? *sc.sweep : it->second.default_axis;
  if (axis.key.empty()) throw ConfigError("sweep.key", "the custom scenario needs a sweep axis");

  ResultTable table;
  table.columns = columns_for(family, axis.key);
  const std::vector<double> values = axis.values();
  std::vector<Row> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        rows[i] = evaluate_point(family, cfg, axis, values[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs == 0 ? default_jobs() : opt.jobs,
                                                        static_cast<unsigned>(std::max<std::size_t>(1, values.size()))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!errors[i]) continue;
    const std::string where = " [at " + axis.key + " = " + format_double(values[i]) + "]";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), std::string(e.what()).substr(e.key().size() + 2) + where);
    } catch (const InstabilityError& e) {
      throw InstabilityError(e.what() + where);
    } catch (const NumericalError& e) {
      throw NumericalError(e.what() + where);
    } catch (const DomainError& e) {
      throw DomainError(e.what() + where);
    }
  }
  for (auto& r : rows) table.add_row(std::move(r));
  return table;
}

}  // namespace levito
