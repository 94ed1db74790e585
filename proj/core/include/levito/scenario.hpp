#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levito/bell_swap.hpp"
#include "levito/config.hpp"
#include "levito/csv.hpp"
#include "levito/dynamics.hpp"
#include "levito/ellipsoid.hpp"
#include "levito/gas_damping.hpp"
#include "levito/output_filter.hpp"
#include "levito/trap_cavity.hpp"

namespace levito {

/// One levitated system. Everything is SI with angular rates; the Hz and
/// nm/um/mm conversions happen in load_config.
struct SystemConfig {
  EllipsoidGeometry geometry;
  double permittivity = 2.1;  // relative
  TweezerParams tweezer;
  CavityParams cavity;  // waist is filled in by the fit when a target coupling is set
  std::optional<double> target_coupling;  // rad/s
  double target_power = 0.0;              // W, tweezer power at which the fit is made
  ModeKind kind = ModeKind::torsional;
  std::optional<double> kappa;            // rad/s; never defaulted
  double detuning_ratio = 1.0;            // Delta / omega_m
  std::optional<double> coupling_ratio;   // g / omega_m, replaces the computed coupling
  GasParams gas;
  double temperature = 300.0;             // K, bath of the mechanical mode
  std::optional<double> gamma_override;   // rad/s

  double require_kappa() const;  // throws ConfigError for cavity.kappa_hz
};

struct SweepAxis {
  std::string key;  // any config key
  double min = 0.0;
  double max = 0.0;
  int points = 1;
  bool log = false;

  std::vector<double> values() const;
};

struct ScenarioConfig {
  SystemConfig system;
  SystemConfig com;       // system with the com.* overrides applied (fig2, figS2)
  double filter_gamma = 0.0;  // rad/s, 0 when not given
  SwapSetup swap;
  LossChannel loss;
  std::optional<SweepAxis> sweep;
  OutputOptions numerics;
};

/// Validated scenario description. Throws ConfigError naming the key.
ScenarioConfig load_config(const Config& cfg);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Physical state of a system at one parameter point.
struct SystemPoint {
  ModeParams mode;
  double cavity_waist = 0.0;  // m, fitted or given
  double g = 0.0;             // rad/s, coupling used in the dynamics
  double gamma = 0.0;         // rad/s
  double n_bar = 0.0;
  std::optional<LinearModel> model;  // only when kappa is known
};

SystemPoint evaluate_system(const SystemConfig& sys);

const std::vector<std::string>& scenario_names();

struct RunOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
};

/// Run a named scenario over its sweep axis (the config's sweep.* keys, or the
/// scenario's default axis). Unstable points give rows with stable = 0 and
/// empty entanglement cells. Numerical failures are rethrown with the sweep
/// point in the message.
ResultTable run_scenario(const std::string& name, const Config& cfg, const RunOptions& opt = {});

/// Jobs from LEVITOSIM_JOBS, else the hardware concurrency (at least 1).
unsigned default_jobs();

}  // namespace levito
