// levitosim: reproduction sweeps for levitated-ellipsoid optomechanics.
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 configuration or
// usage error, 3 numerical failure (instability, quadrature, unphysical CM).

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "levito/error.hpp"
#include "levito/scenario.hpp"

int run_check_suite(unsigned seed, bool verbose);

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void warn_unused(const levito::Config& cfg) {
  // load_config reads every key it knows; leftovers are probably typos.
  (void)levito::load_config(cfg);
  for (const auto& k : cfg.unused_keys()) {
    if (k.rfind("sweep.", 0) == 0) continue;
    std::cerr << "levitosim: warning: unused config key '" << k << "'\n";
  }
}

int cmd_run(const std::string& scenario, const std::string& config_path, const std::string& out_path,
            unsigned jobs) {
  const auto cfg = levito::Config::load(config_path);
  warn_unused(cfg);
  levito::RunOptions opt;
  opt.jobs = jobs == 0 ? levito::default_jobs() : jobs;
  const auto table = levito::run_scenario(scenario, cfg, opt);
  if (out_path == "-") {
    levito::write_csv(std::cout, table);
  } else {
    levito::emit_csv(table, out_path);
    std::cerr << "levitosim: wrote " << table.rows.size() << " rows to " << out_path << '\n';
  }
  return 0;
}

int cmd_fit_waist(const std::string& config_path, double target_hz, const std::string& kind) {
  auto cfg = levito::Config::load(config_path);
  if (target_hz > 0.0) {
    cfg.erase("cavity.waist_um");
    cfg.set("cavity.target_coupling_hz", levito::format_double(target_hz));
  }
  if (!kind.empty()) cfg.set("mode.kind", kind);
  if (!cfg.has("cavity.target_coupling_hz")) {
    throw levito::ConfigError("cavity.target_coupling_hz", "missing; pass --target-hz or set it in the config");
  }
  const auto sc = levito::load_config(cfg);
  const auto p = levito::evaluate_system(sc.system);
  std::printf("mode            %s\n", std::string(levito::to_string(sc.system.kind)).c_str());
  std::printf("cavity_waist_um %.10g\n", p.cavity_waist * 1e6);
  std::printf("omega_m_hz      %.10g\n", p.mode.omega_m / levito::constants::kTwoPi);
  std::printf("g_cs_hz         %.10g\n", std::abs(p.mode.g_cs) / levito::constants::kTwoPi);
  std::printf("g_disp_hz       %.10g\n", std::abs(p.mode.g_disp) / levito::constants::kTwoPi);
  std::printf("ratio           %.10g\n", std::abs(p.mode.g_cs) / p.mode.omega_m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levitosim - levitated nano-ellipsoid optomechanics sweeps"};
  app.require_subcommand(1);

  std::string scenario;
  std::string config_path;
  std::string out_path;
  unsigned jobs = 0;
  auto* run = app.add_subcommand("run", "run a named scenario and write a CSV table");
  run->add_option("scenario", scenario, "fig2 | fig3a | fig3b | fig4a | fig4b | figS2 | figS3 | custom")->required();
  run->add_option("--config", config_path, "scenario config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "output CSV path, '-' for stdout")->required();
  run->add_option("--jobs", jobs, "parallel sweep points (default: LEVITOSIM_JOBS or all cores)")
      ->check(CLI::PositiveNumber);

  std::string fit_config;
  double target_hz = 0.0;
  std::string fit_kind;
  auto* fit = app.add_subcommand("fit-waist", "cavity waist giving a target coherent-scattering coupling");
  fit->add_option("--config", fit_config, "config file")->required()->check(CLI::ExistingFile);
  fit->add_option("--target-hz", target_hz, "target g/2pi in Hz (overrides cavity.target_coupling_hz)");
  fit->add_option("--kind", fit_kind, "torsional | com (overrides mode.kind)");

  unsigned seed = 12345;
  bool verbose = false;
  auto* check = app.add_subcommand("check", "run the built-in invariant checks");
  check->add_option("--seed", seed, "random seed for the randomized checks");
  check->add_flag("-v,--verbose", verbose, "print every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(scenario, config_path, out_path, jobs);
    if (*fit) return cmd_fit_waist(fit_config, target_hz, fit_kind);
    if (*check) return run_check_suite(seed, verbose) == 0 ? 0 : kExitNumerical;
  } catch (const levito::ConfigError& e) {
    std::cerr << "levitosim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const levito::DomainError& e) {
    std::cerr << "levitosim: invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const levito::NumericalError& e) {
    std::cerr << "levitosim: numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "levitosim: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
