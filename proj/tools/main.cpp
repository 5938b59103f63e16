// Command-line front end: verification stages and obstruction integrals on
// the built-in SU(2) ~ S^3 model.
//
// Exit status: 0 all checks pass, 1 a verification stage fails,
// 2 configuration error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "triad/errors.hpp"
#include "triad/report.hpp"

namespace {

struct CommonOpts {
  double nu = 1.0;
  int nodes = 32;
  double epsilon = 0.0;
  std::string t_preset = "paper";
  std::optional<double> t1_const, t2_const;
  std::uint64_t seed = 20240817;
  std::string output = "text";
  std::vector<std::string> tolerance_args;
  std::string tolerance_file;
  std::string lane = "auto";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--nu", o.nu, "inverse-length scale (sphere radius 2/nu)")
      ->capture_default_str();
  cmd->add_option("--nodes", o.nodes, "Gauss-Legendre nodes per chart axis")
      ->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon,
                  "theta singularity margin (default 1e-6/nu when unset)");
  cmd->add_option("--t-preset", o.t_preset, "gauge preset for both connections")
      ->check(CLI::IsMember({"zero", "paper"}))
      ->capture_default_str();
  cmd->add_option("--t1", o.t1_const,
                  "constant gauge for the first connection (overrides preset)");
  cmd->add_option("--t2", o.t2_const,
                  "constant gauge for the second connection (overrides preset)");
  cmd->add_option("--seed", o.seed, "seed for the randomized checks")->capture_default_str();
  cmd->add_option("-o,--output", o.output, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("-T,--tolerance", o.tolerance_args,
                  "stage tolerance override, repeatable: name=value");
  cmd->add_option("--tolerance-file", o.tolerance_file,
                  "JSON file {stage: tolerance}; default from $TRIAD_TOLERANCES");
  cmd->add_option("--lane", o.lane, "kernel lane selection")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
}

void load_tolerances(const CommonOpts& o, triad::RunConfig& cfg) {
  std::string path = o.tolerance_file;
  if (path.empty()) {
    if (const char* env = std::getenv("TRIAD_TOLERANCES")) path = env;
  }
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw triad::ConfigError("cannot open tolerance file '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw triad::ConfigError("tolerance file '" + path + "': " + e.what());
    }
    for (const auto& [k, v] : j.items()) {
      if (!v.is_number()) throw triad::ConfigError("tolerance '" + k + "' must be a number");
      cfg.tolerance_overrides[k] = v.get<double>();
    }
  }
  for (const std::string& arg : o.tolerance_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos)
      throw triad::ConfigError("tolerance override '" + arg + "' is not name=value");
    try {
      cfg.tolerance_overrides[arg.substr(0, eq)] = std::stod(arg.substr(eq + 1));
    } catch (const std::exception&) {
      throw triad::ConfigError("tolerance override '" + arg + "' has a bad value");
    }
  }
}

triad::RunConfig make_config(const CommonOpts& o) {
  triad::RunConfig cfg;
  cfg.nu = o.nu;
  cfg.nodes_per_axis = o.nodes;
  cfg.epsilon = o.epsilon;
  cfg.seed = o.seed;
  const auto preset =
      o.t_preset == "zero" ? triad::GaugePreset::zero() : triad::GaugePreset::paper();
  cfg.t1 = o.t1_const ? triad::GaugePreset::constant(*o.t1_const) : preset;
  cfg.t2 = o.t2_const ? triad::GaugePreset::constant(*o.t2_const) : preset;
  load_tolerances(o, cfg);
  return cfg;
}

void apply_lane(const std::string& lane) {
  if (lane == "scalar")
    triad::simd::force_lane(triad::simd::Lane::scalar);
  else if (lane == "avx2")
    triad::simd::force_lane(triad::simd::Lane::avx2);
  else
    triad::simd::force_lane(std::nullopt);
}

int finish(const triad::ObstructionReport& rep, const std::string& output) {
  if (output == "json")
    std::cout << triad::emit_report(rep);
  else
    std::cout << triad::format_report_text(rep);
  if (rep.pass) return 0;
  std::ostringstream failed;
  for (const auto& s : rep.stages)
    if (!s.pass) failed << (failed.tellp() > 0 ? ", " : "") << s.name;
  std::cerr << "verification failed at stage(s): " << failed.str() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerical exterior-calculus verification of the globally bi-Hamiltonian but\n"
      "globally incompatible structure on S^3: Maurer-Cartan coframe, curl\n"
      "eigenforms, Poisson pairs, connections, and the obstruction integrals"};
  app.require_subcommand(1);

  CommonOpts vo, io;
  std::string stage = "all";
  std::string forms = "poisson";
  std::string target;

  CLI::App* verify = app.add_subcommand("verify", "run verification stages");
  verify->add_option("stage", stage, "stage to run")
      ->check(CLI::IsMember({"maurer-cartan", "hodge", "eigenvalue", "jacobi", "compatibility",
                             "connections", "all"}))
      ->capture_default_str();
  verify->add_option("--forms", forms, "pair checked by the compatibility stage")
      ->check(CLI::IsMember({"poisson", "unit-sections"}))
      ->capture_default_str();
  add_common(verify, vo);

  CLI::App* integrate = app.add_subcommand("integrate", "compute one obstruction integral");
  integrate->add_option("target", target, "integral to compute")
      ->required()
      ->check(CLI::IsMember({"xi", "bott", "volume"}));
  add_common(integrate, io);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      apply_lane(vo.lane);
      triad::RunConfig cfg = make_config(vo);
      cfg.compat_forms = forms == "unit-sections" ? triad::CompatForms::unit_sections
                                                  : triad::CompatForms::poisson;
      return finish(triad::run_verification(cfg, stage), vo.output);
    }
    apply_lane(io.lane);
    return finish(triad::run_integral(make_config(io), target), io.output);
  } catch (const triad::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const triad::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
