// cmelab: simulation and bound-evaluation driver.
//
// Every configuration key of a subcommand is also a flag of the same name, so
// `--lambda-coef 1e-3` overrides `lambda-coef = ...` from --config, which in
// turn overrides the built-in default.

#include "cme/app/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

using cme::app::Command;

struct Subcommand {
  Command command;
  CLI::App* app;
  std::string config_file;
  bool dry_run = false;
  std::map<std::string, std::string> flags;
};

const char* describe(const std::string& key) {
  static const std::map<std::string, const char*> help = {
      {"scenario", "simulation scenario (ConsA, ConsB, ConsC)"},
      {"n", "training sample size"},
      {"n-list", "comma-separated sample sizes"},
      {"seed", "PRNG seed"},
      {"seed-list", "comma-separated replicate seeds"},
      {"lambda-coef", "lambda_n = coef * n^(-exp)"},
      {"lambda-exp", "lambda_n = coef * n^(-exp)"},
      {"bandwidth-x", "Gaussian kernel precision on X"},
      {"bandwidth-y", "Gaussian kernel precision on Y"},
      {"bandwidth-z", "Gaussian kernel precision on Z"},
      {"noise-scale", "noise standard deviation, or 'auto' for the scenario default"},
      {"test-size", "held-out sample size for the surrogate loss"},
      {"grid-size", "number of evaluation points in z"},
      {"witness-grid-size", "witness grid points per axis"},
      {"witness-out", "also write the witness field to this CSV"},
      {"dep-strength", "dependence strength of the dependent sample"},
      {"dep-strength-strong", "dependence strength of the strongly dependent sample"},
      {"mode", "additive, multiplicative or both"},
      {"b-x", "bound on the X kernel"},
      {"b-z", "bound on the Z kernel"},
      {"kappa1", "bound on the operator-valued kernel"},
      {"norm-f", "RKHS norm of the target"},
      {"delta", "confidence parameter in (0, 1)"},
      {"out", "output CSV path"},
  };
  const auto it = help.find(key);
  return it == help.end() ? "" : it->second;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional mean embedding simulation lab"};
  app.require_subcommand(1);

  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Consistency, "surrogate loss of fitted embeddings against sample size"},
      {Command::Mcmd, "conditional discrepancy curves between two samples"},
      {Command::Hscic, "conditional independence curves"},
      {Command::Bounds, "stability and rate bounds against sample size"},
      {Command::Selftest, "closed forms against brute-force and Monte Carlo oracles"},
  };

  std::vector<Subcommand> subs;
  subs.reserve(commands.size());
  for (const auto& [command, summary] : commands) {
    Subcommand& sub = subs.emplace_back();
    sub.command = command;
    sub.app = app.add_subcommand(std::string(cme::app::to_string(command)), summary);
    sub.app->add_option("--config", sub.config_file, "key = value configuration file")
        ->check(CLI::ExistingFile);
    sub.app->add_flag("--dry-run", sub.dry_run, "print the resolved configuration and exit");
    const cme::app::ConfigMap defaults = cme::app::default_config(command);
    for (const auto& [key, value] : defaults.entries()) {
      std::string help = describe(key);
      help += help.empty() ? "" : " ";
      help += "[default: " + (value.empty() ? std::string("none") : value) + "]";
      sub.app->add_option("--" + key, sub.flags[key], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (Subcommand& sub : subs) {
    if (!sub.app->parsed()) continue;
    try {
      cme::app::ConfigMap overrides;
      for (const auto& [key, value] : sub.flags) {
        if (sub.app->get_option("--" + key)->count() > 0) overrides.set(key, value);
      }
      std::optional<std::filesystem::path> file;
      if (!sub.config_file.empty()) file = sub.config_file;
      const cme::app::ConfigMap resolved = cme::app::resolve_config(sub.command, file, overrides);
      return cme::app::execute(sub.command, resolved, sub.dry_run, std::cout, std::cerr);
    } catch (const cme::app::ConfigError& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
