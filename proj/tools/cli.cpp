#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sl2h/errors.hpp"
#include "sl2h/reports.hpp"

using namespace sl2h;
using reports::json;

namespace {

enum Exit { kPass = 0, kVerdict = 1, kUsage = 2, kResource = 3 };

int error_exit(const std::string& kind, const std::string& msg, int code) {
  json e;
  e["error"] = kind;
  e["message"] = msg;
  e["exit_code"] = code;
  std::cout << e.dump(2) << "\n";
  return code;
}

int classify_error(const Error& e) {
  if (e.is_resource()) return kResource;
  static const std::set<std::string> usage = {"ConfigError", "ParseError", "Unsupported"};
  return usage.count(e.kind()) ? kUsage : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke algebra, orbital integral and cocycle checks for SL(2, Q_p)"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  reports::EngineConfig cfg;
  std::string config_path;
  std::optional<int> p, prec, level, lambda_max;
  std::optional<unsigned long long> seed;
  std::string scalar_mode;
  std::optional<double> tolerance;
  std::string report_dir;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--p", p, "residue characteristic");
  app.add_option("--precision,-N", prec, "absolute p-adic working precision");
  app.add_option("--level,-n", level, "level n");
  app.add_option("--lambda-max", lambda_max, "largest truncation radius");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--scalar-mode", scalar_mode, "exact | float");
  app.add_option("--tolerance", tolerance, "float mode tolerance");
  app.add_option("--report-dir", report_dir, "also write the report to <dir>/<command>.json");

  std::string fspec = "indicator:K0", gspec = "[[0,1],[-1,0]]";
  std::optional<std::string> hspec;
  auto* wo = app.add_subcommand("wo", "truncated orbital series and WO_g(f)");
  wo->set_help_flag("--help", "print help");
  wo->add_option("--f", fspec, "zero | indicator:K<n> | shell:<m> | dcoset:<n>:<matrix> | e_sigma:cusp<i> | m_rho:cusp<i> | file:<path>");
  wo->add_option("--g", gspec, "compact group element, e.g. \"[[2,0],[0,inv(2)]]\"");
  wo->add_option("--h", hspec, "optional conjugator");

  std::string panel = "elliptic";
  auto* cv = app.add_subcommand("char-verify", "orbital integrals of cuspidal coefficients vs character values");
  cv->add_option("--q", p, "residue field size (3 or 5)");
  cv->add_option("--panel", panel, "elliptic | split | all");

  int trials = 20;
  auto* wl = app.add_subcommand("weightless", "weightlessness certificate and conjugation invariance");
  wl->add_option("--f", fspec, "function spec as for wo");
  wl->add_option("--trials", trials, "number of random conjugators");

  std::string check = "all";
  int tate_trials = 100;
  auto* ta = app.add_subcommand("tate", "central extension cocycle checks");
  ta->add_option("--check", check, "cocycle-identity | sigma-id | shift | commutator | all");
  ta->add_option("--trials", tate_trials, "random triples for the cocycle identity");

  std::string complex = "star";
  int lambda = 3;
  auto* ho = app.add_subcommand("homology", "finite windows of the orbit complexes");
  ho->add_option("--complex", complex, "star | elliptic | split-estimate | elliptic-estimate");
  ho->add_option("--lambda", lambda, "window radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return error_exit("UsageError", e.what(), kUsage);
  }

  json report;
  try {
    if (!config_path.empty()) reports::apply_config(cfg, reports::read_config_file(config_path));
    // command-line flags override the file
    if (p) cfg.p = *p;
    if (prec) cfg.precision = *prec;
    if (level) cfg.level = *level;
    if (lambda_max) cfg.lambda_max = *lambda_max;
    if (seed) cfg.seed = *seed;
    if (!scalar_mode.empty()) cfg.scalar_mode = scalar_mode;
    if (tolerance) cfg.tolerance = tolerance;
    if (!report_dir.empty()) cfg.report_dir = report_dir;
    cfg.validate();

    if (*wo) report = reports::report_wo(cfg, fspec, gspec, hspec);
    else if (*cv) report = reports::report_char_verify(cfg, panel);
    else if (*wl) report = reports::report_weightless(cfg, fspec, trials);
    else if (*ta) report = reports::report_tate(cfg, check, tate_trials);
    else report = reports::report_homology(cfg, complex, lambda);
  } catch (const Error& e) {
    return error_exit(e.kind(), e.what(), classify_error(e));
  } catch (const std::bad_alloc&) {
    return error_exit("OutOfMemoryBudget", "allocation failed", kResource);
  } catch (const std::exception& e) {
    return error_exit("InternalError", e.what(), kVerdict);
  }

  std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!cfg.report_dir.empty()) {
    std::filesystem::create_directories(cfg.report_dir);
    std::ofstream(std::filesystem::path(cfg.report_dir) / (report["command"].get<std::string>() + ".json")) << text << "\n";
  }
  return report["pass"].get<bool>() ? kPass : kVerdict;
}
