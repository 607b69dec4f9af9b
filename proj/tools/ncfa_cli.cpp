#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ncfa/suites.hpp"

namespace {

// --tol.<name> <value> and --tol.<name>=<value> are pulled out before
// CLI11 sees the argument list, since the flag names are open-ended.
std::vector<std::string> extractTolerances(std::vector<std::string> args,
                                           std::map<std::string, double>& tols) {
  std::vector<std::string> rest;
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--tol.", 0) == 0) {
      std::string name, value;
      size_t eq = a.find('=');
      if (eq != std::string::npos) {
        name = a.substr(6, eq - 6);
        value = a.substr(eq + 1);
      } else {
        name = a.substr(6);
        if (i + 1 >= args.size())
          throw std::runtime_error("missing value for " + a);
        value = args[++i];
      }
      if (name.empty()) throw std::runtime_error("empty tolerance name");
      tols[name] = std::stod(value);
    } else {
      rest.push_back(a);
    }
  }
  return rest;
}

void applyConfigFile(const std::string& path, ncfa::ExperimentConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::istringstream check(line);
      std::string tok;
      if (check >> tok) throw std::runtime_error("config line without '=': " + line);
      continue;
    }
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "suite") cfg.suite = value;
    else if (key == "d") cfg.d = std::stoi(value);
    else if (key == "J") cfg.J = std::stoi(value);
    else if (key == "K") cfg.K = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "ensemble") cfg.ensembleSize = std::stoi(value);
    else if (key == "cone-refine") cfg.coneRefinement = std::stoi(value);
    else if (key == "out") cfg.outPath = value;
    else if (key == "format") cfg.format = value;
    else if (key.rfind("tol.", 0) == 0) cfg.tolerances[key.substr(4)] = std::stod(value);
    else throw std::runtime_error("unknown config key: " + key);
  }
}

std::string outPathFor(const ncfa::ExperimentConfig& cfg, const std::string& suite,
                       bool multi) {
  if (cfg.outPath.empty() || !multi) return cfg.outPath;
  size_t dot = cfg.outPath.rfind('.');
  if (dot == std::string::npos) return cfg.outPath + "-" + suite;
  return cfg.outPath.substr(0, dot) + "-" + suite + cfg.outPath.substr(dot);
}

int runVerify(const ncfa::ExperimentConfig& cfg) {
  std::vector<std::string> suites;
  if (cfg.suite == "all")
    suites = ncfa::suiteNames();
  else
    suites.push_back(cfg.suite);
  bool allPass = true;
  for (const std::string& name : suites) {
    ncfa::ExperimentConfig one = cfg;
    one.suite = name;
    ncfa::SuiteReport rep = ncfa::runSuite(one);
    allPass = allPass && rep.pass;
    std::cout << name << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    std::string path = outPathFor(cfg, name, suites.size() > 1);
    if (!path.empty()) ncfa::emitReport(rep, path, cfg.format);
  }
  return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  ncfa::ExperimentConfig cfg;
  std::map<std::string, double> cliTols;
  std::string configPath;

  CLI::App app{"operator-valued harmonic analysis experiment runner"};
  app.require_subcommand(1);
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--config", configPath, "key=value config file");
  std::string suite;
  int d = -1, J = -1, K = -1, ensemble = -1, refine = -1;
  std::int64_t seed = -1;
  std::string out, format;
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--d", d, "matrix dimension");
  verify->add_option("--J", J, "window exponent: W = (-2^J, 2^J]");
  verify->add_option("--K", K, "grid exponent: cell width 2^-K / 3");
  verify->add_option("--seed", seed, "ensemble seed");
  verify->add_option("--ensemble", ensemble, "ensemble size");
  verify->add_option("--cone-refine", refine, "cone net refinement");
  verify->add_option("--out", out, "report output path");
  verify->add_option("--format", format, "report format: csv or json");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = extractTolerances(args, cliTols);
    std::vector<const char*> argvFiltered;
    argvFiltered.push_back(argv[0]);
    for (const std::string& a : args) argvFiltered.push_back(a.c_str());
    app.parse(int(argvFiltered.size()), argvFiltered.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!configPath.empty()) applyConfigFile(configPath, cfg);
    // CLI flags override the file
    if (!suite.empty()) cfg.suite = suite;
    if (d >= 0) cfg.d = d;
    if (J >= 0) cfg.J = J;
    if (K >= 0) cfg.K = K;
    if (seed >= 0) cfg.seed = std::uint64_t(seed);
    if (ensemble >= 0) cfg.ensembleSize = ensemble;
    if (refine >= 0) cfg.coneRefinement = refine;
    if (!out.empty()) cfg.outPath = out;
    if (!format.empty()) cfg.format = format;
    for (const auto& [k, v] : cliTols) cfg.tolerances[k] = v;
    if (cfg.format != "csv" && cfg.format != "json")
      throw std::runtime_error("unknown report format: " + cfg.format);
    if (cfg.suite != "all") {
      const auto& names = ncfa::suiteNames();
      if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw std::runtime_error("unknown suite: " + cfg.suite);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    return runVerify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
