#ifndef NCFA_SUITES_HPP
#define NCFA_SUITES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncfa/report.hpp"

namespace ncfa {

struct ExperimentConfig {
  std::string suite = "all";
  int d = 2;
  int J = 1;
  int K = 6;
  std::uint64_t seed = 0;
  int ensembleSize = 100;
  int coneRefinement = 1;
  std::map<std::string, double> tolerances;  // overrides, keyed by name
  std::string outPath;
  std::string format = "json";
};

// All runnable suite names, in execution order for "all".
const std::vector<std::string>& suiteNames();

// Executes one named suite (not "all").  Throws std::invalid_argument on
// an unknown suite or invalid config.
SuiteReport runSuite(const ExperimentConfig& cfg);

}  // namespace ncfa

#endif
