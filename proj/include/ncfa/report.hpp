#ifndef NCFA_REPORT_HPP
#define NCFA_REPORT_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ncfa {

// One reported quantity.  provenance is mandatory: "exact" for rational or
// closed-form results, "quadrature(tol=...;net=...)" for net-dependent
// values, "bound" for sandwich pairs.
struct NormReport {
  std::string name;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string provenance;
  std::string metadata;
  bool pass = true;
};

NormReport exactReport(const std::string& name, double value, bool pass = true);
NormReport quadratureReport(const std::string& name, double value, double tol,
                            const std::string& net, bool pass = true);
NormReport boundReport(const std::string& name, double lower, double upper,
                       bool pass = true);

struct SuiteReport {
  std::string suite;
  std::map<std::string, std::string> config;  // sorted, stable emission
  std::vector<NormReport> reports;
  bool pass = true;
};

void emitCsv(const SuiteReport& rep, std::ostream& os);
void emitJson(const SuiteReport& rep, std::ostream& os);
// format "csv" or "json"; throws on IO failure or unknown format.
void emitReport(const SuiteReport& rep, const std::string& path,
                const std::string& format);

}  // namespace ncfa

#endif
