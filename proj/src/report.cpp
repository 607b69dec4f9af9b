#include "ncfa/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ncfa {

NormReport exactReport(const std::string& name, double value, bool pass) {
  NormReport r;
  r.name = name;
  r.value = r.lower = r.upper = value;
  r.provenance = "exact";
  r.pass = pass;
  return r;
}

NormReport quadratureReport(const std::string& name, double value, double tol,
                            const std::string& net, bool pass) {
  NormReport r;
  r.name = name;
  r.value = r.lower = r.upper = value;
  std::ostringstream p;
  p << "quadrature(tol=" << tol << ";net=" << net << ")";
  r.provenance = p.str();
  r.pass = pass;
  return r;
}

NormReport boundReport(const std::string& name, double lower, double upper,
                       bool pass) {
  if (upper < lower) throw std::invalid_argument("boundReport: bounds out of order");
  NormReport r;
  r.name = name;
  r.lower = lower;
  r.upper = upper;
  r.value = 0.5 * (lower + upper);
  r.provenance = "bound";
  r.pass = pass;
  return r;
}

namespace {

std::string csvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void emitCsv(const SuiteReport& rep, std::ostream& os) {
  os << "suite,name,value,lower,upper,provenance,pass,metadata\n";
  os.precision(17);
  for (const NormReport& r : rep.reports) {
    if (r.provenance.empty()) throw std::logic_error("report without provenance");
    os << csvEscape(rep.suite) << ',' << csvEscape(r.name) << ',' << r.value << ','
       << r.lower << ',' << r.upper << ',' << csvEscape(r.provenance) << ','
       << (r.pass ? "pass" : "fail") << ',' << csvEscape(r.metadata) << '\n';
  }
}

void emitJson(const SuiteReport& rep, std::ostream& os) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const NormReport& r : rep.reports) {
    if (r.provenance.empty()) throw std::logic_error("report without provenance");
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["value"] = r.value;
    e["lower"] = r.lower;
    e["upper"] = r.upper;
    e["provenance"] = r.provenance;
    e["pass"] = r.pass;
    e["metadata"] = r.metadata;
    reports.push_back(e);
  }
  j["reports"] = reports;
  j["pass"] = rep.pass;
  os << j.dump(2) << '\n';
}

void emitReport(const SuiteReport& rep, const std::string& path,
                const std::string& format) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open report file " + path);
  if (format == "csv")
    emitCsv(rep, os);
  else if (format == "json")
    emitJson(rep, os);
  else
    throw std::invalid_argument("unknown report format: " + format);
  if (!os) throw std::runtime_error("failed writing report file " + path);
}

}  // namespace ncfa
