#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>

#include "ncfa/atoms.hpp"
#include "ncfa/bmo.hpp"
#include "ncfa/ensemble.hpp"
#include "ncfa/green.hpp"
#include "ncfa/squarefn.hpp"
#include "ncfa/suites.hpp"
#include "ncfa/transform.hpp"

namespace py = pybind11;
using namespace ncfa;

namespace {

Side sideOf(const std::string& s) {
  if (s == "c") return Side::c;
  if (s == "r") return Side::r;
  throw std::invalid_argument("side must be 'c' or 'r'");
}

BmoMode modeOf(const std::string& s) {
  if (s == "all-grid-intervals") return BmoMode::AllGridIntervals;
  if (s == "dyadic-pair") return BmoMode::DyadicPair;
  if (s == "window-family") return BmoMode::WindowFamily;
  throw std::invalid_argument("unknown bmo mode: " + s);
}

MatrixField fieldFromArray(int J, int K,
                           const py::array_t<std::complex<double>>& values) {
  GridSpec g{J, K};
  if (values.ndim() != 3 || values.shape(1) != values.shape(2))
    throw std::invalid_argument("values must have shape (cells, d, d)");
  if (values.shape(0) != g.cellCount())
    throw std::invalid_argument("cell count mismatch for the given J, K");
  int d = int(values.shape(1));
  MatrixField f(g, d);
  auto v = values.unchecked<3>();
  for (std::int64_t i = 0; i < f.cellCount(); ++i)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) f.value(i)(r, c) = v(i, r, c);
  return f;
}

py::array_t<std::complex<double>> fieldToArray(const MatrixField& f) {
  py::array_t<std::complex<double>> out(
      {f.cellCount(), std::int64_t(f.dim), std::int64_t(f.dim)});
  auto v = out.mutable_unchecked<3>();
  for (std::int64_t i = 0; i < f.cellCount(); ++i)
    for (int r = 0; r < f.dim; ++r)
      for (int c = 0; c < f.dim; ++c) v(i, r, c) = f.value(i)(r, c);
  return out;
}

py::dict reportToDict(const SuiteReport& rep) {
  py::dict d;
  d["suite"] = rep.suite;
  d["pass"] = rep.pass;
  py::list reports;
  for (const NormReport& r : rep.reports) {
    py::dict e;
    e["name"] = r.name;
    e["value"] = r.value;
    e["lower"] = r.lower;
    e["upper"] = r.upper;
    e["provenance"] = r.provenance;
    e["pass"] = r.pass;
    reports.append(e);
  }
  d["reports"] = reports;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ncfa, m) {
  m.doc() = "operator-valued harmonic analysis toolkit";

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int J, int K) { return GridSpec{J, K}; }), py::arg("J"),
           py::arg("K"))
      .def_readonly("J", &GridSpec::J)
      .def_readonly("K", &GridSpec::K)
      .def_property_readonly("cell_count", &GridSpec::cellCount);

  py::class_<MatrixField>(m, "MatrixField")
      .def_property_readonly("grid", [](const MatrixField& f) { return f.grid; })
      .def_property_readonly("dim", [](const MatrixField& f) { return f.dim; })
      .def_property_readonly("values", &fieldToArray)
      .def("__add__", &MatrixField::operator+)
      .def("__sub__", &MatrixField::operator-);

  m.def("make_field", &fieldFromArray, py::arg("J"), py::arg("K"),
        py::arg("values"), "build a step field from a (cells, d, d) array");
  m.def("save_field",
        [](const MatrixField& f, const std::string& path) { saveField(f, path); });
  m.def("load_field",
        [](const std::string& path) { return loadField(path); });

  m.def(
      "hardy_norm",
      [](const MatrixField& f, double p, const std::string& side, int refinement) {
        return hardyNorm(f, p, sideOf(side), ConeGrid::forGrid(f.grid, refinement));
      },
      py::arg("f"), py::arg("p") = 2.0, py::arg("side") = "c",
      py::arg("refinement") = 1);

  m.def(
      "bmo_norm",
      [](const MatrixField& f, const std::string& side, const std::string& mode) {
        BmoReport r = bmoNorm(f, sideOf(side), modeOf(mode));
        py::dict d;
        d["lower"] = r.lower;
        d["upper"] = r.upper;
        d["exact"] = r.exact;
        return d;
      },
      py::arg("f"), py::arg("side") = "c", py::arg("mode") = "all-grid-intervals");

  m.def(
      "green_energy",
      [](const MatrixField& f, int refinement) {
        GreenResult r = greenEnergy(f, ConeGrid::forGrid(f.grid, refinement));
        py::dict d;
        d["energy"] = r.energy;
        d["l2sq"] = r.l2sq;
        d["mean_norm"] = r.meanNorm;
        d["mean_zero"] = r.meanZero;
        return d;
      },
      py::arg("f"), py::arg("refinement") = 1);

  m.def("psiphi_identity_error", &psiphiIdentityError, py::arg("f"),
        py::arg("refinement") = 1);

  m.def("hilbert", [](const MatrixField& f) {
    return multiplierApply(f, hilbertSymbol(f.cellCount()));
  });

  m.def(
      "decompose_stats",
      [](const MatrixField& f) {
        Decomposition dec = decompose(f);
        MatrixField rec = reconstruct(dec, f.grid, f.dim);
        bool bitwise = true;
        for (std::int64_t i = 0; i < f.cellCount(); ++i)
          if ((rec.value(i) - f.value(i)).norm() != 0.0) bitwise = false;
        bool certs = true;
        for (const AtomTerm& t : dec.terms) certs = certs && t.certificate.valid;
        py::dict d;
        d["terms"] = dec.terms.size();
        d["coefficient_l1"] = dec.coefficientL1;
        d["bitwise_reconstruction"] = bitwise;
        d["certificates_valid"] = certs;
        return d;
      },
      py::arg("f"));

  m.def(
      "generate_ensemble",
      [](const std::string& kind, int d, int J, int K, std::uint64_t seed,
         int count, bool mean_zero) {
        EnsembleSpec es;
        if (kind == "gaussian") es.kind = EnsembleSpec::Kind::GaussianStep;
        else if (kind == "psd") es.kind = EnsembleSpec::Kind::PsdStep;
        else if (kind == "martingale") es.kind = EnsembleSpec::Kind::Martingale;
        else if (kind == "block") es.kind = EnsembleSpec::Kind::BlockConstant;
        else if (kind == "quantized") es.kind = EnsembleSpec::Kind::QuantizedMeanZero;
        else if (kind == "atom") es.kind = EnsembleSpec::Kind::Atom;
        else throw std::invalid_argument("unknown ensemble kind: " + kind);
        es.grid = GridSpec{J, K};
        es.dim = d;
        es.seed = seed;
        es.count = count;
        es.meanZero = mean_zero;
        return generateEnsemble(es);
      },
      py::arg("kind"), py::arg("d") = 2, py::arg("J") = 1, py::arg("K") = 6,
      py::arg("seed") = 0, py::arg("count") = 1, py::arg("mean_zero") = false);

  m.def(
      "run_suite",
      [](const std::string& suite, int d, int J, int K, std::uint64_t seed,
         int ensemble, int refinement) {
        ExperimentConfig cfg;
        cfg.suite = suite;
        cfg.d = d;
        cfg.J = J;
        cfg.K = K;
        cfg.seed = seed;
        cfg.ensembleSize = ensemble;
        cfg.coneRefinement = refinement;
        return reportToDict(runSuite(cfg));
      },
      py::arg("suite"), py::arg("d") = 2, py::arg("J") = 1, py::arg("K") = 6,
      py::arg("seed") = 0, py::arg("ensemble") = 10, py::arg("refinement") = 1);
}
