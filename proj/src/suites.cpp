#include "ncfa/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ncfa/atoms.hpp"
#include "ncfa/bmo.hpp"
#include "ncfa/dyadic.hpp"
#include "ncfa/ensemble.hpp"
#include "ncfa/green.hpp"
#include "ncfa/maximal.hpp"
#include "ncfa/squarefn.hpp"
#include "ncfa/transform.hpp"

namespace ncfa {

namespace {

double tolOf(const ExperimentConfig& cfg, const std::string& name, double fallback) {
  auto it = cfg.tolerances.find(name);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

GridSpec gridOf(const ExperimentConfig& cfg) {
  if (cfg.K < 2) throw std::invalid_argument("config: K >= 2 required");
  if (cfg.J < 0) throw std::invalid_argument("config: J >= 0 required");
  return {cfg.J, cfg.K};
}

EnsembleSpec baseEnsemble(const ExperimentConfig& cfg, EnsembleSpec::Kind kind) {
  if (cfg.d < 1) throw std::invalid_argument("config: d >= 1 required");
  if (cfg.ensembleSize < 1) throw std::invalid_argument("ensembleSize must be >= 1");
  EnsembleSpec es;
  es.kind = kind;
  es.grid = gridOf(cfg);
  es.dim = cfg.d;
  es.seed = cfg.seed;
  es.count = cfg.ensembleSize;
  return es;
}

std::string netDesc(const ConeGrid& c) {
  std::ostringstream os;
  os << "yMin=" << c.yMin << ";yMax=" << c.yMax << ";lpo=" << c.levelsPerOctave();
  return os.str();
}

void stampConfig(SuiteReport& rep, const ExperimentConfig& cfg) {
  rep.config["suite"] = rep.suite;
  rep.config["d"] = std::to_string(cfg.d);
  rep.config["J"] = std::to_string(cfg.J);
  rep.config["K"] = std::to_string(cfg.K);
  rep.config["seed"] = std::to_string(cfg.seed);
  rep.config["ensemble"] = std::to_string(cfg.ensembleSize);
  rep.config["coneRefine"] = std::to_string(cfg.coneRefinement);
}

void finish(SuiteReport& rep) {
  rep.pass = true;
  for (const NormReport& r : rep.reports) rep.pass = rep.pass && r.pass;
}

// ---------------------------------------------------------------- green

SuiteReport suiteGreen(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "green";
  double tol = tolOf(cfg, "green", 0.02);
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::GaussianStep);
  es.meanZero = true;
  ConeGrid trunc = ConeGrid::forGrid(es.grid, cfg.coneRefinement);
  double maxRel = 0.0, sumRel = 0.0;
  for (const MatrixField& f : generateEnsemble(es)) {
    GreenResult r = greenEnergy(f, trunc);
    double rel = (r.l2sq > 0.0) ? std::abs(r.energy - r.l2sq) / r.l2sq : 0.0;
    maxRel = std::max(maxRel, rel);
    sumRel += rel;
  }
  rep.reports.push_back(quadratureReport("green-identity-max-rel-error", maxRel, tol,
                                         netDesc(trunc), maxRel <= tol));
  rep.reports.push_back(quadratureReport("green-identity-mean-rel-error",
                                         sumRel / cfg.ensembleSize, tol,
                                         netDesc(trunc), true));
  return rep;
}

// ---------------------------------------------------------------- cover

SuiteReport suiteCover(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "cover";
  GridSpec g = gridOf(cfg);
  std::int64_t n = g.cellCount();
  std::int64_t checked = 0, shifted = 0, bad = 0;
  Rational six(6);
  for (std::int64_t a = 0; a < n; ++a) {
    Rational lo = g.cellInterval(a).lo;
    for (std::int64_t b = a + 1; b <= n; ++b) {
      RatInterval I(lo, g.cellInterval(b - 1).hi);
      AtomRef atom = cover(I);
      ++checked;
      if (atom.filtration == Filtration::Dprime) ++shifted;
      if (!atom.interval.containsInterval(I) ||
          !(atom.interval.length() <= six * I.length()))
        ++bad;
    }
  }
  rep.reports.push_back(
      exactReport("cover-intervals-checked", double(checked), true));
  rep.reports.push_back(exactReport("cover-violations", double(bad), bad == 0));
  // both filtrations must be exercised
  rep.reports.push_back(exactReport("cover-shifted-atoms-used", double(shifted),
                                    shifted > 0 && shifted < checked));
  return rep;
}

// ----------------------------------------------------------- domination

std::vector<AvgWindow> dominationWindows() {
  std::vector<AvgWindow> ws;
  for (int k = 0; k <= 5; ++k) {
    ws.push_back({ratPow2(-k), ratPow2(-k)});
    ws.push_back({ratPow2(-k), ratPow2(-k - 1)});
  }
  return ws;
}

SuiteReport suiteDomination(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "domination";
  double tol = tolOf(cfg, "domination", 1e-9);
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::PsdStep);
  std::vector<AvgWindow> windows = dominationWindows();
  double worst = std::numeric_limits<double>::infinity();
  std::int64_t failures = 0, checks = 0;
  for (const MatrixField& f : generateEnsemble(es))
    for (const AvgWindow& h : windows) {
      DominationResult r = dominationCheck(f, h, tol);
      worst = std::min(worst, r.slackMin);
      ++checks;
      if (!r.holds) ++failures;
    }
  rep.reports.push_back(exactReport("domination-checks", double(checks), true));
  rep.reports.push_back(
      exactReport("domination-min-eigen-slack", worst, failures == 0));
  return rep;
}

// -------------------------------------------------------------- lemma25

SuiteReport suiteLemma25(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "lemma25";
  double epsFactor = tolOf(cfg, "lemma25", 1e-3);
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::GaussianStep);
  GridSpec g = es.grid;
  double yG = std::exp2(double(g.J + 4));
  int lpo = 8 << (cfg.coneRefinement - 1);
  double worstRatio = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const MatrixField& f : generateEnsemble(es)) {
    for (double y0 : {0.125, 0.25, 0.5, 1.0, 2.0}) {
      MatrixField g2 = gIntegral(f, Side::c, y0, yG, lpo);
      ConeGrid cone;
      cone.yMin = 0.5 * y0;
      cone.yMax = 1.5 * yG;
      cone.refinement = cfg.coneRefinement;
      MatrixField s2 = areaIntegral(f, Side::c, 0.5 * y0, cone);
      double traceScale = 0.0;
      for (const Matrix& v : g2.values) traceScale = std::max(traceScale, traceReal(v));
      double eps = epsFactor * std::max(traceScale, 1e-30);
      for (std::int64_t i = 0; i < f.cellCount(); ++i) {
        double slack = loewnerSlack(g2.value(i), 8.0 * s2.value(i));
        if (slack < -eps) ok = false;
        worstRatio = std::min(worstRatio, slack / std::max(traceScale, 1e-30));
      }
    }
  }
  rep.reports.push_back(quadratureReport("cone-domination-min-slack-over-scale",
                                         worstRatio, epsFactor, "lemma25-net", ok));
  return rep;
}

// --------------------------------------------------------------- psiphi

SuiteReport suitePsiphi(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "psiphi";
  double tol = tolOf(cfg, "psiphi", 0.05);
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::BlockConstant);
  es.meanZero = true;
  double maxCoarse = 0.0, maxFine = 0.0;
  bool ok = true;
  for (const MatrixField& f : generateEnsemble(es)) {
    double e1 = psiphiIdentityError(f, cfg.coneRefinement);
    double e2 = psiphiIdentityError(f, cfg.coneRefinement + 1);
    maxCoarse = std::max(maxCoarse, e1);
    maxFine = std::max(maxFine, e2);
    if (e1 > tol || !(e2 < e1)) ok = false;
  }
  rep.reports.push_back(quadratureReport("reproducing-identity-max-error", maxCoarse,
                                         tol, "psiphi-default", ok));
  rep.reports.push_back(quadratureReport("reproducing-identity-refined-max-error",
                                         maxFine, tol, "psiphi-refined",
                                         maxFine <= maxCoarse));
  return rep;
}

// --------------------------------------------------------------- hansen

SuiteReport suiteHansen(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "hansen";
  double tol = tolOf(cfg, "hansen", 1e-9);
  int trials = std::max(cfg.ensembleSize, 1000);
  std::mt19937_64 rng(cfg.seed ^ 0xA5A5A5A5ULL);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto randomMatrix = [&] {
    Matrix m(cfg.d, cfg.d);
    for (int r = 0; r < cfg.d; ++r)
      for (int c = 0; c < cfg.d; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    return m;
  };
  std::int64_t hansenFails = 0, convexFails = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int it = 0; it < trials; ++it) {
    // Hansen: b* a b <= (b* a^p b)^{1/p} for a contraction b
    Matrix ga = randomMatrix();
    Matrix a = ga.adjoint() * ga;
    Matrix b = randomMatrix();
    double bn = operatorNorm(b);
    if (bn > 1.0) b /= bn;
    double p = 1.0 + 3.0 * unif(rng);
    HansenPair hp = hansenTransformBound(a, b, p);
    double scale = std::max(1.0, operatorNorm(hp.rhs));
    double slack = loewnerSlack(hp.lhs, hp.rhs) / scale;
    worst = std::min(worst, slack);
    if (slack < -tol) ++hansenFails;

    // operator convexity of x -> x* x
    Matrix x = randomMatrix(), y = randomMatrix();
    double lam = unif(rng);
    Matrix mix = lam * x + (1.0 - lam) * y;
    Matrix lhs = mix.adjoint() * mix;
    Matrix rhs = lam * (x.adjoint() * x) + (1.0 - lam) * (y.adjoint() * y);
    double cScale = std::max(1.0, operatorNorm(rhs));
    double cSlack = loewnerSlack(lhs, rhs) / cScale;
    worst = std::min(worst, cSlack);
    if (cSlack < -tol) ++convexFails;
  }
  rep.reports.push_back(exactReport("hansen-failures", double(hansenFails),
                                    hansenFails == 0));
  rep.reports.push_back(exactReport("square-convexity-failures", double(convexFails),
                                    convexFails == 0));
  rep.reports.push_back(exactReport("loewner-min-relative-slack", worst, true));
  return rep;
}

// ------------------------------------------------------ bmo-intersection

SuiteReport suiteBmoIntersection(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "bmo-intersection";
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::GaussianStep);
  std::int64_t lowerFails = 0, upperFails = 0;
  double maxRatio = 0.0;
  for (const MatrixField& f : generateEnsemble(es)) {
    BmoReport full = bmoNorm(f, Side::c, BmoMode::AllGridIntervals);
    BmoReport dp = bmoNorm(f, Side::c, BmoMode::DyadicPair);
    // the contained-atom sup runs through the same prefix arithmetic as
    // the full sup, so this direction is exact, no tolerance
    if (dp.insideSup > full.upper) ++lowerFails;
    if (full.upper > dp.upper) ++upperFails;
    if (dp.meetingSup > 0.0) maxRatio = std::max(maxRatio, full.upper / dp.meetingSup);
  }
  rep.reports.push_back(exactReport("dyadic-below-full-violations",
                                    double(lowerFails), lowerFails == 0));
  rep.reports.push_back(exactReport("full-below-4rt3-dyadic-violations",
                                    double(upperFails), upperFails == 0));
  rep.reports.push_back(exactReport("max-full-over-dyadic-ratio", maxRatio, true));
  return rep;
}

// ------------------------------------------------------------- carleson

SuiteReport suiteCarleson(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "carleson";
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::GaussianStep);
  ConeGrid cone = ConeGrid::forGrid(es.grid, cfg.coneRefinement);
  double minRatio = std::numeric_limits<double>::infinity(), maxRatio = 0.0;
  bool ok = true;
  for (const MatrixField& f : generateEnsemble(es)) {
    double carl = carlesonSup(f, cone, BmoMode::DyadicPair).upper;
    double bmo = bmoNorm(f, Side::c, BmoMode::AllGridIntervals).upper;
    if (!(bmo > 0.0)) continue;
    double ratio = carl / (bmo * bmo);
    if (!std::isfinite(ratio)) ok = false;
    minRatio = std::min(minRatio, ratio);
    maxRatio = std::max(maxRatio, ratio);
  }
  rep.reports.push_back(quadratureReport("carleson-over-bmo-sq-max", maxRatio, 0.0,
                                         netDesc(cone), ok));
  rep.reports.push_back(quadratureReport("carleson-over-bmo-sq-min", minRatio, 0.0,
                                         netDesc(cone), minRatio > 0.0));
  return rep;
}

// -------------------------------------------------------------- duality

SuiteReport suiteDuality(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "duality";
  EnsembleSpec phiSpec = baseEnsemble(cfg, EnsembleSpec::Kind::GaussianStep);
  EnsembleSpec fSpec = baseEnsemble(cfg, EnsembleSpec::Kind::Atom);
  fSpec.seed = cfg.seed ^ 0x517ECA11ULL;
  std::vector<MatrixField> phis = generateEnsemble(phiSpec);
  std::vector<MatrixField> fs = generateEnsemble(fSpec);
  std::vector<std::pair<MatrixField, MatrixField>> pairs;
  for (size_t i = 0; i < phis.size(); ++i)
    pairs.emplace_back(phis[i], fs[i % fs.size()]);
  DualityReport dr = dualityConstantHarness(pairs);
  double minR = std::numeric_limits<double>::infinity();
  for (double r : dr.ratios)
    if (r > 0.0) minR = std::min(minR, r);
  rep.reports.push_back(
      exactReport("duality-max-ratio", dr.maxRatio,
                  std::isfinite(dr.maxRatio) && dr.maxRatio > 0.0));
  rep.reports.push_back(exactReport("duality-min-positive-ratio", minR, true));
  return rep;
}

// ---------------------------------------------------------------- atoms

SuiteReport suiteAtoms(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "atoms";
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::QuantizedMeanZero);
  std::int64_t bitwiseFails = 0, certFails = 0, orderFails = 0;
  double maxTerms = 0.0, maxMass = 0.0;
  for (const MatrixField& f : generateEnsemble(es)) {
    Decomposition dec = decompose(f);
    MatrixField rec = reconstruct(dec, f.grid, f.dim);
    bool bitwise = true;
    for (std::int64_t i = 0; i < f.cellCount(); ++i)
      if ((rec.value(i) - f.value(i)).norm() != 0.0) bitwise = false;
    if (!bitwise) ++bitwiseFails;
    for (const AtomTerm& t : dec.terms)
      if (!t.certificate.valid) ++certFails;
    // term order must not matter: exact sums
    Decomposition rev = dec;
    std::reverse(rev.terms.begin(), rev.terms.end());
    MatrixField rec2 = reconstruct(rev, f.grid, f.dim);
    for (std::int64_t i = 0; i < f.cellCount(); ++i)
      if ((rec2.value(i) - rec.value(i)).norm() != 0.0) { ++orderFails; break; }
    maxTerms = std::max(maxTerms, double(dec.terms.size()));
    maxMass = std::max(maxMass, dec.coefficientL1);
  }
  rep.reports.push_back(exactReport("reconstruction-bitwise-failures",
                                    double(bitwiseFails), bitwiseFails == 0));
  rep.reports.push_back(
      exactReport("invalid-certificates", double(certFails), certFails == 0));
  rep.reports.push_back(exactReport("order-dependence-failures",
                                    double(orderFails), orderFails == 0));
  rep.reports.push_back(exactReport("max-term-count", maxTerms, true));
  rep.reports.push_back(exactReport("max-coefficient-mass", maxMass, true));
  return rep;
}

// ------------------------------------------------------- sg-equivalence

SuiteReport suiteSgEquivalence(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "sg-equivalence";
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::GaussianStep);
  es.meanZero = true;
  GridSpec g = es.grid;
  ConeGrid cone = ConeGrid::forGrid(g, cfg.coneRefinement);
  double minRatio = std::numeric_limits<double>::infinity(), maxRatio = 0.0;
  for (const MatrixField& f : generateEnsemble(es)) {
    MatrixField s2 = areaIntegral(f, Side::c, 0.0, cone);
    MatrixField g2 = gIntegral(f, Side::c, 0.0, cone.yMax, cone.levelsPerOctave());
    double sNorm = std::sqrt(lpMixedNorm(s2, 1.0));
    double gNorm = std::sqrt(lpMixedNorm(g2, 1.0));
    if (!(gNorm > 0.0)) continue;
    double r = sNorm / gNorm;
    minRatio = std::min(minRatio, r);
    maxRatio = std::max(maxRatio, r);
  }
  bool ok = std::isfinite(maxRatio) && minRatio > 0.0;
  rep.reports.push_back(quadratureReport("area-over-g-ratio-max", maxRatio, 0.0,
                                         netDesc(cone), ok));
  rep.reports.push_back(quadratureReport("area-over-g-ratio-min", minRatio, 0.0,
                                         netDesc(cone), ok));
  return rep;
}

// ----------------------------------------------------------- multiplier

SuiteReport suiteMultiplier(const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = "multiplier";
  EnsembleSpec es = baseEnsemble(cfg, EnsembleSpec::Kind::GaussianStep);
  es.meanZero = true;
  std::int64_t n = es.grid.cellCount();
  SymbolSpec one = identitySymbol(n);
  SymbolSpec hil = hilbertSymbol(n);
  double maxRound = 0.0, maxInvol = 0.0, cEmp = 0.0;
  int bmoSamples = std::min(cfg.ensembleSize, 25);
  int idx = 0;
  bool ok = true;
  for (const MatrixField& f : generateEnsemble(es)) {
    double scale = std::max(1.0, l2Norm(f));
    double round = l2Norm(multiplierApply(f, one) - f) / scale;
    maxRound = std::max(maxRound, round);
    if (round > 1e-10) ok = false;
    MatrixField hh = multiplierApply(multiplierApply(f, hil), hil);
    // mean-zero input: H(H f) = -f
    double invol = l2Norm(hh + f) / scale;
    maxInvol = std::max(maxInvol, invol);
    if (invol > 1e-8) ok = false;
    if (idx < bmoSamples) {
      double b0 = bmoNorm(f, Side::c, BmoMode::AllGridIntervals).upper;
      double b1 =
          bmoNorm(multiplierApply(f, hil), Side::c, BmoMode::AllGridIntervals).upper;
      if (b0 > 0.0) cEmp = std::max(cEmp, b1 / b0);
    }
    ++idx;
  }
  rep.reports.push_back(exactReport("identity-roundtrip-max-error", maxRound, ok));
  rep.reports.push_back(
      exactReport("hilbert-involution-max-error", maxInvol, maxInvol <= 1e-8));
  rep.reports.push_back(exactReport("hilbert-bmo-empirical-constant", cEmp,
                                    std::isfinite(cEmp) && cEmp > 0.0));
  return rep;
}

}  // namespace

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names = {
      "green",    "cover",   "domination", "lemma25",        "carleson",
      "bmo-intersection", "duality", "atoms",      "psiphi",
      "sg-equivalence",   "hansen",  "multiplier"};
  return names;
}

SuiteReport runSuite(const ExperimentConfig& cfg) {
  SuiteReport rep;
  if (cfg.suite == "green") rep = suiteGreen(cfg);
  else if (cfg.suite == "cover") rep = suiteCover(cfg);
  else if (cfg.suite == "domination") rep = suiteDomination(cfg);
  else if (cfg.suite == "lemma25") rep = suiteLemma25(cfg);
  else if (cfg.suite == "carleson") rep = suiteCarleson(cfg);
  else if (cfg.suite == "bmo-intersection") rep = suiteBmoIntersection(cfg);
  else if (cfg.suite == "duality") rep = suiteDuality(cfg);
  else if (cfg.suite == "atoms") rep = suiteAtoms(cfg);
  else if (cfg.suite == "psiphi") rep = suitePsiphi(cfg);
  else if (cfg.suite == "sg-equivalence") rep = suiteSgEquivalence(cfg);
  else if (cfg.suite == "hansen") rep = suiteHansen(cfg);
  else if (cfg.suite == "multiplier") rep = suiteMultiplier(cfg);
  else throw std::invalid_argument("unknown suite: " + cfg.suite);
  stampConfig(rep, cfg);
  finish(rep);
  return rep;
}

}  // namespace ncfa
