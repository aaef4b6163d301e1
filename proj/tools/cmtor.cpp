#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cmtor/config.hpp"
#include "cmtor/errors.hpp"
#include "cmtor/family.hpp"
#include "cmtor/numeric.hpp"
#include "cmtor/report.hpp"
#include "cmtor/selftest.hpp"

namespace {

using namespace cmtor;

void put(BoundEntry& e, const std::string& k, const std::string& v) {
  e.payload.emplace_back(k, v);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string matrix_row(const IntMat& M, int i) {
  std::string s;
  for (int j = 0; j < M.cols; ++j) {
    if (j) s += ' ';
    s += M.at(i, j).get_str();
  }
  return s;
}

struct ReflexComputation {
  CmBundle bundle;
  ReflexDatum reflex;
  ReflexNormMatrix nm;
  MtInvariants inv;
};

ReflexComputation compute_for_cm(const ConfigStore& store, const std::string& name) {
  ReflexComputation out{cm_from_block(store.require("cm", name), store), {}, {}, {}};
  out.reflex = compute_reflex(out.bundle.datum, out.bundle.type);
  out.nm = reflex_norm_matrix(out.bundle.datum, out.reflex);
  out.inv = mt_invariants(out.nm.M, out.bundle.datum.g);
  return out;
}

BoundEntry invariants_entry(const ReflexComputation& rc) {
  BoundEntry e;
  e.id = "mt-invariants";
  e.kind = "value";
  e.claim = "kernel-order-bound";
  put(e, "rank", std::to_string(rc.inv.rank));
  std::string divs;
  for (const auto& d : rc.inv.elementaryDivisors) {
    if (!divs.empty()) divs += ' ';
    divs += d.get_str();
  }
  put(e, "elementaryDivisors", divs);
  put(e, "orderF", rc.inv.orderF.get_str());
  put(e, "fBound", rc.inv.fBound.get_str());
  put(e, "nondegenerate", bool_str(rc.inv.nondegenerate));
  return e;
}

Report cmd_reflex(const std::string& file, const std::string& name) {
  ConfigStore store = load_config_file(file);
  ReflexComputation rc = compute_for_cm(store, name);
  Report r;
  r.command = "reflex";
  r.inputEcho = file + " cm=" + name;

  BoundEntry t;
  t.id = "reflex-type";
  t.kind = "value";
  put(t, "g", std::to_string(rc.bundle.datum.g));
  put(t, "degree", std::to_string(2 * rc.bundle.datum.g));
  put(t, "reflexDegree", std::to_string(rc.reflex.reflexDegree));
  put(t, "simple", bool_str(is_simple_type(rc.bundle.datum, rc.bundle.type)));
  std::string rlabels;
  for (int c : rc.reflex.R.S) {
    if (!rlabels.empty()) rlabels += ' ';
    rlabels += rc.reflex.dual.G.label(rc.reflex.dual.cosets.reps[c]);
  }
  put(t, "R", rlabels);
  r.entries.push_back(std::move(t));

  BoundEntry m;
  m.id = "reflex-norm-matrix";
  m.kind = "value";
  m.claim = "rank-bound";
  put(m, "rows", std::to_string(rc.nm.M.rows));
  put(m, "cols", std::to_string(rc.nm.M.cols));
  for (int i = 0; i < rc.nm.M.rows; ++i)
    put(m, "row" + std::to_string(i), matrix_row(rc.nm.M, i));
  r.entries.push_back(std::move(m));

  r.entries.push_back(invariants_entry(rc));
  return r;
}

Report cmd_rank(const std::string& file, const std::string& name) {
  ConfigStore store = load_config_file(file);
  ReflexComputation rc = compute_for_cm(store, name);
  Report r;
  r.command = "rank";
  r.inputEcho = file + " cm=" + name;
  r.entries.push_back(invariants_entry(rc));
  return r;
}

Report cmd_bounds(const std::string& file, const std::string& name) {
  ConfigStore store = load_config_file(file);
  BoundContext ctx = bounds_from_block(store.require("bounds", name), store);
  Report r;
  r.command = "bounds";
  r.inputEcho = file + " bounds=" + name;

  BoundEntry c;
  c.id = "context";
  c.kind = "value";
  put(c, "g", std::to_string(ctx.g));
  put(c, "r", std::to_string(ctx.r));
  put(c, "orderF", ctx.orderF.get_str());
  put(c, "ell", std::to_string(ctx.ell));
  put(c, "n", std::to_string(ctx.n));
  put(c, "hK", ctx.hK.get_str());
  put(c, "muE", std::to_string(ctx.muE));
  put(c, "muStar", std::to_string(ctx.muStar));
  put(c, "K_over_Estar", ctx.degKoverEstar.get_str());
  put(c, "unramifiedE", bool_str(ctx.unramifiedE));
  put(c, "unramifiedK", bool_str(ctx.unramifiedK));
  put(c, "goodReduction", bool_str(ctx.goodReduction));
  r.entries.push_back(std::move(c));

  for (auto& e : full_bound_report(ctx)) r.entries.push_back(std::move(e));
  return r;
}

Report cmd_enumerate(const std::string& file, const std::string& name, bool mt) {
  ConfigStore store = load_config_file(file);
  FiniteRingDatum R = ring_from_block(store.require("ring", name));
  Report r;
  r.command = mt ? "enumerate-mt" : "enumerate-hg";
  r.inputEcho = file + " ring=" + name;

  BoundEntry e;
  e.id = mt ? "mt-points" : "hodge-points";
  e.kind = "value";
  e.claim = "torus-point-window";
  put(e, "ell", std::to_string(R.ell));
  put(e, "N", std::to_string(R.N));
  put(e, "ringSize", std::to_string(R.size));
  put(e, "units", std::to_string(enumerate_units(R)));
  put(e, "count", std::to_string(mt ? enumerate_mt_points(R) : enumerate_hodge_points(R)));
  const int g = R.deg / 2;
  Interval w = mt_order_bounds_nondegenerate(g, R.ell, R.N);
  put(e, "nondegenerateWindowLo", q_to_string(w.lo));
  put(e, "nondegenerateWindowHi", q_to_string(w.hi));
  r.entries.push_back(std::move(e));
  return r;
}

Report cmd_psi(const std::string& file, const std::string& name) {
  ConfigStore store = load_config_file(file);
  FiniteRingDatum R = ring_from_block(store.require("ring", name));
  PsiAnalysis psi = psi_image_analysis(R);
  Report r;
  r.command = "psi";
  r.inputEcho = file + " ring=" + name;

  BoundEntry e;
  e.id = "psi-analysis";
  e.kind = "value";
  e.claim = "psi-index-dichotomy";
  put(e, "hodgeOrder", std::to_string(psi.hodgeOrder));
  put(e, "scalarOrder", std::to_string(psi.scalarOrder));
  put(e, "kernelOrder", std::to_string(psi.kernelOrder));
  put(e, "imPsiOrder", std::to_string(psi.imPsiOrder));
  put(e, "mtOrder", std::to_string(psi.mtOrder));
  put(e, "indexImPsi", std::to_string(psi.indexImPsi));
  put(e, "squareCriterion", bool_str(psi.squareCriterion));
  r.entries.push_back(std::move(e));
  return r;
}

Report cmd_filtration(const std::string& file, const std::string& name) {
  ConfigStore store = load_config_file(file);
  FiltrationSpec spec = filtration_from_block(store.require("filtration", name));
  FiltrationResult fr = filtration_orders(spec);
  Report r;
  r.command = "filtration";
  r.inputEcho = file + " filtration=" + name;

  BoundEntry lv;
  lv.id = "filtration-levels";
  lv.kind = "value";
  put(lv, "ramified", bool_str(fr.ramified));
  for (size_t k = 0; k < fr.levelSizes.size(); ++k)
    put(lv, "C" + std::to_string(k), std::to_string(fr.levelSizes[k]));
  r.entries.push_back(std::move(lv));

  BoundEntry q0;
  q0.id = "filtration-level-zero";
  q0.kind = "value";
  q0.claim = "filtration-level-zero";
  put(q0, "quotient0", std::to_string(fr.quotientOrders[0]));
  put(q0, "expected", std::to_string(fr.ramified ? 2 * spec.ell : spec.ell + 1));
  r.entries.push_back(std::move(q0));

  BoundEntry qh;
  qh.id = "filtration-higher-levels";
  qh.kind = "value";
  qh.claim = "filtration-higher-levels";
  std::string qs;
  for (size_t k = 1; k < fr.quotientOrders.size(); ++k) {
    if (!qs.empty()) qs += ' ';
    qs += std::to_string(fr.quotientOrders[k]);
  }
  put(qh, "quotients", qs);
  put(qh, "equalitiesAsserted", bool_str(fr.equalitiesAsserted));
  r.entries.push_back(std::move(qh));
  return r;
}

Report cmd_cartan(const std::string& file, const std::string& name) {
  ConfigStore store = load_config_file(file);
  CartanDatum datum = cartan_from_block(store.require("cartan", name));
  CartanResult res = cartan_and_normalizer(datum);
  Report r;
  r.command = "cartan";
  r.inputEcho = file + " cartan=" + name;

  BoundEntry e;
  e.id = "cartan-normalizer";
  e.kind = "value";
  e.claim = "cartan-normalizer-index";
  put(e, "c", std::to_string(datum.c));
  put(e, "d", std::to_string(datum.d));
  put(e, "level", std::to_string(pow_ll(datum.ell, datum.n)));
  put(e, "glOrder", std::to_string(res.glOrder));
  put(e, "cartanOrder", std::to_string(res.cartanOrder));
  put(e, "normalizerOrder", std::to_string(res.normalizerOrder));
  put(e, "index", std::to_string(res.index));
  put(e, "indexIsTwo", bool_str(res.indexIsTwo));
  put(e, "witnessInNormalizer", bool_str(res.witnessInNormalizer));
  put(e, "witnessOutsideCartan", bool_str(res.witnessOutsideCartan));
  put(e, "discCoprimeToEll", bool_str(res.discCoprimeToEll));
  if (!res.indexIsTwo) put(e, "flag", "IndexNotTwo");
  r.entries.push_back(std::move(e));
  return r;
}

Report cmd_family(long long p) {
  FamilyReport fr = family_report(build_family(p));
  Report r;
  r.command = "family";
  r.inputEcho = "p=" + std::to_string(p);

  BoundEntry rk;
  rk.id = "family-rank";
  rk.kind = "value";
  rk.claim = "family-rank";
  put(rk, "p", std::to_string(fr.p));
  put(rk, "genus", std::to_string(fr.genus));
  put(rk, "rank", std::to_string(fr.rank));
  put(rk, "orderF", fr.orderF.get_str());
  put(rk, "simple", bool_str(fr.simple));
  put(rk, "reflexDegree", std::to_string(fr.reflexDegree));
  r.entries.push_back(std::move(rk));

  BoundEntry gr;
  gr.id = "family-growth-ratio";
  gr.kind = "value";
  gr.claim = "family-growth-ratio";
  put(gr, "ratio", q_to_string(fr.growthRatio));
  r.entries.push_back(std::move(gr));

  BoundEntry tt;
  tt.id = "family-two-torsion";
  tt.kind = "value";
  tt.claim = "family-two-torsion";
  put(tt, "degree", fr.twoTorsionDegree.get_str());
  r.entries.push_back(std::move(tt));
  return r;
}

Report cmd_hadamard(int n, const std::string& mode, long long samples) {
  if (mode != "exhaustive" && mode != "sampled")
    fail_config("ConfigParseError", "mode must be exhaustive or sampled, got '" + mode + "'");
  HadamardScan s = hadamard_max_det(n, mode == "exhaustive", samples);
  Report r;
  r.command = "hadamard";
  r.inputEcho = "n=" + std::to_string(n) + " mode=" + mode;

  BoundEntry e;
  e.id = "hadamard-scan";
  e.kind = "value";
  e.claim = "hadamard-01-determinant";
  put(e, "n", std::to_string(s.n));
  put(e, "exhaustive", bool_str(s.exhaustive));
  put(e, "tested", std::to_string(s.tested));
  put(e, "maxAbsDet", s.maxAbsDet.get_str());
  put(e, "bound", s.bound.get_str());
  r.entries.push_back(std::move(e));
  return r;
}

Report cmd_selftest(const std::string& fixtures, bool& anyFailed) {
  SelftestReport sr = run_selftest(fixtures);
  anyFailed = !sr.allPassed;
  Report r;
  r.command = "selftest";
  r.inputEcho = "fixtures=" + fixtures;
  for (const auto& cres : sr.criteria) {
    BoundEntry e;
    e.id = "criterion-" + std::to_string(cres.number);
    e.kind = "check";
    put(e, "title", cres.title);
    put(e, "passed", bool_str(cres.passed));
    put(e, "detail", cres.detail);
    r.entries.push_back(std::move(e));
  }
  BoundEntry sum;
  sum.id = "summary";
  sum.kind = "check";
  put(sum, "allPassed", bool_str(sr.allPassed));
  r.entries.push_back(std::move(sum));
  return r;
}

void emit(Report& r, const std::string& format, const std::string& outputPath,
          long long elapsedMs) {
  r.timingMs = elapsedMs;
  finalize_citations(r);
  std::string text = (format == "json") ? report_to_json(r) : report_to_text(r);
  if (outputPath.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(outputPath);
    if (!out) fail_config("ConfigParseError", "cannot write output file: " + outputPath);
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact CM reflex-type, lattice-invariant and division-bound calculator"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --format/--output after the subcommand name

  std::string format = "text";
  std::string outputPath;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", outputPath, "write the report to a file instead of stdout");

  std::string cfgFile, blockName;
  long long familyP = 5;
  int hadN = 3;
  std::string hadMode = "exhaustive";
  long long hadSamples = 100000;
  std::string fixturesDir = "fixtures";

  auto addCfg = [&](CLI::App* sub, const char* blockFlag, const char* what) {
    sub->add_option("--config", cfgFile, "fixture config file")->required();
    sub->add_option(blockFlag, blockName, what)->required();
  };

  CLI::App* reflex = app.add_subcommand("reflex", "reflex type and norm matrix of a cm block");
  addCfg(reflex, "--cm", "cm block name");
  CLI::App* rank = app.add_subcommand("rank", "matrix invariants of a cm block");
  addCfg(rank, "--cm", "cm block name");
  CLI::App* bounds = app.add_subcommand("bounds", "degree bound report for a bounds block");
  addCfg(bounds, "--block", "bounds block name");
  CLI::App* enmt = app.add_subcommand("enumerate-mt", "count unit-scalar-norm ring points");
  addCfg(enmt, "--ring", "ring block name");
  CLI::App* enhg = app.add_subcommand("enumerate-hg", "count norm-one ring points");
  addCfg(enhg, "--ring", "ring block name");
  CLI::App* psi = app.add_subcommand("psi", "norm-map image analysis of a ring block");
  addCfg(psi, "--ring", "ring block name");
  CLI::App* filt = app.add_subcommand("filtration", "norm-one unit filtration orders");
  addCfg(filt, "--block", "filtration block name");
  CLI::App* cart = app.add_subcommand("cartan", "Cartan and normalizer orders in GL2");
  addCfg(cart, "--block", "cartan block name");

  CLI::App* family = app.add_subcommand("family", "cyclotomic family member report");
  family->add_option("--p", familyP, "odd prime parameter")->required();
  CLI::App* had = app.add_subcommand("hadamard", "max |det| scan over 0/1 matrices");
  had->add_option("--n", hadN, "matrix size")->required();
  had->add_option("--mode", hadMode, "exhaustive or sampled");
  had->add_option("--samples", hadSamples, "sample count for sampled mode");
  CLI::App* self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_option("--fixtures", fixturesDir, "fixture config directory");

  CLI11_PARSE(app, argc, argv);

  try {
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    bool selftestFailed = false;
    if (reflex->parsed()) r = cmd_reflex(cfgFile, blockName);
    if (rank->parsed()) r = cmd_rank(cfgFile, blockName);
    if (bounds->parsed()) r = cmd_bounds(cfgFile, blockName);
    if (enmt->parsed()) r = cmd_enumerate(cfgFile, blockName, true);
    if (enhg->parsed()) r = cmd_enumerate(cfgFile, blockName, false);
    if (psi->parsed()) r = cmd_psi(cfgFile, blockName);
    if (filt->parsed()) r = cmd_filtration(cfgFile, blockName);
    if (cart->parsed()) r = cmd_cartan(cfgFile, blockName);
    if (family->parsed()) r = cmd_family(familyP);
    if (had->parsed()) r = cmd_hadamard(hadN, hadMode, hadSamples);
    if (self->parsed()) r = cmd_selftest(fixturesDir, selftestFailed);
    auto t1 = std::chrono::steady_clock::now();
    emit(r, format, outputPath,
         std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    if (selftestFailed) return static_cast<int>(cmtor::ErrorKind::Invariant);
    return 0;
  } catch (const cmtor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
