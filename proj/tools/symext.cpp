// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  Results go to stdout as stable `key: value`
// lines; diagnostics and errors go to stderr.  Exit codes: 0 conclusive,
// 2 input/usage error, 3 solver non-convergence / inconclusive verdict.

#include "symext/bounds.hpp"
#include "symext/dps.hpp"
#include "symext/oracle.hpp"
#include "symext/states.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace symext;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::vector<int> parseIntList(const std::string& s, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string tok = s.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": expected comma-separated integers, got '" +
                                  s + "'");
    }
    pos = comma + 1;
  }
  return out;
}

/// "1:23" -> {0} with sides validated as a proper bipartition of 1..N.
std::vector<int> parseCut(const std::string& s, int nFactors) {
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("ppt cut must look like 1:23 (1-based factor digits)");
  std::vector<bool> seen(nFactors, false);
  auto side = [&](const std::string& part) {
    std::vector<int> out;
    for (char ch : part) {
      if (ch < '1' || ch > '9') throw std::invalid_argument("ppt cut: digits 1-9 only");
      const int f = ch - '1';
      if (f >= nFactors) throw std::invalid_argument("ppt cut: factor index out of range");
      if (seen[f]) throw std::invalid_argument("ppt cut: factor listed twice");
      seen[f] = true;
      out.push_back(f);
    }
    return out;
  };
  std::vector<int> left = side(s.substr(0, colon));
  std::vector<int> right = side(s.substr(colon + 1));
  if (left.empty() || right.empty() ||
      static_cast<int>(left.size() + right.size()) != nFactors)
    throw std::invalid_argument("ppt cut: must be a proper bipartition of all factors");
  return left;
}

const char* statusName(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Extendible: return "EXTENDIBLE";
    case VerdictStatus::NotExtendible: return "NOT_EXTENDIBLE";
    case VerdictStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

void printKV(const char* key, const std::string& v) { std::printf("%s: %s\n", key, v.c_str()); }
void printKV(const char* key, double v) { std::printf("%s: %.9g\n", key, v); }
void printKV(const char* key, long long v) { std::printf("%s: %lld\n", key, v); }

std::string joinInts(const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int runMakeState(const std::string& family, std::optional<double> param,
                 const std::string& dimsStr, const std::string& outPath) {
  FamilyParams fp;
  fp.param = param;
  if (!dimsStr.empty()) fp.dims = parseIntList(dimsStr, "--dims");
  DensityMatrix rho = make_family(family, fp);
  save_state(rho, outPath);
  printKV("family", family);
  printKV("dims", joinInts({rho.dims.begin(), rho.dims.end()}));
  printKV("file", outPath);
  return kExitOk;
}

int runCheck(const std::string& statePath, const std::string& levelsStr,
             const std::vector<std::string>& cutStrs, double tol,
             const std::string& witnessOut) {
  DensityMatrix rho = load_state(statePath);
  ExtensionSpec spec;
  {
    std::vector<int> lv = parseIntList(levelsStr, "--levels");
    if (lv.size() != rho.dims.size())
      throw std::invalid_argument("--levels: count must match the state's factor count");
    spec.levels = lv;
  }
  for (const auto& c : cutStrs)
    spec.pptCuts.push_back(parseCut(c, static_cast<int>(rho.dims.size())));
  spec.verdictTol = tol;

  Verdict v = check_extendible(rho, spec);
  printKV("verdict", statusName(v.status));
  printKV("lambda", v.lambdaStar);
  printKV("variable_dim", v.variableDim);
  printKV("iterations", static_cast<long long>(v.iterations));
  printKV("primal_residual", v.primalResidual);
  printKV("dual_residual", v.dualResidual);
  printKV("gap_residual", v.gapResidual);
  printKV("wall_seconds", v.wallSeconds);
  if (v.witness) {
    printKV("witness_value_on_state", v.witness->valueOnState);
    printKV("witness_lifted_min_eig", v.witness->liftedMinEig);
    if (!witnessOut.empty()) {
      save_witness(rho.dims, v.witness->mat, witnessOut);
      printKV("witness_file", witnessOut);
    }
  }
  return v.status == VerdictStatus::Inconclusive ? kExitInconclusive : kExitOk;
}

int runThreshold(const std::string& family, const std::string& dimsStr,
                 const std::string& levelsStr, const std::vector<std::string>& cutStrs,
                 double lo, double hi, double tol) {
  std::vector<int> dims;
  if (!dimsStr.empty()) dims = parseIntList(dimsStr, "--dims");
  ExtensionSpec spec;
  auto make = [&](double p) {
    FamilyParams fp;
    fp.param = p;
    fp.dims = dims;
    return make_family(family, fp);
  };
  {
    DensityMatrix probe = make(lo);
    std::vector<int> lv = parseIntList(levelsStr, "--levels");
    if (lv.size() != probe.dims.size())
      throw std::invalid_argument("--levels: count must match the family's factor count");
    spec.levels = lv;
    for (const auto& c : cutStrs)
      spec.pptCuts.push_back(parseCut(c, static_cast<int>(probe.dims.size())));
  }
  spec.verdictTol = tol;
  const double t = threshold_scan(make, lo, hi, spec);
  printKV("family", family);
  printKV("threshold", t);
  return kExitOk;
}

int runBound(const std::string& norm, const std::string& dimsStr, const std::string& levelsStr,
             const std::string& ellsStr, bool corollaryIndexing) {
  const NormKind kind = parse_norm_kind(norm);
  std::vector<int> dims = parseIntList(dimsStr, "--dims");
  BoundReport rep;
  if (!levelsStr.empty() && ellsStr.empty()) {
    std::vector<int> lv = parseIntList(levelsStr, "--levels");
    rep = multiparty_bound_thm1(dims, {lv.begin(), lv.end()}, kind);
  } else if (!ellsStr.empty() && levelsStr.empty()) {
    std::vector<int> ells = parseIntList(ellsStr, "--ells");
    rep = multiparty_bound_thm2(dims, {ells.begin(), ells.end()}, kind, corollaryIndexing);
  } else {
    throw std::invalid_argument("bound: exactly one of --levels / --ells is required");
  }
  printKV("norm", norm_kind_name(kind));
  printKV("value", rep.value);
  for (std::size_t i = 0; i < rep.constituentTerms.size(); ++i)
    printKV(("term_" + std::to_string(i + 1)).c_str(), rep.constituentTerms[i]);
  if (!rep.impliedLevels.empty()) printKV("implied_levels", joinInts(rep.impliedLevels));
  for (const auto& c : rep.caveats) printKV("caveat", c);
  return kExitOk;
}

int runDefinetti(int dim, double n, double bigN, double k, const std::string& norm) {
  const double v = definetti_bound(dim, n, bigN, k, parse_norm_kind(norm));
  printKV("value", v);
  printKV("caveat", std::string("logarithms are base 2"));
  return kExitOk;
}

int runEll(const std::string& dimsStr, int bigN, double eps) {
  std::vector<int> dims = parseIntList(dimsStr, "--dims");
  if (bigN > 0 && bigN != static_cast<int>(dims.size()))
    throw std::invalid_argument("--bigN must equal the number of --dims entries");
  std::vector<long long> ells = ell_for_error(dims, eps);
  printKV("ells", joinInts(ells));
  BoundReport rep = multiparty_bound_thm2(dims, ells, NormKind::Locc);
  printKV("achieved_bound", rep.value);
  printKV("implied_levels", joinInts(rep.impliedLevels));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric-extension separability toolkit"};
  app.require_subcommand(1);

  // make-state
  auto* mk = app.add_subcommand("make-state", "generate a named state file");
  std::string mkFamily, mkDims, mkOut;
  double mkParam = 0.0;
  bool mkHasParam = false;
  mk->add_option("--family", mkFamily)->required();
  auto* mkParamOpt = mk->add_option("--param", mkParam);
  mk->add_option("--dims", mkDims);
  mk->add_option("--out", mkOut)->required();
  mk->callback([&] { mkHasParam = mkParamOpt->count() > 0; });

  // check
  auto* ck = app.add_subcommand("check", "extendibility check on a state file");
  std::string ckState, ckLevels, ckWitnessOut;
  std::vector<std::string> ckCuts;
  double ckTol = 1e-5;
  ck->add_option("--state", ckState)->required();
  ck->add_option("--levels", ckLevels)->required();
  ck->add_option("--ppt", ckCuts);
  ck->add_option("--tol", ckTol);
  ck->add_option("--witness-out", ckWitnessOut);

  // threshold
  auto* th = app.add_subcommand("threshold", "bisect a family parameter");
  std::string thFamily, thDims, thLevels;
  std::vector<std::string> thCuts;
  double thLo = 0.0, thHi = 1.0, thTol = 1e-5;
  th->add_option("--family", thFamily)->required();
  th->add_option("--dims", thDims);
  th->add_option("--levels", thLevels)->required();
  th->add_option("--ppt", thCuts);
  th->add_option("--lo", thLo);
  th->add_option("--hi", thHi);
  th->add_option("--tol", thTol);

  // bound
  auto* bd = app.add_subcommand("bound", "closed-form distance bounds");
  std::string bdNorm, bdDims, bdLevels, bdElls;
  bool bdCorollary = false;
  bd->add_option("--norm", bdNorm)->required();
  bd->add_option("--dims", bdDims)->required();
  bd->add_option("--levels", bdLevels);
  bd->add_option("--ells", bdElls);
  bd->add_flag("--corollary-indexing", bdCorollary);

  // definetti
  auto* df = app.add_subcommand("definetti", "de Finetti form bound");
  int dfDim = 0;
  double dfN = 0.0, dfBigN = 0.0, dfK = 0.0;
  std::string dfNorm = "locc";
  df->add_option("--dim", dfDim)->required();
  df->add_option("--n", dfN)->required();
  df->add_option("--bigN", dfBigN)->required();
  df->add_option("--k", dfK)->required();
  df->add_option("--norm", dfNorm);

  // ell-for-error
  auto* el = app.add_subcommand("ell-for-error", "schedule achieving a target error");
  std::string elDims;
  int elBigN = 0;
  double elEps = 0.0;
  el->add_option("--dims", elDims)->required();
  el->add_option("--bigN", elBigN);
  el->add_option("--eps", elEps)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mk->parsed())
      return runMakeState(mkFamily,
                          mkHasParam ? std::optional<double>(mkParam) : std::nullopt, mkDims,
                          mkOut);
    if (ck->parsed()) return runCheck(ckState, ckLevels, ckCuts, ckTol, ckWitnessOut);
    if (th->parsed()) return runThreshold(thFamily, thDims, thLevels, thCuts, thLo, thHi, thTol);
    if (bd->parsed()) return runBound(bdNorm, bdDims, bdLevels, bdElls, bdCorollary);
    if (df->parsed()) return runDefinetti(dfDim, dfN, dfBigN, dfK, dfNorm);
    if (el->parsed()) return runEll(elDims, elBigN, elEps);
  } catch (const std::runtime_error& e) {
    // solver non-convergence and I/O failures
    std::fprintf(stderr, "error: %s\n", e.what());
    return std::string(e.what()).find("did not converge") != std::string::npos
               ? kExitInconclusive
               : kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
