// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0

#include "symext/dps.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace symext {

namespace {

constexpr double kEntryDropTol = 1e-14;    // relative, per constraint matrix
constexpr double kWitnessSlack = 1e-7;     // Witness invariant tolerance
constexpr long long kCutLiftCap = 1LL << 12;
constexpr long long kCutRowsCap = 20000;

/// Appends the upper triangle of embed(h) (scaled complex inner products:
/// <embed(A), embed(X)> = 2 <A, X>) to `entries` for the given block.
void appendEmbedded(std::vector<SdpEntry>& entries, int block, const CMat& h) {
  const int n = static_cast<int>(h.rows());
  double scale = h.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return;
  const double drop = kEntryDropTol * scale;
  // embed(h) = [[Re, -Im], [Im, Re]]; upper triangle entries:
  //   (r, c)        Re h(r,c)   for r <= c
  //   (r, c+n)      -Im h(r,c)  for r != c (Im h(r,r) = 0)
  //   (r+n, c+n)    Re h(r,c)   for r <= c
  // Note (r, c+n) with r > c mirrors (c, r+n) via Im h(c,r) = -Im h(r,c);
  // we emit one representative per embedded upper-triangle position.
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      const double re = h(r, c).real();
      if (std::abs(re) > drop) {
        entries.push_back({block, r, c, re});
        entries.push_back({block, r + n, c + n, re});
      }
    }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double im = h(r, c).imag();
      if (r != c && std::abs(im) > drop) entries.push_back({block, std::min(r, c + n), std::max(r, c + n), -im});
    }
}

/// V' (B (x) I^{k-1}) V without forming B (x) I densely.
CMat compressOne(const RMat& V, const CMat& B, int d, int k) {
  const long long rows = V.rows();        // d^k
  const long long str = rows / d;         // d^{k-1}
  CMat M = CMat::Zero(rows, V.cols());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Complex v = B(a, b);
      if (v == Complex(0.0, 0.0)) continue;
      M.middleRows(a * str, str) += v * V.middleRows(b * str, str);
    }
  return V.transpose().cast<Complex>() * M;
}

struct CutMachinery {
  CMat bigIso;                 // (x)_i V_i, full-lift x compressed
  std::vector<int> liftDims;   // per copy
  std::vector<std::vector<int>> transposedSlots;  // per cut
};

CMat applyCut(const CutMachinery& cm, std::size_t cut, const CMat& x) {
  CMat lifted = cm.bigIso * x * cm.bigIso.adjoint();
  lifted = partial_transpose(lifted, cm.liftDims, cm.transposedSlots[cut]);
  return cm.bigIso.adjoint() * lifted * cm.bigIso;
}

CutMachinery buildCutMachinery(const std::vector<int>& dims, const std::vector<int>& levels,
                               const std::vector<std::vector<int>>& cuts,
                               const std::vector<SymmetricSpace>& spaces) {
  CutMachinery cm;
  long long full = 1;
  for (std::size_t i = 0; i < dims.size(); ++i)
    for (int c = 0; c < levels[i]; ++c) {
      cm.liftDims.push_back(dims[i]);
      full *= dims[i];
      if (full > kCutLiftCap)
        throw std::invalid_argument(
            "ppt cut: full lifted dimension exceeds the supported cap (" +
            std::to_string(kCutLiftCap) + ")");
    }
  cm.bigIso = CMat::Identity(1, 1);
  for (const auto& sp : spaces) cm.bigIso = kron(cm.bigIso, sp.isometry.cast<Complex>()).eval();
  for (const auto& cut : cuts) {
    std::vector<int> slots;
    int off = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (std::find(cut.begin(), cut.end(), static_cast<int>(i)) != cut.end())
        for (int c = 0; c < levels[i]; ++c) slots.push_back(off + c);
      off += levels[i];
    }
    cm.transposedSlots.push_back(std::move(slots));
  }
  return cm;
}

}  // namespace

std::vector<CMat> hermitian_basis(int d) {
  if (d < 1) throw std::invalid_argument("hermitian_basis: d >= 1 required");
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int p = 0; p < d; ++p) {
    CMat m = CMat::Zero(d, d);
    m(p, p) = 1.0;
    out.push_back(m);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      CMat m = CMat::Zero(d, d);
      m(p, q) = s;
      m(q, p) = s;
      out.push_back(m);
      CMat a = CMat::Zero(d, d);
      a(p, q) = Complex(0.0, s);
      a(q, p) = Complex(0.0, -s);
      out.push_back(a);
    }
  return out;
}

ExtensionProblem build_extension_sdp(const DensityMatrix& rho, const ExtensionSpec& spec) {
  const int N = static_cast<int>(rho.dims.size());
  if (static_cast<int>(spec.levels.size()) != N)
    throw std::invalid_argument("build_extension_sdp: levels length must match state dims");
  for (int k : spec.levels)
    if (k < 1) throw std::invalid_argument("build_extension_sdp: levels must be >= 1");
  for (const auto& cut : spec.pptCuts) {
    if (cut.empty() || static_cast<int>(cut.size()) >= N)
      throw std::invalid_argument("build_extension_sdp: ppt cut must be a proper bipartition");
    for (int f : cut)
      if (f < 0 || f >= N) throw std::invalid_argument("build_extension_sdp: cut index out of range");
  }
  const long long D = rho.side();
  if (rho.mat.rows() != D || rho.mat.cols() != D)
    throw std::invalid_argument("build_extension_sdp: state matrix does not match dims");

  ExtensionProblem out;
  out.dims = rho.dims;
  out.levels = spec.levels;
  out.pptCuts = spec.pptCuts;

  std::vector<SymmetricSpace> spaces;
  out.variableDim = 1;
  for (int i = 0; i < N; ++i) {
    spaces.push_back(sym_isometry(rho.dims[i], spec.levels[i]));
    out.variableDim *= sym_dim(rho.dims[i], spec.levels[i]);
  }
  const int dc = static_cast<int>(out.variableDim);

  // per-party bases and their compressions
  for (int i = 0; i < N; ++i) {
    out.factorBasis.push_back(hermitian_basis(rho.dims[i]));
    std::vector<CMat> comp;
    for (const auto& b : out.factorBasis.back())
      comp.push_back(compressOne(spaces[i].isometry, b, rho.dims[i], spec.levels[i]));
    out.compressedBasis.push_back(std::move(comp));
  }

  // blocks: X embedded, lambda, one embedded block per cut
  out.sdp.blockSizes = {2 * dc, 1};
  for (std::size_t c = 0; c < spec.pptCuts.size(); ++c) out.sdp.blockSizes.push_back(2 * dc);
  out.sdp.objective = {{1, 0, 0, 1.0}};

  // marginal rows: <C_m, X> + lambda <G_m, rho - I/D> = <G_m, rho>,
  // doubled by the embedding convention
  std::vector<int> radix(N), digit(N, 0);
  long long M = 1;
  for (int i = 0; i < N; ++i) {
    radix[i] = rho.dims[i] * rho.dims[i];
    M *= radix[i];
  }
  out.marginalRows = static_cast<int>(M);
  out.traceRow = static_cast<int>(M);
  std::vector<double> rhs;
  for (long long m = 0; m < M; ++m) {
    CMat G = CMat::Identity(1, 1), C = CMat::Identity(1, 1);
    double trG = 1.0;
    for (int i = 0; i < N; ++i) {
      G = kron(G, out.factorBasis[i][digit[i]]).eval();
      C = kron(C, out.compressedBasis[i][digit[i]]).eval();
      trG *= out.factorBasis[i][digit[i]].trace().real();
    }
    const double r = (G * rho.mat).trace().real();
    const double g = r - trG / static_cast<double>(D);
    SdpConstraint con;
    appendEmbedded(con.entries, 0, C);
    if (std::abs(g) > 0.0) con.entries.push_back({1, 0, 0, 2.0 * g});
    out.sdp.constraints.push_back(std::move(con));
    rhs.push_back(2.0 * r);
    for (int i = N - 1; i >= 0; --i) {
      if (++digit[i] < radix[i]) break;
      digit[i] = 0;
    }
  }

  // trace row: embed(I) has trace 2 tr X
  {
    SdpConstraint con;
    for (int r = 0; r < 2 * dc; ++r) con.entries.push_back({0, r, r, 1.0});
    out.sdp.constraints.push_back(std::move(con));
    rhs.push_back(2.0);
  }

  // PPT cuts: linking rows <H_p, Y_c> - <PT_cut(H_p), X> = 0
  if (!spec.pptCuts.empty()) {
    if (static_cast<long long>(dc) * dc * static_cast<long long>(spec.pptCuts.size()) > kCutRowsCap)
      throw std::invalid_argument("build_extension_sdp: ppt cut linking system too large");
    CutMachinery cm = buildCutMachinery(rho.dims, spec.levels, spec.pptCuts, spaces);
    out.cutBasis = hermitian_basis(dc);
    for (std::size_t c = 0; c < spec.pptCuts.size(); ++c) {
      const int block = 2 + static_cast<int>(c);
      for (const auto& H : out.cutBasis) {
        SdpConstraint con;
        appendEmbedded(con.entries, block, H);
        CMat phi = -applyCut(cm, c, H);
        appendEmbedded(con.entries, 0, phi);
        out.sdp.constraints.push_back(std::move(con));
        rhs.push_back(0.0);
      }
    }
  }

  out.sdp.rhs = Eigen::Map<RVec>(rhs.data(), static_cast<long long>(rhs.size()));
  return out;
}

Witness extract_witness(const DensityMatrix& rho, const ExtensionProblem& prob,
                        const SdpSolution& sol) {
  const int N = static_cast<int>(prob.dims.size());
  const long long D = detail::dims_product(prob.dims);
  const int dc = static_cast<int>(prob.variableDim);

  // W' = sum_m y_m G_m over the product Hermitian basis; the compressed
  // dual-slack identity gives L'(W) - sum_cut PT_cut(Z_cut) >= 0 with
  // W = -(W' + y_tr I) and Z_cut = -sum_p y_p H_p.
  CMat Wp = CMat::Zero(D, D);
  CMat lifted = CMat::Zero(dc, dc);
  std::vector<int> radix(N), digit(N, 0);
  for (int i = 0; i < N; ++i) radix[i] = prob.dims[i] * prob.dims[i];
  for (int m = 0; m < prob.marginalRows; ++m) {
    const double y = sol.y(m);
    if (y != 0.0) {
      CMat G = CMat::Identity(1, 1), C = CMat::Identity(1, 1);
      for (int i = 0; i < N; ++i) {
        G = kron(G, prob.factorBasis[i][digit[i]]).eval();
        C = kron(C, prob.compressedBasis[i][digit[i]]).eval();
      }
      Wp += y * G;
      lifted -= y * C;
    }
    for (int i = N - 1; i >= 0; --i) {
      if (++digit[i] < radix[i]) break;
      digit[i] = 0;
    }
  }
  const double ytr = sol.y(prob.traceRow);
  CMat W = -(Wp + ytr * CMat::Identity(D, D));
  lifted -= ytr * CMat::Identity(dc, dc);  // = L'(W)

  Witness w;
  double minZ = std::numeric_limits<double>::infinity();
  if (!prob.pptCuts.empty()) {
    std::vector<SymmetricSpace> spaces;
    for (int i = 0; i < N; ++i) spaces.push_back(sym_isometry(prob.dims[i], prob.levels[i]));
    CutMachinery cm = buildCutMachinery(prob.dims, prob.levels, prob.pptCuts, spaces);
    int row = prob.traceRow + 1;
    for (std::size_t c = 0; c < prob.pptCuts.size(); ++c) {
      CMat Z = CMat::Zero(dc, dc);
      for (const auto& H : prob.cutBasis) Z -= sol.y(row++) * H;
      minZ = std::min(minZ, eig_hermitian(Z, 1e-8).first(0));
      lifted -= applyCut(cm, c, Z);
    }
  }

  auto [evalW, vecsW] = eig_hermitian(W, 1e-8);
  const double s = std::max(std::abs(evalW(0)), std::abs(evalW(evalW.size() - 1)));
  if (!(s > 0.0)) return w;  // zero dual; invalid witness
  w.mat = W / s;
  w.valueOnState = ((W / s) * rho.mat).trace().real();
  double lmin = eig_hermitian(lifted, 1e-8).first(0) / s;
  if (!prob.pptCuts.empty()) lmin = std::min(lmin, minZ / s);
  w.liftedMinEig = lmin;
  w.valid = w.valueOnState < 0.0 && w.liftedMinEig >= -kWitnessSlack;
  return w;
}

Verdict check_extendible(const DensityMatrix& rho, const ExtensionSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  ExtensionProblem prob = build_extension_sdp(rho, spec);
  SdpSolution sol = solve(prob.sdp, spec.solverOpts);

  Verdict v;
  v.variableDim = prob.variableDim;
  v.solverStatus = sol.status;
  v.primalResidual = sol.primalResidual;
  v.dualResidual = sol.dualResidual;
  v.gapResidual = sol.gapResidual;
  v.iterations = sol.iterations;
  v.lambdaStar = std::max(0.0, sol.primalObjective);

  if (sol.status != SdpStatus::Optimal) {
    v.status = VerdictStatus::Inconclusive;
  } else if (v.lambdaStar <= spec.verdictTol) {
    v.status = VerdictStatus::Extendible;
  } else if (v.lambdaStar < 10.0 * spec.verdictTol) {
    v.status = VerdictStatus::Inconclusive;  // guard band against solver noise
  } else {
    Witness w = extract_witness(rho, prob, sol);
    if (w.valid) {
      v.status = VerdictStatus::NotExtendible;
      v.witness = std::move(w);
    } else {
      v.status = VerdictStatus::Inconclusive;
    }
  }
  v.wallSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

double threshold_scan(const std::function<DensityMatrix(double)>& family, double lo,
                      double hi, const ExtensionSpec& spec) {
  if (!(lo < hi)) throw std::invalid_argument("threshold_scan: require lo < hi");
  auto entangled = [&](double p) {
    Verdict v = check_extendible(family(p), spec);
    if (v.solverStatus != SdpStatus::Optimal)
      throw std::runtime_error("threshold_scan: solver did not converge at parameter " +
                               std::to_string(p));
    return v.lambdaStar > spec.verdictTol;
  };
  if (entangled(lo))
    throw std::runtime_error("threshold_scan: lower endpoint already tests entangled");
  if (!entangled(hi)) return hi;
  while (hi - lo > 1e-3) {
    const double mid = (lo + hi) / 2.0;
    (entangled(mid) ? hi : lo) = mid;
  }
  return (lo + hi) / 2.0;
}

}  // namespace symext
