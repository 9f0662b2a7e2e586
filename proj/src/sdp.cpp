// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0

#include "symext/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace symext {

RMat hermitian_embed(const CMat& h, double rel_tol) {
  if (!is_hermitian(h, rel_tol))
    throw std::invalid_argument("hermitian_embed: input is not Hermitian within tolerance");
  const long long n = h.rows();
  RMat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.bottomRightCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  return out;
}

CMat hermitian_unembed(const RMat& y) {
  if (y.rows() != y.cols() || y.rows() % 2 != 0)
    throw std::invalid_argument("hermitian_unembed: even square matrix required");
  const long long n = y.rows() / 2;
  RMat re = (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n)) / 2.0;
  RMat im = (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n)) / 2.0;
  // symmetrize to a Hermitian result
  CMat h(n, n);
  h.real() = (re + re.transpose()) / 2.0;
  h.imag() = (im - im.transpose()) / 2.0;
  return h;
}

namespace {

using BlockMats = std::vector<RMat>;

struct Workspace {
  const SdpProblem* prob = nullptr;
  std::vector<int> rows;  // selected original row indices
  int nTotal = 0;         // sum of block sizes

  double traceProduct(const std::vector<SdpEntry>& entries, const BlockMats& K) const {
    double acc = 0.0;
    for (const auto& e : entries) {
      const RMat& k = K[e.block];
      acc += e.value * (e.row == e.col ? k(e.row, e.row) : k(e.row, e.col) + k(e.col, e.row));
    }
    return acc;
  }

  RVec applyA(const BlockMats& X) const {
    RVec out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      out(i) = traceProduct(prob->constraints[rows[i]].entries, X);
    return out;
  }

  void addScaled(BlockMats& M, const std::vector<SdpEntry>& entries, double s) const {
    for (const auto& e : entries) {
      M[e.block](e.row, e.col) += s * e.value;
      if (e.row != e.col) M[e.block](e.col, e.row) += s * e.value;
    }
  }

  BlockMats applyAT(const RVec& y) const {
    BlockMats out = zeros();
    for (std::size_t i = 0; i < rows.size(); ++i)
      addScaled(out, prob->constraints[rows[i]].entries, y(i));
    return out;
  }

  BlockMats zeros() const {
    BlockMats out;
    for (int s : prob->blockSizes) out.push_back(RMat::Zero(s, s));
    return out;
  }

  BlockMats identity(double scale) const {
    BlockMats out;
    for (int s : prob->blockSizes) out.push_back(scale * RMat::Identity(s, s));
    return out;
  }
};

double innerBlocks(const BlockMats& A, const BlockMats& B) {
  double acc = 0.0;
  for (std::size_t b = 0; b < A.size(); ++b) acc += A[b].cwiseProduct(B[b]).sum();
  return acc;
}

double frobBlocks(const BlockMats& A) {
  double acc = 0.0;
  for (const auto& m : A) acc += m.squaredNorm();
  return std::sqrt(acc);
}

double minEig(const RMat& m) {
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double maxEig(const RMat& m) {
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(m.rows() - 1);
}

/// Largest step alpha with M + alpha dM staying PSD (M assumed PD).
double maxStep(const RMat& M, const RMat& dM) {
  if (M.rows() == 1) {
    if (dM(0, 0) >= 0.0) return std::numeric_limits<double>::infinity();
    return -M(0, 0) / dM(0, 0);
  }
  Eigen::LLT<RMat> llt(M);
  if (llt.info() != Eigen::Success) return 0.0;
  RMat W = llt.matrixL().solve(dM);
  W = llt.matrixL().solve(W.transpose()).eval();
  const double lmin = minEig((W + W.transpose()) / 2.0);
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

struct Presolve {
  std::vector<int> keep;
  bool infeasible = false;
  RVec certificate;  // original indexing, b^T y = 1, A^T y = 0
};

/// Greedy pivoted Cholesky on the constraint Gram matrix; drops dependent
/// rows, flagging inconsistent right-hand sides.
Presolve presolveRows(const SdpProblem& p) {
  const int m = static_cast<int>(p.constraints.size());
  Presolve out;

  // Gram matrix via scaled svec inner products: <A_i, A_j> with the
  // convention matching traceProduct (off-diagonals count twice).
  RMat G(m, m);
  {
    // dense per-block accumulation of each row is too large; use entry maps
    // keyed on (block, row, col).  Constraint sets are modest, so a sorted
    // triplet merge is enough.
    std::vector<std::vector<SdpEntry>> sorted(m);
    for (int i = 0; i < m; ++i) {
      sorted[i] = p.constraints[i].entries;
      std::sort(sorted[i].begin(), sorted[i].end(), [](const SdpEntry& a, const SdpEntry& b) {
        return std::tie(a.block, a.row, a.col) < std::tie(b.block, b.row, b.col);
      });
      // merge duplicate positions
      std::vector<SdpEntry> merged;
      for (const auto& e : sorted[i]) {
        if (!merged.empty() && merged.back().block == e.block && merged.back().row == e.row &&
            merged.back().col == e.col)
          merged.back().value += e.value;
        else
          merged.push_back(e);
      }
      sorted[i] = std::move(merged);
    }
    auto dot = [](const std::vector<SdpEntry>& a, const std::vector<SdpEntry>& b) {
      double acc = 0.0;
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        const auto ka = std::tie(a[i].block, a[i].row, a[i].col);
        const auto kb = std::tie(b[j].block, b[j].row, b[j].col);
        if (ka < kb)
          ++i;
        else if (kb < ka)
          ++j;
        else {
          acc += a[i].value * b[j].value * (a[i].row == a[i].col ? 1.0 : 2.0);
          ++i;
          ++j;
        }
      }
      return acc;
    };
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) G(i, j) = G(j, i) = dot(sorted[i], sorted[j]);
  }

  const double scale = m == 0 ? 1.0 : std::max(1.0, G.diagonal().maxCoeff());
  const double dropTol = 1e-10 * scale;

  RVec resid = G.diagonal();
  RMat L = RMat::Zero(m, std::min<int>(m, 4096));
  std::vector<int> pivots;
  std::vector<char> used(m, 0);
  while (true) {
    int p = -1;
    double best = dropTol;
    for (int i = 0; i < m; ++i)
      if (!used[i] && resid(i) > best) {
        best = resid(i);
        p = i;
      }
    if (p < 0) break;
    const int t = static_cast<int>(pivots.size());
    if (t >= L.cols()) L.conservativeResize(Eigen::NoChange, L.cols() * 2);
    const double dp = std::sqrt(resid(p));
    for (int i = 0; i < m; ++i) {
      if (used[i] && i != p) {
        L(i, t) = 0.0;
        continue;
      }
      double v = G(i, p);
      for (int u = 0; u < t; ++u) v -= L(i, u) * L(p, u);
      L(i, t) = v / dp;
    }
    L(p, t) = dp;  // exact by construction
    for (int i = 0; i < m; ++i)
      if (!used[i]) resid(i) = std::max(0.0, resid(i) - L(i, t) * L(i, t));
    used[p] = 1;
    pivots.push_back(p);
  }

  // consistency of dropped rows
  const int r = static_cast<int>(pivots.size());
  RMat Lpp(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) Lpp(a, b) = L(pivots[a], b);
  RVec bP(r);
  for (int a = 0; a < r; ++a) bP(a) = p.rhs(pivots[a]);

  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    RVec li = L.row(i).head(r).transpose();
    // lambda = Lpp^{-T} l_i  (A_P^T lambda = a_i)
    RVec lambda = Lpp.transpose().triangularView<Eigen::Upper>().solve(li);
    const double pred = lambda.dot(bP);
    const double dev = std::abs(p.rhs(i) - pred);
    if (dev > 1e-8 * (1.0 + std::abs(p.rhs(i)) + lambda.cwiseAbs().sum())) {
      out.infeasible = true;
      RVec cert = RVec::Zero(m);
      cert(i) = 1.0;
      for (int a = 0; a < r; ++a) cert(pivots[a]) -= lambda(a);
      const double bty = p.rhs.dot(cert);
      out.certificate = cert / bty;  // bty = rhs(i) - pred != 0
      return out;
    }
  }

  std::sort(pivots.begin(), pivots.end());
  out.keep = pivots;
  return out;
}

}  // namespace

SdpSolution solve(const SdpProblem& prob, const SdpOptions& opts) {
  const int nBlocks = static_cast<int>(prob.blockSizes.size());
  const int mOrig = static_cast<int>(prob.constraints.size());
  if (prob.rhs.size() != mOrig)
    throw std::invalid_argument("sdp::solve: rhs length does not match constraint count");
  for (int s : prob.blockSizes)
    if (s < 1) throw std::invalid_argument("sdp::solve: block sizes must be >= 1");
  auto checkEntries = [&](const std::vector<SdpEntry>& es) {
    for (const auto& e : es) {
      if (e.block < 0 || e.block >= nBlocks || e.row < 0 || e.col < e.row ||
          e.col >= prob.blockSizes[e.block])
        throw std::invalid_argument("sdp::solve: entry out of range (row <= col required)");
    }
  };
  checkEntries(prob.objective);
  for (const auto& c : prob.constraints) checkEntries(c.entries);

  SdpSolution sol;
  sol.y = RVec::Zero(mOrig);

  Presolve pre = presolveRows(prob);
  if (pre.infeasible) {
    sol.status = SdpStatus::PrimalInfeasible;
    sol.certificate = pre.certificate;
    return sol;
  }

  Workspace ws;
  ws.prob = &prob;
  ws.rows = pre.keep;
  for (int s : prob.blockSizes) ws.nTotal += s;
  const int m = static_cast<int>(ws.rows.size());
  const int nTot = ws.nTotal;

  RVec b(m);
  for (int i = 0; i < m; ++i) b(i) = prob.rhs(ws.rows[i]);

  BlockMats C = ws.zeros();
  ws.addScaled(C, prob.objective, 1.0);
  const double normC = std::max(1.0, frobBlocks(C));
  const double normB = std::max(1.0, b.norm());

  // constraint norms for the initial point
  std::vector<double> anorm(m);
  {
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (const auto& e : prob.constraints[ws.rows[i]].entries)
        acc += e.value * e.value * (e.row == e.col ? 1.0 : 2.0);
      anorm[i] = std::sqrt(acc);
    }
  }
  double xi = 10.0, eta = 10.0;
  for (int i = 0; i < m; ++i) {
    xi = std::max(xi, static_cast<double>(nTot) * (1.0 + std::abs(b(i))) / (1.0 + anorm[i]));
    eta = std::max(eta, anorm[i]);
  }
  eta = std::max(eta, (1.0 + frobBlocks(C)) / std::sqrt(static_cast<double>(nTot)));

  BlockMats X = ws.identity(xi);
  BlockMats S = ws.identity(eta);
  RVec y = RVec::Zero(m);

  auto finalize = [&](SdpStatus st, int iter) {
    sol.status = st;
    sol.X = X;
    sol.S = S;
    sol.y = RVec::Zero(mOrig);
    for (int i = 0; i < m; ++i) sol.y(ws.rows[i]) = y(i);
    sol.iterations = iter;
    sol.primalObjective = innerBlocks(C, X);
    sol.dualObjective = b.dot(y);
  };

  const int maxIter = std::max(1, opts.maxIter);
  for (int iter = 0; iter < maxIter; ++iter) {
    // residuals
    RVec rp = b - ws.applyA(X);
    BlockMats Rd = ws.applyAT(y);
    for (int bk = 0; bk < nBlocks; ++bk) Rd[bk] = C[bk] - S[bk] - Rd[bk];
    const double mu = innerBlocks(X, S) / nTot;

    const double pObj = innerBlocks(C, X);
    const double dObj = b.dot(y);
    sol.primalResidual = rp.norm() / normB;
    sol.dualResidual = frobBlocks(Rd) / normC;
    sol.gapResidual = std::abs(pObj - dObj) / (1.0 + std::abs(pObj) + std::abs(dObj));

    if (sol.primalResidual <= opts.tol && sol.dualResidual <= opts.tol &&
        sol.gapResidual <= opts.tol) {
      finalize(SdpStatus::Optimal, iter);
      return sol;
    }

    // infeasibility rays
    if (iter >= 5) {
      const double yn = y.norm();
      if (yn > 1e-12) {
        RVec yhat = y / yn;
        const double bty = b.dot(yhat);
        if (bty > opts.infeasTol) {
          BlockMats Z = ws.applyAT(yhat);
          double lmax = -std::numeric_limits<double>::infinity();
          for (const auto& zb : Z) lmax = std::max(lmax, maxEig(zb));
          if (lmax <= 1e-8) {
            // re-verify the scaled certificate
            RVec cert = yhat / bty;
            BlockMats Zc = ws.applyAT(cert);
            double lmax2 = -std::numeric_limits<double>::infinity();
            for (const auto& zb : Zc) lmax2 = std::max(lmax2, maxEig(zb));
            if (lmax2 <= 1e-8 * (1.0 + cert.norm())) {
              finalize(SdpStatus::PrimalInfeasible, iter);
              sol.certificate = RVec::Zero(mOrig);
              for (int i = 0; i < m; ++i) sol.certificate(ws.rows[i]) = cert(i);
              return sol;
            }
          }
        }
      }
      const double xn = frobBlocks(X);
      if (xn > 1e-12) {
        const double cobj = innerBlocks(C, X) / xn;
        RVec ax = ws.applyA(X) / xn;
        if (cobj < -opts.infeasTol && ax.cwiseAbs().maxCoeff() <= 1e-8) {
          finalize(SdpStatus::DualInfeasible, iter);
          return sol;
        }
      }
      if (!std::isfinite(mu) || mu > 1e18 || xn > 1e18) {
        finalize(SdpStatus::MaxIter, iter);
        return sol;
      }
    }

    // factor S, form S^{-1}
    BlockMats Sinv(nBlocks);
    bool ok = true;
    for (int bk = 0; bk < nBlocks; ++bk) {
      Eigen::LLT<RMat> llt(S[bk]);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      Sinv[bk] = llt.solve(RMat::Identity(S[bk].rows(), S[bk].cols()));
      Sinv[bk] = ((Sinv[bk] + Sinv[bk].transpose()) / 2.0).eval();
    }
    if (!ok) {
      finalize(SdpStatus::MaxIter, iter);
      return sol;
    }

    // Y_j = X A_j S^{-1} for the Schur complement M_ij = <A_i, Y_j>
    std::vector<BlockMats> Y(m);
    for (int j = 0; j < m; ++j) {
      Y[j].resize(nBlocks);
      for (int bk = 0; bk < nBlocks; ++bk)
        Y[j][bk] = RMat::Zero(prob.blockSizes[bk], prob.blockSizes[bk]);
      // group entries by block
      for (int bk = 0; bk < nBlocks; ++bk) {
        const int n = prob.blockSizes[bk];
        // collect entries of this block
        RMat Aj = RMat::Zero(n, n);
        bool any = false;
        int nnz = 0;
        for (const auto& e : prob.constraints[ws.rows[j]].entries)
          if (e.block == bk) {
            Aj(e.row, e.col) += e.value;
            if (e.row != e.col) Aj(e.col, e.row) += e.value;
            any = true;
            ++nnz;
          }
        if (!any) continue;
        if (nnz * 4 >= n) {
          Y[j][bk] = X[bk] * Aj * Sinv[bk];
        } else {
          // sparse path: X A has nonzero columns only on the support of A
          std::vector<int> support;
          RMat XA = RMat::Zero(n, n);
          for (const auto& e : prob.constraints[ws.rows[j]].entries)
            if (e.block == bk) {
              XA.col(e.col) += e.value * X[bk].col(e.row);
              support.push_back(e.col);
              if (e.row != e.col) {
                XA.col(e.row) += e.value * X[bk].col(e.col);
                support.push_back(e.row);
              }
            }
          std::sort(support.begin(), support.end());
          support.erase(std::unique(support.begin(), support.end()), support.end());
          for (int c : support) Y[j][bk] += XA.col(c) * Sinv[bk].row(c);
        }
      }
    }

    RMat M(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        M(i, j) = ws.traceProduct(prob.constraints[ws.rows[i]].entries, Y[j]);
    Eigen::PartialPivLU<RMat> lu(M);

    auto solveDirection = [&](double nu, const BlockMats* corr) {
      // rhs_i = rp_i - nu tr(A_i Sinv) + tr(A_i X) + tr(A_i X Rd Sinv)
      //         (+ tr(A_i dXa dSa Sinv) in the corrector)
      BlockMats K1(nBlocks);
      for (int bk = 0; bk < nBlocks; ++bk) K1[bk] = X[bk] * Rd[bk] * Sinv[bk];
      RVec rhs(m);
      for (int i = 0; i < m; ++i) {
        const auto& es = prob.constraints[ws.rows[i]].entries;
        double v = rp(i) - nu * ws.traceProduct(es, Sinv) + ws.traceProduct(es, X) +
                   ws.traceProduct(es, K1);
        if (corr) v += ws.traceProduct(es, *corr);
        rhs(i) = v;
      }
      RVec dy = lu.solve(rhs);
      BlockMats dS = ws.applyAT(dy);
      for (int bk = 0; bk < nBlocks; ++bk) dS[bk] = Rd[bk] - dS[bk];
      BlockMats dX(nBlocks);
      for (int bk = 0; bk < nBlocks; ++bk) {
        RMat t = nu * Sinv[bk] - X[bk] - X[bk] * dS[bk] * Sinv[bk];
        if (corr) t -= (*corr)[bk];
        dX[bk] = (t + t.transpose()) / 2.0;
      }
      return std::make_tuple(dy, dX, dS);
    };

    // predictor
    auto [dya, dXa, dSa] = solveDirection(0.0, nullptr);
    double apA = 1.0, adA = 1.0;
    for (int bk = 0; bk < nBlocks; ++bk) {
      apA = std::min(apA, maxStep(X[bk], dXa[bk]));
      adA = std::min(adA, maxStep(S[bk], dSa[bk]));
    }
    double muAff = 0.0;
    for (int bk = 0; bk < nBlocks; ++bk)
      muAff += ((X[bk] + apA * dXa[bk]).cwiseProduct(S[bk] + adA * dSa[bk])).sum();
    muAff = std::max(0.0, muAff / nTot);
    double sigma = std::pow(muAff / mu, 3.0);
    sigma = std::min(1.0, std::max(1e-8, sigma));

    // corrector
    BlockMats corr(nBlocks);
    for (int bk = 0; bk < nBlocks; ++bk) corr[bk] = dXa[bk] * dSa[bk] * Sinv[bk];
    auto [dy, dX, dS] = solveDirection(sigma * mu, &corr);
    if (!dy.allFinite()) {
      finalize(SdpStatus::MaxIter, iter);
      return sol;
    }

    double ap = std::numeric_limits<double>::infinity();
    double ad = std::numeric_limits<double>::infinity();
    for (int bk = 0; bk < nBlocks; ++bk) {
      ap = std::min(ap, maxStep(X[bk], dX[bk]));
      ad = std::min(ad, maxStep(S[bk], dS[bk]));
    }
    const double gamma = iter < 3 ? 0.9 : 0.98;
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (!(ap > 0.0) || !(ad > 0.0)) {
      finalize(SdpStatus::MaxIter, iter);
      return sol;
    }

    for (int bk = 0; bk < nBlocks; ++bk) {
      X[bk] += ap * dX[bk];
      S[bk] += ad * dS[bk];
      X[bk] = ((X[bk] + X[bk].transpose()) / 2.0).eval();
      S[bk] = ((S[bk] + S[bk].transpose()) / 2.0).eval();
    }
    y += ad * dy;
    sol.iterations = iter + 1;
  }

  finalize(SdpStatus::MaxIter, maxIter);
  return sol;
}

}  // namespace symext
