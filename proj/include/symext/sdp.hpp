// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Self-contained solver for standard-form semidefinite programs
//
//   minimize    <C, X>
//   subject to  <A_i, X> = b_i,   X >= 0 (block diagonal)
//
// with real symmetric PSD blocks (1x1 blocks model nonnegative scalars)
// and dense linear equality constraints.  Complex Hermitian variables
// enter through the real embedding [[Re, -Im], [Im, Re]].
//
// The algorithm is a Mehrotra predictor-corrector primal-dual interior
// point method with the HKM search direction.  A presolve pass removes
// linearly dependent equality rows (reporting inconsistent ones as primal
// infeasibility).  Primal infeasibility is otherwise detected through
// normalized dual rays, which are re-verified before being reported.
// The solver is fully deterministic.

#ifndef SYMEXT_SDP_HPP
#define SYMEXT_SDP_HPP

#include "symext/linalg.hpp"

namespace symext {

/// One entry of a symmetric constraint/objective matrix; row <= col, the
/// mirrored entry is implied.
struct SdpEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct SdpConstraint {
  std::vector<SdpEntry> entries;
};

struct SdpProblem {
  std::vector<int> blockSizes;
  std::vector<SdpEntry> objective;
  std::vector<SdpConstraint> constraints;
  RVec rhs;
};

enum class SdpStatus { Optimal, PrimalInfeasible, DualInfeasible, MaxIter };

struct SdpOptions {
  double tol = 1e-8;        // max of primal / dual / gap residual at exit
  int maxIter = 250;
  double infeasTol = 1e-7;  // normalized-ray threshold
};

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIter;
  std::vector<RMat> X;      // primal block values
  std::vector<RMat> S;      // dual slack blocks
  RVec y;                   // equality multipliers (original row indexing)
  double primalObjective = 0.0;
  double dualObjective = 0.0;
  double primalResidual = 0.0;
  double dualResidual = 0.0;
  double gapResidual = 0.0;
  int iterations = 0;
  RVec certificate;         // dual ray when PrimalInfeasible: A^T y <= 0, b^T y = 1
};

SdpSolution solve(const SdpProblem& problem, const SdpOptions& opts = {});

/// [[Re H, -Im H], [Im H, Re H]]; PSD iff H is, spectrum doubled.
RMat hermitian_embed(const CMat& h, double rel_tol = 1e-12);

/// Inverse of hermitian_embed, averaging over the embedding symmetry.
CMat hermitian_unembed(const RMat& y);

}  // namespace symext

#endif  // SYMEXT_SDP_HPP
