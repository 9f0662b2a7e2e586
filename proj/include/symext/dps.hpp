// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symmetric-extension (DPS) hierarchy: builds and solves the
// noise-robustness SDP
//
//   minimize  lambda
//   s.t.      L(X) + lambda (rho - I/D) = rho,   tr X = 1,
//             X >= 0 on S^{k_1}(A_1) (x) ... (x) S^{k_N}(A_N),
//             PT_cut(X) >= 0 for each requested PPT cut,
//
// where L maps the compressed extension to its one-copy-per-factor
// marginal and D = prod d_i.  lambda* = 0 iff the state admits an
// extension at the given level; otherwise the dual equality multipliers
// yield an entanglement witness that is validated before any
// NOT_EXTENDIBLE verdict is issued.

#ifndef SYMEXT_DPS_HPP
#define SYMEXT_DPS_HPP

#include "symext/sdp.hpp"
#include "symext/states.hpp"
#include "symext/symmetric.hpp"

#include <functional>
#include <optional>
#include <string>

namespace symext {

/// Orthonormal Hermitian basis of d x d matrices under <A,B> = tr(AB):
/// the d diagonal units e_pp, then for each p < q (lexicographic) the pair
/// (e_pq + e_qp)/sqrt(2) and i(e_pq - e_qp)/sqrt(2).
std::vector<CMat> hermitian_basis(int d);

struct ExtensionSpec {
  std::vector<int> levels;                // k_i >= 1, one per factor
  std::vector<std::vector<int>> pptCuts;  // each: 0-based factor indices on
                                          // the transposed side of the cut
  double verdictTol = 1e-5;
  SdpOptions solverOpts{};
};

enum class VerdictStatus { Extendible, NotExtendible, Inconclusive };

struct Witness {
  CMat mat;                    // Hermitian on the original space, sup norm 1
  double valueOnState = 0.0;   // tr(W rho); negative when valid
  double liftedMinEig = 0.0;   // min eig of L'(W) - sum_cut PT_cut(Z_cut)
                               // and of the Z_cut themselves
  bool valid = false;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  double lambdaStar = 0.0;
  std::optional<Witness> witness;
  // diagnostics
  SdpStatus solverStatus = SdpStatus::MaxIter;
  double primalResidual = 0.0, dualResidual = 0.0, gapResidual = 0.0;
  int iterations = 0;
  double wallSeconds = 0.0;
  long long variableDim = 0;  // prod_i sym_dim(d_i, k_i)
};

/// The assembled SDP plus the bookkeeping needed to read a witness off the
/// dual solution.  Row layout: D^2 marginal rows (mixed-radix order over
/// the product Hermitian basis), one trace row, then dim^2 linking rows per
/// PPT cut.
struct ExtensionProblem {
  SdpProblem sdp;
  std::vector<int> dims;
  std::vector<int> levels;
  std::vector<std::vector<int>> pptCuts;
  long long variableDim = 0;                // compressed Hilbert dimension
  std::vector<std::vector<CMat>> factorBasis;      // per party: hermitian_basis(d_i)
  std::vector<std::vector<CMat>> compressedBasis;  // per party: V' (B_j (x) I) V
  std::vector<CMat> cutBasis;               // hermitian_basis(variableDim), if cuts
  int marginalRows = 0;                     // = D^2
  int traceRow = 0;
};

ExtensionProblem build_extension_sdp(const DensityMatrix& rho, const ExtensionSpec& spec);

/// Reads the entanglement witness off the dual multipliers of a solved
/// extension SDP and validates both witness invariants.
Witness extract_witness(const DensityMatrix& rho, const ExtensionProblem& prob,
                        const SdpSolution& sol);

Verdict check_extendible(const DensityMatrix& rho, const ExtensionSpec& spec);

/// Bisects the family parameter on [lo, hi] for the EXTENDIBLE ->
/// NOT_EXTENDIBLE flip, to width 1e-3; returns the midpoint.  The lower
/// endpoint must test extendible (throws otherwise); if the upper endpoint
/// is still extendible, returns hi.
double threshold_scan(const std::function<DensityMatrix(double)>& family, double lo,
                      double hi, const ExtensionSpec& spec);

}  // namespace symext

#endif  // SYMEXT_DPS_HPP
