// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symmetric subspace S^k(C^d): occupation-number basis, dimension, real
// isometry into the k-fold tensor power, and lifting of compressed
// extension variables back to the full tensor power.
//
// The occupation basis is ordered by the lexicographically smallest
// non-decreasing index tuple; for d=2, k=2 the columns are
// |00>, (|01>+|10>)/sqrt(2), |11>.  Isometry entries are real, which makes
// partial transposition commute with the compression factor-wise.

#ifndef SYMEXT_SYMMETRIC_HPP
#define SYMEXT_SYMMETRIC_HPP

#include "symext/linalg.hpp"

namespace symext {

/// Hard cap on the amplitudes d^k of one lifted factor.
inline constexpr long long kSymAmplitudeCap = 1LL << 20;

struct SymmetricSpace {
  int localDim = 0;
  int copies = 0;
  std::vector<std::vector<int>> basis;  // occupation vectors (n_1,...,n_d), sum = k
  RMat isometry;                        // d^k x binom(k+d-1, d-1), orthonormal columns
};

/// binom(k+d-1, d-1), the dimension of S^k(C^d).
long long sym_dim(int d, int k);

/// Builds the occupation basis and the real isometry V with V^T V = I.
SymmetricSpace sym_isometry(int d, int k);

/// Lifts an operator x on the compressed product of symmetric subspaces to
/// the full tensor power via (V_1 (x) ... (x) V_N) x (...)^dagger.  Copies of
/// factor i occupy k_i contiguous slots in the output ordering.
CMat lift(const CMat& x, const std::vector<int>& dims, const std::vector<int>& levels);

}  // namespace symext

#endif  // SYMEXT_SYMMETRIC_HPP
