// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form distance bounds between the level-(k_1..k_N) extendible set
// and the separable set, plus the associated resource estimates.  All
// logarithms are base 2 (qubit-counting convention); every report carries
// that flag in its caveats.

#ifndef SYMEXT_BOUNDS_HPP
#define SYMEXT_BOUNDS_HPP

#include <string>
#include <vector>

namespace symext {

enum class NormKind { Trace, TracePpt, Locc, Frobenius };

NormKind parse_norm_kind(const std::string& name);  // trace|trace-ppt|locc|frobenius
std::string norm_kind_name(NormKind kind);

struct BoundReport {
  double value = 0.0;
  std::vector<double> constituentTerms;   // per-i deltas; sums to value
  std::vector<long long> impliedLevels;   // k_i = prod_{j>=i} ell_j (schedule form)
  int dimensionCount = 0;                 // N
  std::vector<std::string> caveats;
};

/// Two-particle bound delta(|A|, |B|, k).  Dimensions are doubles so that
/// an irrelevant side can be passed as infinity; k may be fractional.
///   trace:      4 |A| / k
///   locc:       1/(8 ln 2) * sqrt(log2 |B| / k)
///   frobenius:  sqrt(153) * locc value
///   trace_ppt:  (|A| / k)^2, constant unspecified
double two_particle_delta(NormKind kind, double dimA, double dimB, double k);

/// Sum over i = 1..N-1 of the two-particle bound at (|A_i|, k_i); kinds
/// Trace and TracePpt.
BoundReport multiparty_bound_thm1(const std::vector<int>& dims,
                                  const std::vector<long long>& levels,
                                  NormKind kind = NormKind::Trace);

/// Schedule form: given ell_1..ell_{N-1}, the implied levels are
/// k_i = prod_{j>=i} ell_j (k_N = 1) and the bound sums the two-particle
/// value at (|A_{i+1}|, ell_i); kinds Locc and Frobenius.  With
/// `corollaryIndexing` the printed corollary variant using |A_i| is
/// reproduced instead.
BoundReport multiparty_bound_thm2(const std::vector<int>& dims,
                                  const std::vector<long long>& ells, NormKind kind,
                                  bool corollaryIndexing = false);

/// De Finetti form (requires n <= N <= k):
///   locc:       (N-1) sqrt(log2 |A|) / k^{1/(2N)} + 2 n^2 / N
///   frobenius:  (N-1) delta_frob(|A|, k^{1/N}) + 2 n^2 / N
/// Other kinds are rejected.
double definetti_bound(int dimA, double n, double N, double k, NormKind kind);

struct SearchSpace {
  long long variableDim = 0;      // prod_i sym_dim(|A_i|, k_i)
  double logVariableDim = 0.0;    // log2(variableDim)
  double paperLogBound = 0.0;     // log2 of prod_i d_i (k_i + 1)^{d_i - 1}
};

SearchSpace search_space(const std::vector<int>& dims, const std::vector<int>& levels);

/// ell_i = ceil( (N-1)^2 / (8 ln 2)^2 * eps^-2 * log2 |A_{i+1}| ) for
/// i = 1..N-1; feeding the schedule back into multiparty_bound_thm2 (locc)
/// gives a bound <= eps.
std::vector<long long> ell_for_error(const std::vector<int>& dims, double epsilon);

}  // namespace symext

#endif  // SYMEXT_BOUNDS_HPP
