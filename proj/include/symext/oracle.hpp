// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent brute-force verifiers for cross-checking the main pipeline
// at small scale: exact PPT separability where the criterion is complete,
// an uncompressed-space extendibility SDP with explicit swap-invariance
// constraints (built without any code shared with the dps module), and a
// conditional-gradient nearest-separable-state estimator.

#ifndef SYMEXT_ORACLE_HPP
#define SYMEXT_ORACLE_HPP

#include "symext/dps.hpp"
#include "symext/states.hpp"

#include <cstdint>
#include <string>

namespace symext {

struct OracleResult {
  bool pass = false;     // separable / extendible under the oracle's test
  double margin = 0.0;   // min PT eigenvalue, or lambda* of the full SDP
  std::string method;
};

/// Exact Peres-Horodecki decision; dims must be (2,2), (2,3) or (3,2)
/// (elsewhere PPT is only necessary and this op refuses to pronounce).
/// Separable iff min PT eigenvalue >= -1e-10.
OracleResult ppt_exact_separability(const DensityMatrix& rho);

/// lambda* from an SDP whose variable lives on the full tensor power
/// prod_i A_i^{k_i} (cap 2^12) with explicit adjacent-swap invariance
/// equality rows; must agree with dps::check_extendible within 1e-5.
/// PPT cuts in the spec are not supported here.
OracleResult uncompressed_extendibility(const DensityMatrix& rho, const ExtensionSpec& spec);

struct NearestSeparable {
  double frobeniusDistance = 0.0;
  double traceDistance = 0.0;  // trace norm of the difference (not halved)
  DensityMatrix sigma;         // best separable mixture found
};

/// Conditional-gradient (Frank-Wolfe) minimization of ||sigma - rho||_F
/// over the convex hull of pure product states; `restarts` independent
/// seeded starts (iteration cap 5000 each).  Upper bound by construction.
NearestSeparable nearest_separable_estimate(const DensityMatrix& rho, int restarts,
                                            std::uint64_t seed);

}  // namespace symext

#endif  // SYMEXT_ORACLE_HPP
