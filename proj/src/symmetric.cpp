// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0

#include "symext/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace symext {

long long sym_dim(int d, int k) {
  if (d < 1 || k < 0) throw std::invalid_argument("sym_dim: require d >= 1, k >= 0");
  // binom(k + d - 1, d - 1), multiplicative form
  long long n = k + d - 1;
  long long r = d - 1;
  if (r > n - r) r = n - r;
  long long acc = 1;
  for (long long i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

SymmetricSpace sym_isometry(int d, int k) {
  if (d < 1 || k < 1) throw std::invalid_argument("sym_isometry: require d >= 1, k >= 1");
  long long dk = 1;
  for (int i = 0; i < k; ++i) {
    dk *= d;
    if (dk > kSymAmplitudeCap)
      throw std::invalid_argument("sym_isometry: d^k exceeds the amplitude cap " +
                                  std::to_string(kSymAmplitudeCap));
  }

  // first pass: multiplicity of each occupation class
  std::map<std::vector<int>, long long> mult;
  std::vector<int> digits;
  std::vector<int> dims(k, d);
  for (long long idx = 0; idx < dk; ++idx) {
    detail::decode_index(idx, dims, digits);
    std::vector<int> occ(d, 0);
    for (int v : digits) ++occ[v];
    ++mult[occ];
  }

  // column order: lexicographically smallest representative tuple, which is
  // the non-decreasing tuple; equivalent to occupation vectors in
  // descending lexicographic order.
  SymmetricSpace space;
  space.localDim = d;
  space.copies = k;
  std::map<std::vector<int>, int> col_of;
  {
    std::vector<std::pair<std::vector<int>, long long>> classes(mult.begin(), mult.end());
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [occ, cnt] : classes) {
      col_of[occ] = static_cast<int>(space.basis.size());
      space.basis.push_back(occ);
      (void)cnt;
    }
  }
  const long long S = sym_dim(d, k);
  if (static_cast<long long>(space.basis.size()) != S)
    throw std::logic_error("sym_isometry: occupation count mismatch");

  space.isometry = RMat::Zero(dk, S);
  for (long long idx = 0; idx < dk; ++idx) {
    detail::decode_index(idx, dims, digits);
    std::vector<int> occ(d, 0);
    for (int v : digits) ++occ[v];
    space.isometry(idx, col_of[occ]) = 1.0 / std::sqrt(static_cast<double>(mult[occ]));
  }
  return space;
}

CMat lift(const CMat& x, const std::vector<int>& dims, const std::vector<int>& levels) {
  if (dims.size() != levels.size())
    throw std::invalid_argument("lift: dims and levels length mismatch");
  CMat V = CMat::Ones(1, 1);
  for (std::size_t i = 0; i < dims.size(); ++i)
    V = kron(V, sym_isometry(dims[i], levels[i]).isometry.cast<Complex>().eval());
  if (V.cols() != x.rows() || x.rows() != x.cols())
    throw std::invalid_argument("lift: operand side does not match compressed dimension");
  return V * x * V.adjoint();
}

}  // namespace symext
