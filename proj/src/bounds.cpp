// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0

#include "symext/bounds.hpp"

#include "symext/symmetric.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace symext {

namespace {

const std::string kLogBaseCaveat = "logarithms are base 2";
const std::string kPptCaveat = "constant unspecified in paper";
constexpr double kEightLn2 = 8.0 * 0.693147180559945309417232121458;  // 8 ln 2

double log2d(double x) { return std::log2(x); }

void requireDims(const std::vector<int>& dims, std::size_t atLeast) {
  if (dims.size() < atLeast) throw std::invalid_argument("bound: need at least two factors");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("bound: dimensions must be positive");
}

}  // namespace

NormKind parse_norm_kind(const std::string& name) {
  if (name == "trace") return NormKind::Trace;
  if (name == "trace-ppt" || name == "trace_ppt") return NormKind::TracePpt;
  if (name == "locc") return NormKind::Locc;
  if (name == "frobenius") return NormKind::Frobenius;
  throw std::invalid_argument("unknown norm kind: " + name);
}

std::string norm_kind_name(NormKind kind) {
  switch (kind) {
    case NormKind::Trace: return "trace";
    case NormKind::TracePpt: return "trace-ppt";
    case NormKind::Locc: return "locc";
    case NormKind::Frobenius: return "frobenius";
  }
  return "?";
}

double two_particle_delta(NormKind kind, double dimA, double dimB, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("two_particle_delta: k must be positive");
  switch (kind) {
    case NormKind::Trace:
      if (!std::isfinite(dimA) || dimA < 1.0)
        throw std::invalid_argument("two_particle_delta(trace): finite |A| required");
      return 4.0 * dimA / k;
    case NormKind::TracePpt:
      if (!std::isfinite(dimA) || dimA < 1.0)
        throw std::invalid_argument("two_particle_delta(trace-ppt): finite |A| required");
      return (dimA / k) * (dimA / k);
    case NormKind::Locc:
      if (!std::isfinite(dimB) || dimB < 1.0)
        throw std::invalid_argument("two_particle_delta(locc): finite |B| required");
      return std::sqrt(log2d(dimB) / k) / kEightLn2;
    case NormKind::Frobenius:
      return std::sqrt(153.0) * two_particle_delta(NormKind::Locc, dimA, dimB, k);
  }
  throw std::invalid_argument("two_particle_delta: unknown norm kind");
}

BoundReport multiparty_bound_thm1(const std::vector<int>& dims,
                                  const std::vector<long long>& levels, NormKind kind) {
  requireDims(dims, 2);
  if (levels.size() != dims.size())
    throw std::invalid_argument("multiparty_bound_thm1: one level per factor required");
  if (kind != NormKind::Trace && kind != NormKind::TracePpt)
    throw std::invalid_argument("multiparty_bound_thm1: trace or trace-ppt only");
  BoundReport rep;
  rep.dimensionCount = static_cast<int>(dims.size());
  rep.caveats.push_back(kLogBaseCaveat);
  if (kind == NormKind::TracePpt) rep.caveats.push_back(kPptCaveat);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    if (levels[i] < 1) throw std::invalid_argument("multiparty_bound_thm1: levels must be >= 1");
    rep.constituentTerms.push_back(
        two_particle_delta(kind, static_cast<double>(dims[i]), inf,
                           static_cast<double>(levels[i])));
  }
  rep.value = std::accumulate(rep.constituentTerms.begin(), rep.constituentTerms.end(), 0.0);
  rep.impliedLevels = levels;
  return rep;
}

BoundReport multiparty_bound_thm2(const std::vector<int>& dims,
                                  const std::vector<long long>& ells, NormKind kind,
                                  bool corollaryIndexing) {
  requireDims(dims, 2);
  if (ells.size() + 1 != dims.size())
    throw std::invalid_argument("multiparty_bound_thm2: schedule length must be N-1");
  if (kind != NormKind::Locc && kind != NormKind::Frobenius)
    throw std::invalid_argument("multiparty_bound_thm2: locc or frobenius only");
  BoundReport rep;
  rep.dimensionCount = static_cast<int>(dims.size());
  rep.caveats.push_back(kLogBaseCaveat);
  if (corollaryIndexing)
    rep.caveats.push_back("corollary indexing (|A_i| under the log) as printed");
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t N = dims.size();
  rep.impliedLevels.assign(N, 1);
  for (std::size_t i = N - 1; i-- > 0;) {
    if (ells[i] < 1) throw std::invalid_argument("multiparty_bound_thm2: ells must be >= 1");
    rep.impliedLevels[i] = rep.impliedLevels[i + 1] * ells[i];
  }
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const int dim = corollaryIndexing ? dims[i] : dims[i + 1];
    rep.constituentTerms.push_back(
        two_particle_delta(kind, inf, static_cast<double>(dim), static_cast<double>(ells[i])));
  }
  rep.value = std::accumulate(rep.constituentTerms.begin(), rep.constituentTerms.end(), 0.0);
  return rep;
}

double definetti_bound(int dimA, double n, double N, double k, NormKind kind) {
  if (dimA < 1) throw std::invalid_argument("definetti_bound: |A| >= 1 required");
  if (!(n >= 0.0) || !(n <= N) || !(N <= k))
    throw std::invalid_argument("definetti_bound: require n <= N <= k");
  const double tail = 2.0 * n * n / N;
  switch (kind) {
    case NormKind::Locc:
      // Corollary form: no 1/(8 ln 2) prefactor
      return (N - 1.0) * std::sqrt(log2d(static_cast<double>(dimA))) /
                 std::pow(k, 1.0 / (2.0 * N)) +
             tail;
    case NormKind::Frobenius:
      return (N - 1.0) * two_particle_delta(NormKind::Frobenius,
                                            std::numeric_limits<double>::infinity(),
                                            static_cast<double>(dimA),
                                            std::pow(k, 1.0 / N)) +
             tail;
    default:
      throw std::invalid_argument("definetti_bound: locc or frobenius only");
  }
}

SearchSpace search_space(const std::vector<int>& dims, const std::vector<int>& levels) {
  requireDims(dims, 1);
  if (levels.size() != dims.size())
    throw std::invalid_argument("search_space: one level per factor required");
  SearchSpace out;
  out.variableDim = 1;
  out.paperLogBound = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (levels[i] < 1) throw std::invalid_argument("search_space: levels must be >= 1");
    out.variableDim *= sym_dim(dims[i], levels[i]);
    // Per-factor form of the d(k+1)^{d-1} counting bound: occupation
    // vectors are determined by their first d-1 entries (each in 0..k),
    // and the symmetric subspace never exceeds the full k-fold power.
    // The two caps meet sym_dim exactly at d = 2.
    out.paperLogBound += std::min(levels[i] * log2d(static_cast<double>(dims[i])),
                                  (dims[i] - 1) * log2d(static_cast<double>(levels[i]) + 1.0));
  }
  out.logVariableDim = log2d(static_cast<double>(out.variableDim));
  return out;
}

std::vector<long long> ell_for_error(const std::vector<int>& dims, double epsilon) {
  requireDims(dims, 2);
  if (!(epsilon > 0.0)) throw std::invalid_argument("ell_for_error: epsilon must be positive");
  const double N = static_cast<double>(dims.size());
  std::vector<long long> out;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    const double v = (N - 1.0) * (N - 1.0) / (kEightLn2 * kEightLn2) / (epsilon * epsilon) *
                     log2d(static_cast<double>(dims[i + 1]));
    out.push_back(std::max<long long>(1, static_cast<long long>(std::ceil(v))));
  }
  return out;
}

}  // namespace symext
