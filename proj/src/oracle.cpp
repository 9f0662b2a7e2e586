// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0

#include "symext/oracle.hpp"

#include "symext/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

namespace symext {

namespace {

constexpr long long kFullSpaceCap = 1LL << 12;

/// Local (deliberately independent) Hermitian basis of C^{d x d}:
/// diagonal units, then unnormalized real/imaginary pair units.
std::vector<CMat> localBasis(int d) {
  std::vector<CMat> out;
  for (int p = 0; p < d; ++p) {
    CMat m = CMat::Zero(d, d);
    m(p, p) = 1.0;
    out.push_back(m);
  }
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      CMat m = CMat::Zero(d, d);
      m(p, q) = m(q, p) = 1.0;
      out.push_back(m);
      CMat a = CMat::Zero(d, d);
      a(p, q) = Complex(0.0, 1.0);
      a(q, p) = Complex(0.0, -1.0);
      out.push_back(a);
    }
  return out;
}

/// Emits the embedded upper-triangle entries of the Hermitian matrix entry
/// h(r,c) (r <= c expected): four real entries per complex one.
void emitComplexEntry(std::vector<SdpEntry>& es, int block, long long F, long long r,
                      long long c, Complex v) {
  const int ri = static_cast<int>(r), ci = static_cast<int>(c), n = static_cast<int>(F);
  if (v.real() != 0.0) {
    es.push_back({block, ri, ci, v.real()});
    es.push_back({block, ri + n, ci + n, v.real()});
  }
  if (r != c && v.imag() != 0.0) {
    es.push_back({block, ri, ci + n, -v.imag()});
    es.push_back({block, ci, ri + n, v.imag()});
  }
}

}  // namespace

OracleResult ppt_exact_separability(const DensityMatrix& rho) {
  const auto& d = rho.dims;
  const bool supported = d.size() == 2 && ((d[0] == 2 && d[1] == 2) || (d[0] == 2 && d[1] == 3) ||
                                           (d[0] == 3 && d[1] == 2));
  if (!supported)
    throw std::invalid_argument(
        "ppt_exact_separability: PPT is decisive only for 2x2 and 2x3 systems");
  CMat pt = partial_transpose(rho.mat, rho.dims, {1});
  OracleResult out;
  out.method = "ppt-exact";
  out.margin = eig_hermitian(pt, 1e-8).first(0);
  out.pass = out.margin >= -1e-10;
  return out;
}

OracleResult uncompressed_extendibility(const DensityMatrix& rho, const ExtensionSpec& spec) {
  const int N = static_cast<int>(rho.dims.size());
  if (static_cast<int>(spec.levels.size()) != N)
    throw std::invalid_argument("uncompressed_extendibility: levels length mismatch");
  if (!spec.pptCuts.empty())
    throw std::invalid_argument("uncompressed_extendibility: ppt cuts not supported");

  // full-space layout: copies party-major
  std::vector<int> ldims;
  long long F = 1;
  for (int i = 0; i < N; ++i) {
    if (spec.levels[i] < 1)
      throw std::invalid_argument("uncompressed_extendibility: levels must be >= 1");
    for (int c = 0; c < spec.levels[i]; ++c) {
      ldims.push_back(rho.dims[i]);
      F *= rho.dims[i];
      if (F > kFullSpaceCap)
        throw std::invalid_argument("uncompressed_extendibility: full space exceeds cap 2^12");
    }
  }
  const long long D = rho.side();
  const auto lstr = detail::strides(ldims);
  const int slots = static_cast<int>(ldims.size());
  // slot of the first copy of each party
  std::vector<int> firstSlot(N);
  for (int i = 0, off = 0; i < N; off += spec.levels[i], ++i) firstSlot[i] = off;

  SdpProblem p;
  p.blockSizes = {2 * static_cast<int>(F), 1};
  p.objective = {{1, 0, 0, 1.0}};
  std::vector<double> rhs;

  // marginal rows over the product of local Hermitian bases
  std::vector<std::vector<CMat>> bases;
  for (int i = 0; i < N; ++i) bases.push_back(localBasis(rho.dims[i]));
  std::vector<int> radix(N), digit(N, 0);
  long long M = 1;
  for (int i = 0; i < N; ++i) {
    radix[i] = rho.dims[i] * rho.dims[i];
    M *= radix[i];
  }
  std::vector<int> rdig(slots);
  for (long long m = 0; m < M; ++m) {
    // G = (x)_i B_{digit_i} on the first copies; r and g scalars off rho
    CMat G = CMat::Identity(1, 1);
    double trG = 1.0;
    for (int i = 0; i < N; ++i) {
      G = kron(G, bases[i][digit[i]]).eval();
      trG *= bases[i][digit[i]].trace().real();
    }
    const double r = (G * rho.mat).trace().real();
    const double g = r - trG / static_cast<double>(D);
    SdpConstraint con;
    // sparse lift: entries connect indices agreeing on all non-first-copy
    // digits, weighted by the product of B entries on the first copies
    for (long long a = 0; a < F; ++a) {
      detail::decode_index(a, ldims, rdig);
      // enumerate column digits on the first copies
      std::vector<long long> cols{0};
      std::vector<Complex> vals{Complex(1.0, 0.0)};
      // start from the base column index with first-copy digits zeroed
      long long base = 0;
      for (int s = 0; s < slots; ++s) base += static_cast<long long>(rdig[s]) * lstr[s];
      for (int i = 0; i < N; ++i) base -= static_cast<long long>(rdig[firstSlot[i]]) * lstr[firstSlot[i]];
      for (int i = 0; i < N; ++i) {
        const CMat& B = bases[i][digit[i]];
        const int arow = rdig[firstSlot[i]];
        std::vector<long long> nc;
        std::vector<Complex> nv;
        for (int bcol = 0; bcol < rho.dims[i]; ++bcol) {
          const Complex w = B(arow, bcol);
          if (w == Complex(0.0, 0.0)) continue;
          for (std::size_t t = 0; t < cols.size(); ++t) {
            nc.push_back(cols[t] + static_cast<long long>(bcol) * lstr[firstSlot[i]]);
            nv.push_back(vals[t] * w);
          }
        }
        cols = std::move(nc);
        vals = std::move(nv);
      }
      for (std::size_t t = 0; t < cols.size(); ++t) {
        const long long c = base + cols[t];
        if (c >= a) emitComplexEntry(con.entries, 0, F, a, c, vals[t]);
      }
    }
    if (g != 0.0) con.entries.push_back({1, 0, 0, 2.0 * g});
    p.constraints.push_back(std::move(con));
    rhs.push_back(2.0 * r);
    for (int i = N - 1; i >= 0; --i) {
      if (++digit[i] < radix[i]) break;
      digit[i] = 0;
    }
  }

  // trace row
  {
    SdpConstraint con;
    for (int r = 0; r < 2 * F; ++r) con.entries.push_back({0, r, r, 1.0});
    p.constraints.push_back(std::move(con));
    rhs.push_back(2.0);
  }

  // adjacent-swap invariance: Z_{ab} = Z_{sigma(a) sigma(b)} for each
  // generator sigma; one real and one imaginary row per canonical pair
  std::vector<int> adig(slots), bdig(slots);
  for (int i = 0; i < N; ++i) {
    for (int t = 0; t + 1 < spec.levels[i]; ++t) {
      const int s1 = firstSlot[i] + t, s2 = firstSlot[i] + t + 1;
      auto sigma = [&](long long x, std::vector<int>& dig) {
        detail::decode_index(x, ldims, dig);
        std::swap(dig[s1], dig[s2]);
        return detail::encode_index(dig, lstr);
      };
      for (long long a = 0; a < F; ++a) {
        const long long sa = sigma(a, adig);
        for (long long b = a; b < F; ++b) {
          const long long sb = sigma(b, bdig);
          long long pa = sa, pb = sb;
          double isign = 1.0;  // Im Z_{sa,sb} = isign * Im Z_{pa,pb}
          if (pa > pb) {
            std::swap(pa, pb);
            isign = -1.0;
          }
          if (pa == a && pb == b) {
            if (isign < 0.0 && a != b) {
              // pair maps to its own mirror: Im Z_{ab} = 0
              SdpConstraint con;
              con.entries.push_back({0, static_cast<int>(a), static_cast<int>(b + F), -1.0});
              con.entries.push_back({0, static_cast<int>(b), static_cast<int>(a + F), 1.0});
              p.constraints.push_back(std::move(con));
              rhs.push_back(0.0);
            }
            continue;
          }
          if (std::make_pair(pa, pb) < std::make_pair(a, b)) continue;  // canonical once
          // real parts
          {
            SdpConstraint con;
            emitComplexEntry(con.entries, 0, F, a, b, Complex(1.0, 0.0));
            emitComplexEntry(con.entries, 0, F, pa, pb, Complex(-1.0, 0.0));
            p.constraints.push_back(std::move(con));
            rhs.push_back(0.0);
          }
          // imaginary parts (skip when both diagonal)
          if (a != b && pa != pb) {
            SdpConstraint con;
            con.entries.push_back({0, static_cast<int>(a), static_cast<int>(b + F), -1.0});
            con.entries.push_back({0, static_cast<int>(b), static_cast<int>(a + F), 1.0});
            con.entries.push_back({0, static_cast<int>(pa), static_cast<int>(pb + F), isign});
            con.entries.push_back({0, static_cast<int>(pb), static_cast<int>(pa + F), -isign});
            p.constraints.push_back(std::move(con));
            rhs.push_back(0.0);
          }
        }
      }
    }
  }

  p.rhs = Eigen::Map<RVec>(rhs.data(), static_cast<long long>(rhs.size()));
  SdpSolution sol = solve(p, spec.solverOpts);
  if (sol.status != SdpStatus::Optimal)
    throw std::runtime_error("uncompressed_extendibility: solver did not converge");

  OracleResult out;
  out.method = "uncompressed-sdp";
  out.margin = std::max(0.0, sol.primalObjective);
  out.pass = out.margin <= spec.verdictTol;
  return out;
}

NearestSeparable nearest_separable_estimate(const DensityMatrix& rho, int restarts,
                                            std::uint64_t seed) {
  constexpr int kIterCap = 5000;
  const int N = static_cast<int>(rho.dims.size());
  const long long D = rho.side();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto randomLocal = [&](int d) {
    CVec v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return (v / v.norm()).eval();
  };
  auto productState = [&](const std::vector<CVec>& locals) {
    CMat v = CMat::Identity(1, 1);
    for (const auto& u : locals) v = kron(v, u).eval();
    return (v * v.adjoint()).eval();
  };

  // linear minimization oracle: alternating min-eigenvector sweeps
  auto lmo = [&](const CMat& grad) {
    std::vector<CVec> locals;
    for (int i = 0; i < N; ++i) locals.push_back(randomLocal(rho.dims[i]));
    double prev = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < 60; ++sweep) {
      for (int i = 0; i < N; ++i) {
        CMat K = CMat::Identity(1, 1);
        for (int j = 0; j < N; ++j) {
          CMat f = (j == i) ? CMat(CMat::Identity(rho.dims[j], rho.dims[j]))
                            : CMat(locals[j]);
          K = kron(K, f).eval();
        }
        CMat local = K.adjoint() * grad * K;  // d_i x d_i
        auto [vals, vecs] = eig_hermitian((local + local.adjoint()) / 2.0, 1e-6);
        locals[i] = vecs.col(0);
      }
      CMat v = productState(locals);
      const double val = (grad * v).trace().real();
      if (prev - val < 1e-13 * (1.0 + std::abs(val))) break;
      prev = val;
    }
    return productState(locals);
  };

  NearestSeparable best;
  best.frobeniusDistance = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, restarts); ++r) {
    // Fully-corrective conditional gradient: keep every product state the
    // LMO produces and re-optimize the mixture weights over that finite
    // atom set (pairwise steps, linear convergence) between LMO calls.
    std::vector<CMat> atoms;
    std::vector<double> w, c;
    std::vector<std::vector<double>> gram;  // Re<P_i, P_j>
    auto addAtom = [&](const CMat& v) {
      std::vector<double> row;
      for (const auto& a : atoms) row.push_back((a * v).trace().real());
      row.push_back(1.0);  // pure state: tr(v^2) = 1
      for (std::size_t i = 0; i < atoms.size(); ++i) gram[i].push_back(row[i]);
      gram.push_back(std::move(row));
      atoms.push_back(v);
      c.push_back((v * rho.mat).trace().real());
      w.push_back(0.0);
    };
    {
      std::vector<CVec> locals;
      for (int i = 0; i < N; ++i) locals.push_back(randomLocal(rho.dims[i]));
      addAtom(productState(locals));
      w[0] = 1.0;
    }
    auto mixture = [&]() {
      CMat s = CMat::Zero(D, D);
      for (std::size_t i = 0; i < atoms.size(); ++i) s += w[i] * atoms[i];
      return s;
    };
    auto correct = [&]() {  // pairwise steps on f(w) = 1/2 |sum w P - rho|^2
      const std::size_t n = atoms.size();
      std::vector<double> g(n);
      for (int pass = 0; pass < 200 * static_cast<int>(n); ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
          g[i] = -c[i];
          for (std::size_t j = 0; j < n; ++j) g[i] += gram[i][j] * w[j];
        }
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (g[i] < g[lo]) lo = i;
        bool hasHi = false;
        for (std::size_t i = 0; i < n; ++i)
          if (w[i] > 0.0 && (!hasHi || g[i] > g[hi])) hi = i, hasHi = true;
        const double gap = g[hi] - g[lo];
        if (!hasHi || gap < 1e-14) break;
        const double curv = gram[lo][lo] + gram[hi][hi] - 2.0 * gram[lo][hi];
        double step = curv > 1e-300 ? gap / curv : w[hi];
        step = std::min(step, w[hi]);
        w[lo] += step;
        w[hi] -= step;
        if (w[hi] < 1e-18) w[hi] = 0.0;
      }
    };
    for (int it = 0; it < kIterCap / 50; ++it) {
      CMat sigma = mixture();
      CMat grad = sigma - rho.mat;
      CMat v = lmo(grad);
      const double gap = (grad * (sigma - v)).trace().real();
      if (gap < 1e-12) break;  // FW gap: no descent available in the hull
      addAtom(v);
      correct();
    }
    CMat sigma = mixture();
    const double fd = frobenius_norm(sigma - rho.mat);
    if (fd < best.frobeniusDistance) {
      best.frobeniusDistance = fd;
      best.traceDistance = trace_norm(sigma - rho.mat);
      best.sigma = DensityMatrix{rho.dims, sigma};
    }
  }
  return best;
}

}  // namespace symext
