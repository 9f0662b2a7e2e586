// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0

#include "symext/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace symext {

namespace {

CVec basis_vec(int d, int i) {
  CVec v = CVec::Zero(d);
  v(i) = 1.0;
  return v;
}

CVec max_entangled(int d) {
  CVec phi = CVec::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return phi;
}

DensityMatrix pure(const std::vector<int>& dims, const CVec& psi) {
  return {dims, psi * psi.adjoint()};
}

int single_dim(const FamilyParams& p, int fallback) {
  if (p.dims.empty()) return fallback;
  if (p.dims.size() != 2 || p.dims[0] != p.dims[1])
    throw std::invalid_argument("family requires dims of the form (d, d)");
  return p.dims[0];
}

DensityMatrix make_tiles() {
  auto e = [](int i) { return basis_vec(3, i); };
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<CVec> psis;
  psis.push_back(kron(e(0).eval(), ((e(0) - e(1)) * s).eval()));
  psis.push_back(kron(e(2).eval(), ((e(1) - e(2)) * s).eval()));
  psis.push_back(kron(((e(0) - e(1)) * s).eval(), e(2).eval()));
  psis.push_back(kron(((e(1) - e(2)) * s).eval(), e(0).eval()));
  psis.push_back(kron(((e(0) + e(1) + e(2)) / 3.0).eval(), (e(0) + e(1) + e(2)).eval()));
  CMat P = CMat::Zero(9, 9);
  for (const auto& psi : psis) P += psi * psi.adjoint();
  return {{3, 3}, (CMat::Identity(9, 9) - P) / 4.0};
}

}  // namespace

void validate_density(const DensityMatrix& rho) {
  const long long D = rho.side();
  if (rho.mat.rows() != D || rho.mat.cols() != D)
    throw InvariantViolation("dims", static_cast<double>(rho.mat.rows() - D),
                             "dims: matrix side " + std::to_string(rho.mat.rows()) +
                                 " does not match product of dims " + std::to_string(D));
  const double scale = std::max(1.0, rho.mat.cwiseAbs().maxCoeff());
  const double herm_dev = (rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-9 * scale)
    throw InvariantViolation("hermiticity", herm_dev,
                             "hermiticity: deviation " + std::to_string(herm_dev));
  const double tr_dev = std::abs(rho.mat.trace() - Complex(1.0, 0.0));
  if (tr_dev > 1e-9)
    throw InvariantViolation("trace", tr_dev, "trace: deviates from 1 by " + std::to_string(tr_dev));
  auto [evals, evecs] = eig_hermitian(rho.mat, 1e-9);
  (void)evecs;
  if (evals(0) < -1e-9)
    throw InvariantViolation("psd", evals(0),
                             "psd: min eigenvalue " + std::to_string(evals(0)));
}

DensityMatrix make_family(const std::string& name, const FamilyParams& params) {
  if (name == "bell") {
    return pure({2, 2}, max_entangled(2));
  }
  if (name == "ghz" || name == "w") {
    std::vector<int> dims = params.dims.empty() ? std::vector<int>{2, 2, 2} : params.dims;
    for (int d : dims)
      if (d != dims[0]) throw std::invalid_argument(name + ": all dims must be equal");
    const int N = static_cast<int>(dims.size());
    const int d = dims[0];
    const long long D = detail::dims_product(dims);
    CVec psi = CVec::Zero(D);
    if (name == "ghz") {
      long long stride = 0;
      for (int i = 0; i < d; ++i) {
        long long idx = 0;
        for (int f = 0; f < N; ++f) idx = idx * d + i;
        psi(idx) = 1.0 / std::sqrt(static_cast<double>(d));
        (void)stride;
      }
    } else {
      if (d != 2) throw std::invalid_argument("w: qubits only");
      for (int f = 0; f < N; ++f) psi(1LL << (N - 1 - f)) = 1.0 / std::sqrt(static_cast<double>(N));
    }
    return pure(dims, psi);
  }
  if (name == "isotropic") {
    if (!params.param) throw std::invalid_argument("isotropic: fidelity parameter required");
    const double F = *params.param;
    if (F < 0.0 || F > 1.0) throw std::invalid_argument("isotropic: fidelity must be in [0,1]");
    const int d = single_dim(params, 2);
    CVec phi = max_entangled(d);
    CMat P = phi * phi.adjoint();
    CMat m = F * P + (1.0 - F) * (CMat::Identity(d * d, d * d) - P) / (d * d - 1.0);
    return {{d, d}, m};
  }
  if (name == "werner") {
    if (!params.param) throw std::invalid_argument("werner: mixing parameter required");
    const double p = *params.param;
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner: parameter must be in [0,1]");
    const int d = single_dim(params, 2);
    // swap operator on C^d (x) C^d
    CMat swap = CMat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
    CMat antisym = (CMat::Identity(d * d, d * d) - swap) / 2.0;
    CMat m = p * antisym * 2.0 / (d * d - d) + (1.0 - p) * CMat::Identity(d * d, d * d) / (d * d);
    return {{d, d}, m};
  }
  if (name == "tiles") {
    return make_tiles();
  }
  if (name == "product") {
    std::vector<int> dims = params.dims.empty() ? std::vector<int>{2, 2} : params.dims;
    CVec psi = CVec::Ones(1);
    for (int d : dims) psi = kron(psi, basis_vec(d, 0).eval()).eval();
    return pure(dims, psi);
  }
  if (name == "max_mixed") {
    std::vector<int> dims = params.dims.empty() ? std::vector<int>{2, 2} : params.dims;
    const long long D = detail::dims_product(dims);
    return {dims, CMat::Identity(D, D) / static_cast<double>(D)};
  }
  throw std::invalid_argument("unknown state family: " + name);
}

DensityMatrix assemble_separable(const std::vector<int>& dims,
                                 const SeparableDecomposition& decomp) {
  if (decomp.weights.size() != decomp.localStates.size())
    throw std::invalid_argument("assemble_separable: weights/terms length mismatch");
  double wsum = 0.0;
  for (double w : decomp.weights) {
    if (w < 0.0) throw std::invalid_argument("assemble_separable: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("assemble_separable: weights must sum to 1");

  const long long D = detail::dims_product(dims);
  CMat m = CMat::Zero(D, D);
  for (std::size_t t = 0; t < decomp.weights.size(); ++t) {
    if (decomp.localStates[t].size() != dims.size())
      throw std::invalid_argument("assemble_separable: factor count mismatch in term");
    CVec psi = CVec::Ones(1);
    for (std::size_t f = 0; f < dims.size(); ++f) {
      const CVec& phi = decomp.localStates[t][f];
      if (phi.size() != dims[f])
        throw std::invalid_argument("assemble_separable: local state dimension mismatch");
      if (std::abs(phi.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("assemble_separable: local state not unit norm");
      psi = kron(psi, phi).eval();
    }
    m += decomp.weights[t] * (psi * psi.adjoint());
  }
  return {dims, m};
}

std::pair<DensityMatrix, SeparableDecomposition> random_separable(
    const std::vector<int>& dims, int terms, std::uint64_t seed) {
  if (terms < 1) throw std::invalid_argument("random_separable: terms >= 1 required");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::exponential_distribution<double> expd(1.0);

  SeparableDecomposition decomp;
  decomp.weights.resize(terms);
  double wsum = 0.0;
  for (int t = 0; t < terms; ++t) {
    decomp.weights[t] = expd(rng);
    wsum += decomp.weights[t];
  }
  for (int t = 0; t < terms; ++t) decomp.weights[t] /= wsum;

  for (int t = 0; t < terms; ++t) {
    std::vector<CVec> locals;
    for (int d : dims) {
      CVec v(d);
      for (int i = 0; i < d; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = Complex(re, im);
      }
      v /= v.norm();
      locals.push_back(v);
    }
    decomp.localStates.push_back(std::move(locals));
  }
  return {assemble_separable(dims, decomp), decomp};
}

DensityMatrix random_density(const std::vector<int>& dims, std::uint64_t seed) {
  const long long D = detail::dims_product(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat G(D, D);
  for (long long r = 0; r < D; ++r)
    for (long long c = 0; c < D; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      G(r, c) = Complex(re, im);
    }
  CMat m = G * G.adjoint();
  m /= m.trace().real();
  return {dims, m};
}

bool is_permutation_invariant(const DensityMatrix& rho, double tolerance) {
  const int N = static_cast<int>(rho.dims.size());
  for (int d : rho.dims)
    if (d != rho.dims[0])
      throw std::invalid_argument("is_permutation_invariant: all dims must be equal");
  for (int i = 0; i + 1 < N; ++i) {
    std::vector<int> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[i], perm[i + 1]);
    const CMat conj = permute_systems(rho.mat, rho.dims, perm);
    if ((conj - rho.mat).cwiseAbs().maxCoeff() > tolerance) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// file format

namespace {

struct GridFile {
  std::vector<int> dims;
  CMat mat;
};

GridFile load_grid(const std::string& path, const std::string& magic) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  int lineno = 0;
  std::string line;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError(1, 1, "missing magic line");
  {
    std::istringstream ls(line);
    std::string word;
    int version = 0;
    if (!(ls >> word >> version) || word != magic || version != 1)
      throw ParseError(lineno, 1, "expected '" + magic + " 1'");
  }

  GridFile g;
  if (!next_content_line()) throw ParseError(lineno + 1, 1, "missing dims line");
  {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word != "dims:") throw ParseError(lineno, 1, "expected 'dims:'");
    int d = 0;
    while (ls >> d) {
      if (d < 1) throw ParseError(lineno, 1, "dimensions must be positive");
      g.dims.push_back(d);
    }
    if (!ls.eof()) throw ParseError(lineno, 1, "malformed dimension list");
    if (g.dims.empty()) throw ParseError(lineno, 1, "empty dimension list");
  }

  const long long D = detail::dims_product(g.dims);
  g.mat.resize(D, D);
  for (long long r = 0; r < D; ++r) {
    if (!next_content_line())
      throw ParseError(lineno + 1, 1, "expected " + std::to_string(D) + " matrix rows, got " +
                                          std::to_string(r));
    std::istringstream ls(line);
    for (long long c = 0; c < D; ++c) {
      double re = 0.0, im = 0.0;
      if (!(ls >> re >> im)) {
        const int col = static_cast<int>(ls.tellg()) < 0
                            ? static_cast<int>(line.size()) + 1
                            : static_cast<int>(ls.tellg()) + 1;
        throw ParseError(lineno, col, "expected " + std::to_string(2 * D) +
                                          " floats on matrix row " + std::to_string(r + 1));
      }
      g.mat(r, c) = Complex(re, im);
    }
    std::string rest;
    if (ls >> rest) throw ParseError(lineno, 1, "trailing tokens on matrix row");
  }
  return g;
}

void save_grid(const std::vector<int>& dims, const CMat& m, const std::string& path,
               const std::string& magic) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << magic << " 1\n";
  out << "dims:";
  for (int d : dims) out << ' ' << d;
  out << '\n';
  char buf[64];
  for (long long r = 0; r < m.rows(); ++r) {
    for (long long c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", m(r, c).real(), m(r, c).imag());
      if (c) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace

DensityMatrix load_state(const std::string& path, bool repair) {
  GridFile g = load_grid(path, "QSTATE");
  DensityMatrix rho{g.dims, g.mat};
  if (repair) {
    // clip negative eigenvalues, renormalize
    CMat h = (rho.mat + rho.mat.adjoint()) / 2.0;
    auto [evals, evecs] = eig_hermitian(h, 1.0);
    RVec clipped = evals.cwiseMax(0.0);
    if (clipped.sum() <= 0.0)
      throw InvariantViolation("psd", evals.maxCoeff(), "repair failed: no positive weight");
    rho.mat = evecs * clipped.asDiagonal() * evecs.adjoint();
    rho.mat /= rho.mat.trace().real();
  }
  validate_density(rho);
  return rho;
}

void save_state(const DensityMatrix& rho, const std::string& path) {
  save_grid(rho.dims, rho.mat, path, "QSTATE");
}

std::pair<std::vector<int>, CMat> load_witness(const std::string& path) {
  GridFile g = load_grid(path, "QWIT");
  return {g.dims, g.mat};
}

void save_witness(const std::vector<int>& dims, const CMat& w, const std::string& path) {
  if (detail::dims_product(dims) != w.rows() || w.rows() != w.cols())
    throw std::invalid_argument("save_witness: dims do not match operator side");
  save_grid(dims, w, path, "QWIT");
}

}  // namespace symext
