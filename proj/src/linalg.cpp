// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0

#include "symext/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace symext {

namespace detail {

std::vector<long long> strides(const std::vector<int>& dims) {
  std::vector<long long> s(dims.size());
  long long acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

void decode_index(long long idx, const std::vector<int>& dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(idx % dims[i]);
    idx /= dims[i];
  }
}

long long encode_index(const std::vector<int>& digits, const std::vector<long long>& str) {
  long long idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) idx += digits[i] * str[i];
  return idx;
}

long long dims_product(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

}  // namespace detail

namespace {

void check_dims(const CMat& m, const std::vector<int>& dims) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (detail::dims_product(dims) != m.rows())
    throw std::invalid_argument("product of dims (" +
                                std::to_string(detail::dims_product(dims)) +
                                ") does not match matrix side (" +
                                std::to_string(m.rows()) + ")");
}

}  // namespace

bool is_hermitian(const CMat& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return dev <= rel_tol * scale;
}

CMat permute_systems(const CMat& m, const std::vector<int>& dims,
                     const std::vector<int>& perm) {
  check_dims(m, dims);
  const int nf = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != nf)
    throw std::invalid_argument("perm length does not match dims length");
  std::vector<int> seen(nf, 0);
  for (int p : perm) {
    if (p < 0 || p >= nf || seen[p]++) throw std::invalid_argument("perm is not a bijection");
  }

  std::vector<int> new_dims(nf);
  for (int s = 0; s < nf; ++s) new_dims[perm[s]] = dims[s];
  const auto old_str = detail::strides(dims);
  const auto new_str = detail::strides(new_dims);

  const long long D = m.rows();
  std::vector<long long> map(D);
  std::vector<int> digits, moved(nf);
  for (long long idx = 0; idx < D; ++idx) {
    detail::decode_index(idx, dims, digits);
    for (int s = 0; s < nf; ++s) moved[perm[s]] = digits[s];
    map[idx] = detail::encode_index(moved, new_str);
  }

  CMat out(D, D);
  for (long long r = 0; r < D; ++r)
    for (long long c = 0; c < D; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  check_dims(m, dims);
  const int nf = static_cast<int>(dims.size());
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  std::vector<int> sorted_keep = keep;
  std::sort(sorted_keep.begin(), sorted_keep.end());
  for (std::size_t i = 0; i < sorted_keep.size(); ++i) {
    if (sorted_keep[i] < 0 || sorted_keep[i] >= nf)
      throw std::invalid_argument("keep index out of range");
    if (i > 0 && sorted_keep[i] == sorted_keep[i - 1])
      throw std::invalid_argument("duplicate keep index");
  }

  std::vector<int> traced;
  for (int i = 0; i < nf; ++i)
    if (!std::binary_search(sorted_keep.begin(), sorted_keep.end(), i)) traced.push_back(i);

  std::vector<int> keep_dims, traced_dims;
  for (int i : sorted_keep) keep_dims.push_back(dims[i]);
  for (int i : traced) traced_dims.push_back(dims[i]);

  const long long DK = detail::dims_product(keep_dims);
  const long long DT = detail::dims_product(traced_dims);
  const auto full_str = detail::strides(dims);

  // offset of basis index assembled from (keep digits, traced digits)
  std::vector<long long> keep_off(DK), tr_off(DT);
  {
    std::vector<int> digits;
    for (long long a = 0; a < DK; ++a) {
      detail::decode_index(a, keep_dims, digits);
      long long off = 0;
      for (std::size_t i = 0; i < sorted_keep.size(); ++i) off += digits[i] * full_str[sorted_keep[i]];
      keep_off[a] = off;
    }
    for (long long t = 0; t < DT; ++t) {
      detail::decode_index(t, traced_dims, digits);
      long long off = 0;
      for (std::size_t i = 0; i < traced.size(); ++i) off += digits[i] * full_str[traced[i]];
      tr_off[t] = off;
    }
  }

  CMat out = CMat::Zero(DK, DK);
  for (long long a = 0; a < DK; ++a)
    for (long long b = 0; b < DK; ++b) {
      Complex s = 0.0;
      for (long long t = 0; t < DT; ++t) s += m(keep_off[a] + tr_off[t], keep_off[b] + tr_off[t]);
      out(a, b) = s;
    }
  return out;
}

CMat partial_transpose(const CMat& m, const std::vector<int>& dims,
                       const std::vector<int>& transposed) {
  check_dims(m, dims);
  const int nf = static_cast<int>(dims.size());
  std::vector<bool> flip(nf, false);
  for (int i : transposed) {
    if (i < 0 || i >= nf) throw std::invalid_argument("transpose index out of range");
    flip[i] = true;
  }

  const long long D = m.rows();
  const auto str = detail::strides(dims);
  CMat out(D, D);
  std::vector<int> dr, dc;
  for (long long r = 0; r < D; ++r) {
    detail::decode_index(r, dims, dr);
    for (long long c = 0; c < D; ++c) {
      detail::decode_index(c, dims, dc);
      long long rr = 0, cc = 0;
      for (int i = 0; i < nf; ++i) {
        rr += (flip[i] ? dc[i] : dr[i]) * str[i];
        cc += (flip[i] ? dr[i] : dc[i]) * str[i];
      }
      out(rr, cc) = m(r, c);
    }
  }
  return out;
}

std::pair<RVec, CMat> eig_hermitian(const CMat& m, double rel_tol) {
  if (!is_hermitian(m, rel_tol))
    throw std::invalid_argument("eig_hermitian: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double trace_norm(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix must be square");
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().sum();
}

double frobenius_norm(const CMat& m) { return m.norm(); }

}  // namespace symext
