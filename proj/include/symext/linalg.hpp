// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense complex matrix kernel: tensor products, subsystem permutation,
// partial trace / partial transpose, Hermitian eigendecomposition, norms.
//
// Conventions used throughout the project:
//   * tensor indices are big-endian: the first subsystem is the most
//     significant digit of a composite basis index;
//   * Hermiticity is checked relative to the largest entry magnitude and
//     inputs beyond tolerance are rejected, never symmetrized.

#ifndef SYMEXT_LINALG_HPP
#define SYMEXT_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace symext {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Kronecker product, first factor most significant.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
    -> Eigen::Matrix<decltype(typename DerivedA::Scalar{} * typename DerivedB::Scalar{}),
                     Eigen::Dynamic, Eigen::Dynamic> {
  using Scalar = decltype(typename DerivedA::Scalar{} * typename DerivedB::Scalar{});
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_hermitian(const CMat& m, double rel_tol = 1e-12);

/// Reorders tensor factors. perm[s] is the destination slot of factor s,
/// so the basis tuple (i_1,...,i_m) maps to (i_{perm^-1(1)},...).
CMat permute_systems(const CMat& m, const std::vector<int>& dims,
                     const std::vector<int>& perm);

/// Traces out every factor not listed in `keep` (indices 0-based, any order).
CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep);

/// Transposes the listed factors in the computational basis.
CMat partial_transpose(const CMat& m, const std::vector<int>& dims,
                       const std::vector<int>& transposed);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; the
/// returned column matrix is unitary. Throws std::invalid_argument if the
/// input fails the Hermiticity tolerance.
std::pair<RVec, CMat> eig_hermitian(const CMat& m, double rel_tol = 1e-12);

/// Sum of singular values (square input).
double trace_norm(const CMat& m);

/// Root of the sum of squared entry magnitudes.
double frobenius_norm(const CMat& m);

namespace detail {

/// Mixed-radix big-endian digit decomposition helpers.
std::vector<long long> strides(const std::vector<int>& dims);
void decode_index(long long idx, const std::vector<int>& dims, std::vector<int>& digits);
long long encode_index(const std::vector<int>& digits, const std::vector<long long>& strides);
long long dims_product(const std::vector<int>& dims);

}  // namespace detail

}  // namespace symext

#endif  // SYMEXT_LINALG_HPP
