// Copyright 2026 The symext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Density-matrix data model, canonical state families, random-state
// generation, permutation-invariance checking, and the QSTATE/QWIT text
// file format.
//
// Family conventions:
//   isotropic(F, d): F |Phi+><Phi+| + (1-F) (I - |Phi+><Phi+|)/(d^2-1)
//   werner(p, d):    p * 2/(d^2-d) * P_antisym + (1-p) * I/d^2
//                    (for d=2 this is p |Psi-><Psi-| + (1-p) I/4)
//   tiles:           the 3x3 bound-entangled state from the "tiles"
//                    unextendible product basis, (I - sum |psi_i><psi_i|)/4

#ifndef SYMEXT_STATES_HPP
#define SYMEXT_STATES_HPP

#include "symext/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace symext {

struct DensityMatrix {
  std::vector<int> dims;
  CMat mat;

  long long side() const { return detail::dims_product(dims); }
};

/// Thrown when a parsed or constructed state violates a DensityMatrix
/// invariant; names the invariant and the deviation magnitude.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string invariant, double deviation, const std::string& what)
      : std::runtime_error(what), invariant_(std::move(invariant)), deviation_(deviation) {}
  const std::string& invariant() const { return invariant_; }
  double deviation() const { return deviation_; }

 private:
  std::string invariant_;
  double deviation_;
};

/// Thrown on malformed state files; carries 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// Checks Hermiticity (1e-9 relative), unit trace (1e-9) and positivity
/// (min eigenvalue >= -1e-9); throws InvariantViolation otherwise.
void validate_density(const DensityMatrix& rho);

struct SeparableDecomposition {
  std::vector<double> weights;                // nonnegative, sum to 1
  std::vector<std::vector<CVec>> localStates; // [term][factor], unit norm
};

struct FamilyParams {
  std::optional<double> param;
  std::vector<int> dims;
};

/// name in {bell, ghz, w, isotropic, werner, tiles, product, max_mixed}.
DensityMatrix make_family(const std::string& name, const FamilyParams& params = {});

DensityMatrix assemble_separable(const std::vector<int>& dims,
                                 const SeparableDecomposition& decomp);

std::pair<DensityMatrix, SeparableDecomposition> random_separable(
    const std::vector<int>& dims, int terms, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) with seeded standard complex Gaussian G.
DensityMatrix random_density(const std::vector<int>& dims, std::uint64_t seed);

/// All dims must be equal; checks conjugation by every adjacent
/// transposition (these generate the full permutation group).
bool is_permutation_invariant(const DensityMatrix& rho, double tolerance);

/// QSTATE text format (see README).  `repair` projects onto the PSD cone
/// (clipping negative eigenvalues) and renormalizes instead of rejecting.
DensityMatrix load_state(const std::string& path, bool repair = false);
void save_state(const DensityMatrix& rho, const std::string& path);

/// QWIT files share the grid layout but skip trace/PSD validation.
std::pair<std::vector<int>, CMat> load_witness(const std::string& path);
void save_witness(const std::vector<int>& dims, const CMat& w, const std::string& path);

}  // namespace symext

#endif  // SYMEXT_STATES_HPP
