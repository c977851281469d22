#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "sdsq/matrix.hpp"
#include "sdsq/model.hpp"
#include "sdsq/numerics.hpp"

namespace sdsq {

enum class ConstraintMethod {
  /// Diagonalize 4M, keep eigenvectors whose relative residual ||2bH psi|| / ||2bH||_max < tol.
  filter,
  /// Diagonalize 4M inside the numerical null space of 2bH (|eigenvalue| < tol * max).
  project,
};

std::string_view to_string(ConstraintMethod m) noexcept;
ConstraintMethod parse_constraint_method(std::string_view name);

/// Tolerance used when a caller does not pick one. The filter default sits in
/// the residual gap of the q = 4 spectrum (largest kept 1.1e-2, next 0.50).
double default_constraint_tol(ConstraintMethod m) noexcept;

struct ConstraintCandidate {
  double eigenvalue;
  double residual;
};

struct ConstrainedSpectrum {
  ConstraintMethod method = ConstraintMethod::filter;
  double tol = 0.0;
  std::vector<double> eigenvalues;      // ascending
  std::vector<ComplexVector> eigenvectors;
  std::vector<double> residuals;        // ||2bH psi|| / ||2bH||_max per retained state
  /// Every candidate, ascending by residual. For `project` the candidates are
  /// the eigenvalues of 2bH with residual |eigenvalue| / max |eigenvalue|.
  std::vector<ConstraintCandidate> ranked;

  bool empty() const noexcept { return eigenvalues.empty(); }
};

/// Eigenpairs of 4M restricted to states annihilated by 2bH. An empty result
/// is a normal return; inspect `ranked` to see how close the candidates came.
///
/// With `filter`, eigenvalues of 4M that agree to 1e-9 (relative) form a
/// block. Inside a block the states are rotated to diagonalize the residual
/// Gram matrix (2bH V)^dagger (2bH V), so the kept/rejected split does not
/// depend on the eigensolver's arbitrary basis for the block.
ConstrainedSpectrum constrained_spectrum(const OperatorPair& pair, ConstraintMethod method,
                                         double tol);
inline ConstrainedSpectrum constrained_spectrum(const OperatorPair& pair,
                                                ConstraintMethod method = ConstraintMethod::filter) {
  return constrained_spectrum(pair, method, default_constraint_tol(method));
}

EigenDecomposition full_spectrum(const HermitianOperator& op);

/// CSV `state_index,basis_index,real,imag`.
void write_eigenvector_csv(std::ostream& os, const ConstrainedSpectrum& spectrum);

}  // namespace sdsq
