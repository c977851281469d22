#pragma once

#include "sdsq/basis.hpp"
#include "sdsq/matrix.hpp"

namespace sdsq {

/// Single source of truth for operator construction. Units G = c = hbar = 1.
struct ModelConfig {
  double lambda = 0.01;
  unsigned qubits = 4;
  BasisKind basis = BasisKind::Oscillator;

  /// Lambda used for each qubit count when none is given: 0.005 at q = 8, else 0.01.
  static double default_lambda(unsigned qubits) noexcept { return qubits == 8 ? 0.005 : 0.01; }
  /// Throws DomainError for lambda < 0, DimensionError for q outside {2,4,6,8,10}.
  void validate() const;
};

/// Hamiltonian constraint 2bH and mass operator 4M in the (u, v) variables.
struct OperatorPair {
  HermitianOperator hamiltonian_2bH;
  HermitianOperator mass_4M;
  ModelConfig config;
};

/// 2bH = (p_u^2 - p_v^2)/2 + (u^2 - v^2)/2 - (lambda/32)(u^2 - v^2)(u - v)^4
/// 4M  = (p_u + p_v)^2/2 + (u - v)^2/2 - (lambda/96)(u - v)^6
///
/// Products are formed literally; u and v commute, so the lambda term needs no
/// ordering choice. Throws UnsupportedBasisError for the finite-difference basis.
OperatorPair build_operators(const ModelConfig& config);

/// ||[2bH, 4M]||_max. Nonzero at finite truncation.
double constraint_commutator_norm(const OperatorPair& pair);

/// Classical mass p_a^2/(2b) + b/2 - lambda b^3/6. Throws DomainError for b <= 0.
double mass_ab(double p_a, double b, double lambda);

/// Schwarzschild potential x^2/2 with x = u - v.
double potential_s(double x);
/// Schwarzschild-de Sitter potential x^2/2 - (lambda/96) x^6.
double potential_sd(double x, double lambda);

/// 1/(3 sqrt(lambda)). Throws DomainError for lambda <= 0.
double nariai_mass(double lambda);

}  // namespace sdsq
