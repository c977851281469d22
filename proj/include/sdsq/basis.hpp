#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "sdsq/matrix.hpp"

namespace sdsq {

/// Truncated single-variable representations of position and momentum.
/// FiniteDifference supplies only the momentum squared.
enum class BasisKind { Oscillator, Position, FiniteDifference, Ladder };

std::string_view to_string(BasisKind kind) noexcept;
/// Accepts "oscillator", "position", "finite_difference", "ladder".
BasisKind parse_basis(std::string_view name);

// Oscillator basis: Q tridiagonal with sqrt(k)/sqrt(2) off the diagonal,
// P = (i/sqrt(2)) * antisymmetric tridiagonal.
HermitianOperator q_osc(std::size_t n);
HermitianOperator p_osc(std::size_t n);

// Position basis: diagonal Q on the symmetric grid sqrt(2pi/4N)(2j-(N+1)),
// P = F^dagger Q F with the centred DFT-like matrix F.
HermitianOperator q_pos(std::size_t n);
HermitianOperator p_pos(std::size_t n);
ComplexMatrix sylvester_f(std::size_t n);

// Finite-difference basis.
HermitianOperator q_fd(std::size_t n);
HermitianOperator p2_fd(std::size_t n);
/// Always throws UnsupportedBasisError: the finite-difference basis has no P.
HermitianOperator p_fd(std::size_t n);

/// Lowering and raising operators (A, A^dagger) built from the oscillator Q and P.
std::pair<ComplexMatrix, ComplexMatrix> ladder(std::size_t n);

/// Position and first-power momentum for one variable in `kind`.
/// Ladder reuses the oscillator matrices, recovered as (A + A^dagger)/sqrt(2)
/// and (A - A^dagger)(-i/sqrt(2)).
std::pair<HermitianOperator, HermitianOperator> position_momentum(BasisKind kind, std::size_t n);

/// Two commuting variables on q qubits, u in the most significant tensor slot:
/// u = Q (x) I, v = I (x) Q, p_u = P (x) I, p_v = I (x) P with N = 2^(q/2).
struct VariablePair {
  HermitianOperator u, v, p_u, p_v;
  unsigned qubits = 0;
  BasisKind basis = BasisKind::Oscillator;

  std::size_t per_variable_dim() const noexcept { return std::size_t{1} << (qubits / 2); }
};

/// Throws DimensionError for odd or zero q, UnsupportedBasisError for FiniteDifference.
VariablePair make_pair(unsigned qubits, BasisKind basis);

}  // namespace sdsq
