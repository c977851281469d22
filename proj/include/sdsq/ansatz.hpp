#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sdsq/matrix.hpp"
#include "sdsq/pauli.hpp"

namespace sdsq {

enum class Entanglement { full, linear };

std::string_view to_string(Entanglement e) noexcept;
Entanglement parse_entanglement(std::string_view name);

/// Ry variational form: `depth` repetitions of [Ry layer; entangling block]
/// followed by a final Ry layer, acting on |0...0>.
///
/// The full block applies CX(i -> j) for every pair i < j in ascending (i, j)
/// order, control on the lower index; the linear block applies CX(i -> i+1).
/// Parameters are layer-major: theta[layer * qubits + qubit].
struct AnsatzSpec {
  unsigned qubits = 4;
  unsigned depth = 3;
  Entanglement entanglement = Entanglement::full;

  std::size_t parameter_count() const noexcept {
    return static_cast<std::size_t>(qubits) * (depth + 1);
  }
  std::size_t cx_per_block() const noexcept;
  std::size_t cx_count() const noexcept { return cx_per_block() * depth; }
};

struct AnsatzState {
  std::vector<double> parameters;
  ComplexVector amplitudes;
};

// Single gates on a statevector of `qubits` qubits; qubit 0 is the most significant bit.
void apply_ry(std::span<Complex> state, unsigned qubits, unsigned target, double theta);
void apply_cx(std::span<Complex> state, unsigned qubits, unsigned control, unsigned target);

/// Throws DimensionError ("arity") when theta has the wrong length. Checks the
/// result is normalized and real to 1e-12 and throws ContractError otherwise.
AnsatzState prepare(const AnsatzSpec& spec, std::span<const double> theta);

/// <psi(theta)|O|psi(theta)>. Throws DimensionError on a size mismatch.
double expectation_of(const AnsatzSpec& spec, std::span<const double> theta,
                      const PauliSum& op);
double expectation_of(const AnsatzSpec& spec, std::span<const double> theta,
                      const HermitianOperator& op);

/// Parameter-shift gradient: (E(theta_k + pi/2) - E(theta_k - pi/2)) / 2 per component.
std::vector<double> gradient(const AnsatzSpec& spec, std::span<const double> theta,
                             const PauliSum& op);
std::vector<double> gradient(const AnsatzSpec& spec, std::span<const double> theta,
                             const HermitianOperator& op);

}  // namespace sdsq
