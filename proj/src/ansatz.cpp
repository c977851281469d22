#include "sdsq/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "sdsq/errors.hpp"

namespace sdsq {

namespace {

std::size_t bit_of(unsigned qubits, unsigned qubit) { return std::size_t{1} << (qubits - 1 - qubit); }

void check_qubit(unsigned qubits, unsigned qubit) {
  if (qubit >= qubits) {
    throw DimensionError("gate on qubit " + std::to_string(qubit) + " of a " +
                         std::to_string(qubits) + "-qubit register");
  }
}

void check_operator_dim(const AnsatzSpec& spec, std::size_t dim) {
  if (dim != (std::size_t{1} << spec.qubits)) {
    throw DimensionError("ansatz on " + std::to_string(spec.qubits) +
                         " qubits cannot measure an operator of dimension " +
                         std::to_string(dim));
  }
}

template <class Op>
double evaluate(const AnsatzSpec& spec, std::span<const double> theta, const Op& op) {
  const AnsatzState s = prepare(spec, theta);
  if constexpr (std::is_same_v<Op, PauliSum>) {
    return expectation(op, s.amplitudes);
  } else {
    return op.expectation(s.amplitudes);
  }
}

template <class Op>
std::vector<double> shift_gradient(const AnsatzSpec& spec, std::span<const double> theta,
                                   const Op& op) {
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> out(theta.size());
  constexpr double half_pi = std::numbers::pi / 2.0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + half_pi;
    const double plus = evaluate(spec, shifted, op);
    shifted[k] = theta[k] - half_pi;
    const double minus = evaluate(spec, shifted, op);
    shifted[k] = theta[k];
    out[k] = 0.5 * (plus - minus);
  }
  return out;
}

}  // namespace

std::string_view to_string(Entanglement e) noexcept {
  return e == Entanglement::full ? "full" : "linear";
}

Entanglement parse_entanglement(std::string_view name) {
  if (name == "full") return Entanglement::full;
  if (name == "linear") return Entanglement::linear;
  throw ContractError("unknown entanglement '" + std::string(name) + "'");
}

std::size_t AnsatzSpec::cx_per_block() const noexcept {
  if (qubits < 2) return 0;
  return entanglement == Entanglement::full ? qubits * (qubits - 1) / 2 : qubits - 1;
}

void apply_ry(std::span<Complex> state, unsigned qubits, unsigned target, double theta) {
  check_qubit(qubits, target);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::size_t bit = bit_of(qubits, target);
  for (std::size_t r = 0; r < state.size(); ++r) {
    if (r & bit) continue;
    const Complex a = state[r];
    const Complex b = state[r | bit];
    state[r] = c * a - s * b;
    state[r | bit] = s * a + c * b;
  }
}

void apply_cx(std::span<Complex> state, unsigned qubits, unsigned control, unsigned target) {
  check_qubit(qubits, control);
  check_qubit(qubits, target);
  if (control == target) throw ContractError("apply_cx: control equals target");
  const std::size_t cbit = bit_of(qubits, control);
  const std::size_t tbit = bit_of(qubits, target);
  for (std::size_t r = 0; r < state.size(); ++r) {
    if ((r & cbit) && !(r & tbit)) std::swap(state[r], state[r | tbit]);
  }
}

AnsatzState prepare(const AnsatzSpec& spec, std::span<const double> theta) {
  if (spec.qubits < 1 || spec.qubits > 16) {
    throw DimensionError("prepare: unsupported qubit count " + std::to_string(spec.qubits));
  }
  if (theta.size() != spec.parameter_count()) {
    throw DimensionError("prepare: arity mismatch, expected " +
                         std::to_string(spec.parameter_count()) + " parameters, got " +
                         std::to_string(theta.size()));
  }
  const unsigned q = spec.qubits;
  AnsatzState out{std::vector<double>(theta.begin(), theta.end()),
                  ComplexVector(std::size_t{1} << q)};
  out.amplitudes[0] = 1.0;

  std::size_t k = 0;
  for (unsigned layer = 0; layer <= spec.depth; ++layer) {
    for (unsigned i = 0; i < q; ++i) apply_ry(out.amplitudes, q, i, theta[k++]);
    if (layer == spec.depth) break;
    if (spec.entanglement == Entanglement::full) {
      for (unsigned i = 0; i < q; ++i)
        for (unsigned j = i + 1; j < q; ++j) apply_cx(out.amplitudes, q, i, j);
    } else {
      for (unsigned i = 0; i + 1 < q; ++i) apply_cx(out.amplitudes, q, i, i + 1);
    }
  }

  const double norm = norm2(out.amplitudes);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw ContractError("prepare: statevector norm drifted to " + std::to_string(norm));
  }
  for (const Complex& z : out.amplitudes) {
    if (std::abs(z.imag()) > 1e-12) throw ContractError("prepare: Ry/CX state is not real");
  }
  return out;
}

double expectation_of(const AnsatzSpec& spec, std::span<const double> theta,
                      const PauliSum& op) {
  if (op.qubits != spec.qubits) check_operator_dim(spec, std::size_t{1} << op.qubits);
  return evaluate(spec, theta, op);
}

double expectation_of(const AnsatzSpec& spec, std::span<const double> theta,
                      const HermitianOperator& op) {
  check_operator_dim(spec, op.dim());
  return evaluate(spec, theta, op);
}

std::vector<double> gradient(const AnsatzSpec& spec, std::span<const double> theta,
                             const PauliSum& op) {
  if (op.qubits != spec.qubits) check_operator_dim(spec, std::size_t{1} << op.qubits);
  return shift_gradient(spec, theta, op);
}

std::vector<double> gradient(const AnsatzSpec& spec, std::span<const double> theta,
                             const HermitianOperator& op) {
  check_operator_dim(spec, op.dim());
  return shift_gradient(spec, theta, op);
}

}  // namespace sdsq
