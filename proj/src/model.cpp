#include "sdsq/model.hpp"

#include <cmath>
#include <string>

#include "sdsq/errors.hpp"

namespace sdsq {

void ModelConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("model: lambda must be a finite non-negative number");
  }
  if (qubits < 2 || qubits > 10 || qubits % 2 != 0) {
    throw DimensionError("model: qubit count must be one of 2, 4, 6, 8, 10; got " +
                         std::to_string(qubits));
  }
}

OperatorPair build_operators(const ModelConfig& config) {
  config.validate();
  if (config.basis == BasisKind::FiniteDifference) {
    throw UnsupportedBasisError(
        "build_operators: the finite-difference basis has no first-power momentum, so the "
        "cross term p_u p_v of 4M cannot be formed");
  }
  const VariablePair vars = make_pair(config.qubits, config.basis);
  const ComplexMatrix& u = vars.u.matrix();
  const ComplexMatrix& v = vars.v.matrix();
  const ComplexMatrix& pu = vars.p_u.matrix();
  const ComplexMatrix& pv = vars.p_v.matrix();

  const ComplexMatrix diff = u - v;
  const ComplexMatrix diff2 = diff * diff;
  const ComplexMatrix diff4 = diff2 * diff2;
  const ComplexMatrix diff6 = diff4 * diff2;
  const ComplexMatrix u2_minus_v2 = u * u - v * v;

  ComplexMatrix h = Complex(0.5) * (pu * pu - pv * pv);
  h += Complex(0.5) * u2_minus_v2;
  h -= Complex(config.lambda / 32.0) * (u2_minus_v2 * diff4);

  // (p_u + p_v)^2 = p_u^2 + p_u p_v + p_v p_u + p_v^2.
  const ComplexMatrix kinetic = pu * pu + pu * pv + pv * pu + pv * pv;
  ComplexMatrix m = Complex(0.5) * kinetic;
  m += Complex(0.5) * diff2;
  m -= Complex(config.lambda / 96.0) * diff6;

  return OperatorPair{HermitianOperator(std::move(h), 1e-12),
                      HermitianOperator(std::move(m), 1e-12), config};
}

double constraint_commutator_norm(const OperatorPair& pair) {
  return max_abs(commutator(pair.hamiltonian_2bH.matrix(), pair.mass_4M.matrix()));
}

double mass_ab(double p_a, double b, double lambda) {
  if (!(b > 0.0)) throw DomainError("mass_ab: b must be positive");
  return p_a * p_a / (2.0 * b) + b / 2.0 - lambda * b * b * b / 6.0;
}

double potential_s(double x) { return 0.5 * x * x; }

double potential_sd(double x, double lambda) {
  const double x2 = x * x;
  return 0.5 * x2 - lambda / 96.0 * x2 * x2 * x2;
}

double nariai_mass(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("nariai_mass: lambda must be positive");
  return 1.0 / (3.0 * std::sqrt(lambda));
}

}  // namespace sdsq
