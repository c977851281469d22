#include "sdsq/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sdsq/errors.hpp"

namespace sdsq {

namespace {

void require_dim(std::size_t n, const char* who) {
  if (n < 2) throw DimensionError(std::string(who) + ": dimension must be at least 2");
}

// sqrt(k/2) on the first off-diagonals.
double osc_entry(std::size_t k) { return std::sqrt(static_cast<double>(k) / 2.0); }

double centred_index(std::size_t j, std::size_t n) {
  // j is 1-based in 2j - (N+1).
  return 2.0 * static_cast<double>(j) - static_cast<double>(n + 1);
}

}  // namespace

std::string_view to_string(BasisKind kind) noexcept {
  switch (kind) {
    case BasisKind::Oscillator: return "oscillator";
    case BasisKind::Position: return "position";
    case BasisKind::FiniteDifference: return "finite_difference";
    case BasisKind::Ladder: return "ladder";
  }
  return "unknown";
}

BasisKind parse_basis(std::string_view name) {
  if (name == "oscillator") return BasisKind::Oscillator;
  if (name == "position") return BasisKind::Position;
  if (name == "finite_difference") return BasisKind::FiniteDifference;
  if (name == "ladder") return BasisKind::Ladder;
  throw UnsupportedBasisError("unknown basis '" + std::string(name) + "'");
}

HermitianOperator q_osc(std::size_t n) {
  require_dim(n, "q_osc");
  ComplexMatrix m(n, n);
  for (std::size_t k = 1; k < n; ++k) {
    m(k - 1, k) = osc_entry(k);
    m(k, k - 1) = osc_entry(k);
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator p_osc(std::size_t n) {
  require_dim(n, "p_osc");
  ComplexMatrix m(n, n);
  for (std::size_t k = 1; k < n; ++k) {
    m(k - 1, k) = Complex(0.0, -osc_entry(k));
    m(k, k - 1) = Complex(0.0, osc_entry(k));
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator q_pos(std::size_t n) {
  require_dim(n, "q_pos");
  const double spacing = std::sqrt(2.0 * std::numbers::pi / (4.0 * static_cast<double>(n)));
  ComplexMatrix m(n, n);
  for (std::size_t j = 1; j <= n; ++j) m(j - 1, j - 1) = spacing * centred_index(j, n);
  return HermitianOperator(std::move(m));
}

ComplexMatrix sylvester_f(std::size_t n) {
  require_dim(n, "sylvester_f");
  const double nn = static_cast<double>(n);
  const double norm = 1.0 / std::sqrt(nn);
  ComplexMatrix f(n, n);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= n; ++k) {
      const double angle = 2.0 * std::numbers::pi / (4.0 * nn) * centred_index(j, n) *
                           centred_index(k, n);
      f(j - 1, k - 1) = norm * std::polar(1.0, angle);
    }
  return f;
}

HermitianOperator p_pos(std::size_t n) {
  const ComplexMatrix f = sylvester_f(n);
  ComplexMatrix p = f.adjoint() * q_pos(n).matrix() * f;
  // F is unitary, so the product is Hermitian up to rounding; remove it.
  for (std::size_t r = 0; r < n; ++r) {
    p(r, r) = p(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (p(r, c) + std::conj(p(c, r)));
      p(r, c) = avg;
      p(c, r) = std::conj(avg);
    }
  }
  return HermitianOperator(std::move(p));
}

HermitianOperator q_fd(std::size_t n) {
  require_dim(n, "q_fd");
  const double spacing = std::sqrt(1.0 / (2.0 * static_cast<double>(n)));
  ComplexMatrix m(n, n);
  for (std::size_t j = 1; j <= n; ++j) m(j - 1, j - 1) = spacing * centred_index(j, n);
  return HermitianOperator(std::move(m));
}

HermitianOperator p2_fd(std::size_t n) {
  require_dim(n, "p2_fd");
  const double half_n = static_cast<double>(n) / 2.0;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 2.0 * half_n;
    if (i + 1 < n) {
      m(i, i + 1) = -half_n;
      m(i + 1, i) = -half_n;
    }
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator p_fd(std::size_t) {
  throw UnsupportedBasisError(
      "finite-difference basis provides only the momentum squared, not first-power momentum");
}

std::pair<ComplexMatrix, ComplexMatrix> ladder(std::size_t n) {
  require_dim(n, "ladder");
  ComplexMatrix a(n, n);
  for (std::size_t k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  ComplexMatrix a_dag = a.adjoint();
  return {std::move(a), std::move(a_dag)};
}

std::pair<HermitianOperator, HermitianOperator> position_momentum(BasisKind kind, std::size_t n) {
  switch (kind) {
    case BasisKind::Oscillator: return {q_osc(n), p_osc(n)};
    case BasisKind::Position: return {q_pos(n), p_pos(n)};
    case BasisKind::FiniteDifference: return {q_fd(n), p_fd(n)};
    case BasisKind::Ladder: {
      const auto [a, a_dag] = ladder(n);
      const double r = 1.0 / std::sqrt(2.0);
      ComplexMatrix q = Complex(r) * (a + a_dag);
      ComplexMatrix p = Complex(0.0, -r) * (a - a_dag);
      return {HermitianOperator(std::move(q)), HermitianOperator(std::move(p))};
    }
  }
  throw UnsupportedBasisError("unknown basis");
}

VariablePair make_pair(unsigned qubits, BasisKind basis) {
  if (qubits < 2 || qubits % 2 != 0) {
    throw DimensionError("make_pair: qubit count must be even and at least 2, got " +
                         std::to_string(qubits));
  }
  const std::size_t n = std::size_t{1} << (qubits / 2);
  const auto [q, p] = position_momentum(basis, n);
  const ComplexMatrix id = ComplexMatrix::identity(n);
  return VariablePair{HermitianOperator(kron(q.matrix(), id)),
                      HermitianOperator(kron(id, q.matrix())),
                      HermitianOperator(kron(p.matrix(), id)),
                      HermitianOperator(kron(id, p.matrix())), qubits, basis};
}

}  // namespace sdsq
