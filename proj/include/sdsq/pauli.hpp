#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdsq/matrix.hpp"

namespace sdsq {

/// Tensor product of single-qubit Paulis in symplectic form: bit b of `x`/`z`
/// describes qubit (qubits - 1 - b), so the leftmost label symbol acts on the
/// most significant statevector bit. I = (0,0), X = (1,0), Y = (1,1), Z = (0,1).
class PauliString {
 public:
  PauliString() = default;
  PauliString(unsigned qubits, std::uint32_t x, std::uint32_t z);
  /// Parses labels such as "XYIZ". Throws ContractError on other symbols.
  static PauliString from_label(std::string_view label);

  unsigned qubits() const noexcept { return qubits_; }
  std::uint32_t x_mask() const noexcept { return x_; }
  std::uint32_t z_mask() const noexcept { return z_; }
  std::string label() const;
  /// Position in lexicographic I < X < Y < Z order over all 4^q strings.
  std::uint64_t lexicographic_index() const noexcept;

  /// The single nonzero entry of row r sits in column r ^ x_mask(); this is its value.
  Complex row_entry(std::uint32_t r) const noexcept;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  unsigned qubits_ = 0;
  std::uint32_t x_ = 0;
  std::uint32_t z_ = 0;
};

struct PauliTerm {
  PauliString string;
  double coefficient = 0.0;
};

/// Real expansion sum_n a_n P_n of a Hermitian operator. Terms are unique and
/// kept in lexicographic label order; every |a_n| exceeds `threshold`.
struct PauliSum {
  unsigned qubits = 0;
  double threshold = 0.0;
  std::vector<PauliTerm> terms;

  std::size_t size() const noexcept { return terms.size(); }
};

/// a_n = tr(P_n H) / 2^q over all 4^q strings, keeping |a_n| > threshold.
/// Each trace costs O(2^q) because every Pauli string has one unit-modulus
/// entry per row. Throws DimensionError for a non-power-of-two size and
/// ContractError if any coefficient has an imaginary part above
/// 1e-10 * max(1, ||H||_max).
PauliSum decompose(const HermitianOperator& h, double threshold = 1e-12);

/// Dense sum_n a_n P_n.
HermitianOperator reconstruct(const PauliSum& sum);

/// <psi|P|psi> without forming P.
Complex pauli_expectation(const PauliString& p, std::span<const Complex> state);

/// sum_n a_n <psi|P_n|psi>. The state must be normalized to 1e-10 and of length 2^q.
double expectation(const PauliSum& sum, std::span<const Complex> state);

/// `label,coefficient` CSV, one row per term, 17 significant digits.
void write_csv(std::ostream& os, const PauliSum& sum);

}  // namespace sdsq
