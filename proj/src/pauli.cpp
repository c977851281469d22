#include "sdsq/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sdsq/errors.hpp"

namespace sdsq {

namespace {

// (-i)^k for k mod 4.
Complex minus_i_power(unsigned k) {
  switch (k & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

unsigned qubits_for_dim(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw DimensionError("pauli: dimension " + std::to_string(dim) + " is not a power of two");
  }
  const unsigned q = static_cast<unsigned>(std::countr_zero(dim));
  if (q > 16) throw DimensionError("pauli: more than 16 qubits is not supported");
  return q;
}

}  // namespace

PauliString::PauliString(unsigned qubits, std::uint32_t x, std::uint32_t z)
    : qubits_(qubits), x_(x), z_(z) {
  const std::uint32_t mask = qubits >= 32 ? ~0u : ((1u << qubits) - 1u);
  if ((x & ~mask) != 0 || (z & ~mask) != 0) {
    throw DimensionError("PauliString: mask wider than qubit count");
  }
}

PauliString PauliString::from_label(std::string_view label) {
  const unsigned q = static_cast<unsigned>(label.size());
  std::uint32_t x = 0, z = 0;
  for (unsigned i = 0; i < q; ++i) {
    const std::uint32_t bit = 1u << (q - 1 - i);
    switch (label[i]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw ContractError("PauliString: invalid symbol '" + std::string(1, label[i]) + "'");
    }
  }
  return PauliString(q, x, z);
}

std::string PauliString::label() const {
  std::string out(qubits_, 'I');
  for (unsigned i = 0; i < qubits_; ++i) {
    const std::uint32_t bit = 1u << (qubits_ - 1 - i);
    const bool xb = (x_ & bit) != 0;
    const bool zb = (z_ & bit) != 0;
    out[i] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return out;
}

std::uint64_t PauliString::lexicographic_index() const noexcept {
  std::uint64_t idx = 0;
  for (unsigned i = 0; i < qubits_; ++i) {
    const std::uint32_t bit = 1u << (qubits_ - 1 - i);
    const bool xb = (x_ & bit) != 0;
    const bool zb = (z_ & bit) != 0;
    const unsigned digit = xb ? (zb ? 2u : 1u) : (zb ? 3u : 0u);
    idx = idx * 4 + digit;
  }
  return idx;
}

Complex PauliString::row_entry(std::uint32_t r) const noexcept {
  const unsigned y_count = static_cast<unsigned>(std::popcount(x_ & z_));
  const bool negative = (std::popcount(r & z_) & 1) != 0;
  const Complex phase = minus_i_power(y_count);
  return negative ? -phase : phase;
}

PauliSum decompose(const HermitianOperator& h, double threshold) {
  const std::size_t dim = h.dim();
  const unsigned q = qubits_for_dim(dim);
  const double imag_limit = 1e-10 * std::max(1.0, max_abs(h.matrix()));
  const double inv_dim = 1.0 / static_cast<double>(dim);

  PauliSum out;
  out.qubits = q;
  out.threshold = threshold;

  std::vector<Complex> gathered(dim);
  for (std::uint32_t x = 0; x < dim; ++x) {
    // tr(P H) = sum_r P[r][r^x] H[r^x][r]
    for (std::uint32_t r = 0; r < dim; ++r) gathered[r] = h(r ^ x, r);
    for (std::uint32_t z = 0; z < dim; ++z) {
      const PauliString p(q, x, z);
      Complex acc{};
      for (std::uint32_t r = 0; r < dim; ++r) {
        if (std::popcount(r & z) & 1) {
          acc -= gathered[r];
        } else {
          acc += gathered[r];
        }
      }
      const Complex coefficient = minus_i_power(std::popcount(x & z)) * acc * inv_dim;
      if (std::abs(coefficient.imag()) > imag_limit) {
        throw ContractError("decompose: coefficient of " + p.label() +
                            " has imaginary part " + std::to_string(coefficient.imag()) +
                            "; operator is not Hermitian");
      }
      if (std::abs(coefficient.real()) > threshold) {
        out.terms.push_back({p, coefficient.real()});
      }
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const PauliTerm& a, const PauliTerm& b) {
    return a.string.lexicographic_index() < b.string.lexicographic_index();
  });
  return out;
}

HermitianOperator reconstruct(const PauliSum& sum) {
  const std::size_t dim = std::size_t{1} << sum.qubits;
  ComplexMatrix m(dim, dim);
  for (const PauliTerm& t : sum.terms) {
    if (t.string.qubits() != sum.qubits) {
      throw DimensionError("reconstruct: term " + t.string.label() + " has wrong qubit count");
    }
    const std::uint32_t x = t.string.x_mask();
    for (std::uint32_t r = 0; r < dim; ++r) m(r, r ^ x) += t.coefficient * t.string.row_entry(r);
  }
  return HermitianOperator(std::move(m));
}

Complex pauli_expectation(const PauliString& p, std::span<const Complex> state) {
  const std::size_t dim = std::size_t{1} << p.qubits();
  if (state.size() != dim) throw DimensionError("pauli_expectation: state length mismatch");
  const std::uint32_t x = p.x_mask();
  Complex acc{};
  for (std::uint32_t r = 0; r < dim; ++r) acc += std::conj(state[r]) * p.row_entry(r) * state[r ^ x];
  return acc;
}

double expectation(const PauliSum& sum, std::span<const Complex> state) {
  const std::size_t dim = std::size_t{1} << sum.qubits;
  if (state.size() != dim) {
    throw DimensionError("expectation: state has " + std::to_string(state.size()) +
                         " amplitudes, operator acts on " + std::to_string(dim));
  }
  const double norm = norm2(state);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw ContractError("expectation: state norm " + std::to_string(norm) + " is not 1");
  }
  Complex acc{};
  double scale = 0.0;
  for (const PauliTerm& t : sum.terms) {
    acc += t.coefficient * pauli_expectation(t.string, state);
    scale += std::abs(t.coefficient);
  }
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, scale)) {
    throw ContractError("expectation: imaginary residue " + std::to_string(acc.imag()));
  }
  return acc.real();
}

void write_csv(std::ostream& os, const PauliSum& sum) {
  os << "label,coefficient\n";
  char buf[64];
  for (const PauliTerm& t : sum.terms) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
    os << t.string.label() << ',' << buf << '\n';
  }
}

}  // namespace sdsq
