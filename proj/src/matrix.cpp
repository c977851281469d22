#include "sdsq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdsq/errors.hpp"

namespace sdsq {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: " + std::to_string(data_.size()) +
                         " entries for a " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " matrix");
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ContractError("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionError("matrix product: inner dimensions " + std::to_string(lhs.cols()) +
                         " and " + std::to_string(rhs.rows()));
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  // i-k-j order keeps the inner loop contiguous in both rhs and out.
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> x) {
  if (m.cols() != x.size()) {
    throw DimensionError("matrix-vector product: " + std::to_string(m.cols()) + " columns, " +
                         std::to_string(x.size()) + " entries");
  }
  ComplexVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix power(const ComplexMatrix& m, unsigned exponent) {
  if (!m.square()) throw DimensionError("power: matrix not square");
  ComplexMatrix out = ComplexMatrix::identity(m.rows());
  for (unsigned k = 0; k < exponent; ++k) out = out * m;
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const Complex& z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionError("hermiticity_defect: matrix not square");
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      best = std::max(best, std::abs(m(r, c) - std::conj(m(c, r))));
  return best;
}

double norm2(std::span<const Complex> x) {
  double acc = 0.0;
  for (const Complex& z : x) acc += std::norm(z);
  return std::sqrt(acc);
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw DimensionError("inner: length mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

HermitianOperator::HermitianOperator(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (!m_.square()) {
    throw ContractError("HermitianOperator: matrix is " + std::to_string(m_.rows()) + "x" +
                        std::to_string(m_.cols()));
  }
  const double defect = hermiticity_defect(m_);
  if (defect > tol * std::max(1.0, max_abs(m_))) {
    throw ContractError("HermitianOperator: ||A - A^dagger||_max = " + std::to_string(defect));
  }
}

double HermitianOperator::expectation(std::span<const Complex> x) const {
  if (x.size() != dim()) throw DimensionError("expectation: state length does not match operator");
  double acc = 0.0;
  const std::size_t n = dim();
  for (std::size_t r = 0; r < n; ++r) {
    Complex row{};
    for (std::size_t c = 0; c < n; ++c) row += m_(r, c) * x[c];
    acc += (std::conj(x[r]) * row).real();
  }
  return acc;
}

}  // namespace sdsq
