#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sdsq {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix. Constructors reject non-finite entries.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexVector column(std::size_t c) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> x);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix power(const ComplexMatrix& m, unsigned exponent);

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);
/// max |A - A^dagger| entrywise; zero for exactly Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

double norm2(std::span<const Complex> x);
Complex inner(std::span<const Complex> x, std::span<const Complex> y);  // <x|y>

/// A ComplexMatrix certified Hermitian at construction.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  /// Throws ContractError when the matrix is non-square or
  /// ||A - A^dagger||_max exceeds `tol * max(1, ||A||_max)`.
  explicit HermitianOperator(ComplexMatrix m, double tol = 1e-10);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

  /// <x|A|x>, real part; the imaginary residue of a Hermitian form is rounding only.
  double expectation(std::span<const Complex> x) const;

 private:
  ComplexMatrix m_;
};

}  // namespace sdsq
