#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sdsq/errors.hpp"
#include "sdsq/numerics.hpp"

namespace sdsq {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) acc += std::norm(a(r, c));
  return std::sqrt(acc);
}

double frobenius(const ComplexMatrix& a) {
  double acc = 0.0;
  for (const Complex& z : a.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

// Zeroes a(p,q) with the unitary J = diag-phase * real rotation:
//   J_pp = c, J_pq = s, J_qp = -s e^{-i phi}, J_qq = c e^{-i phi}
// where a(p,q) = |a(p,q)| e^{i phi}. Applies A <- J^dagger A J, V <- V J.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = apq / mag;  // e^{i phi}
  const Complex phase_conj = std::conj(phase);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * phase_conj;
  const Complex jqq = c * phase_conj;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& input) {
  if (!input.square()) {
    throw ContractError("eig_hermitian: matrix is " + std::to_string(input.rows()) + "x" +
                        std::to_string(input.cols()) + ", not square");
  }
  const double defect = hermiticity_defect(input);
  if (defect > 1e-10 * std::max(1.0, max_abs(input))) {
    throw ContractError("eig_hermitian: ||A - A^dagger||_max = " + std::to_string(defect) +
                        " exceeds Hermiticity tolerance");
  }

  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = frobenius(a);
  if (scale > 0.0) {
    const double target = 1e-15 * scale;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > target; ++sweep) {
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double mag = std::abs(a(p, q));
          if (mag == 0.0) continue;
          // Entries negligible against both diagonal entries are dropped outright.
          const double dp = std::abs(a(p, p).real());
          const double dq = std::abs(a(q, q).real());
          if (sweep > 3 && dp + 1e3 * mag == dp && dq + 1e3 * mag == dq) {
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            continue;
          }
          rotate(a, v, p, q);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    Complex phase = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) > 1e-10) {
        phase = std::conj(v(r, src)) / std::abs(v(r, src));
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, src) * phase;
  }
  return out;
}

}  // namespace sdsq
