#include "sdsq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "sdsq/errors.hpp"

namespace sdsq {

namespace {

constexpr double kDegeneracyTol = 1e-9;

double relative_residual(const HermitianOperator& h, double h_max, std::span<const Complex> psi) {
  const ComplexVector hpsi = h.matrix() * psi;
  return h_max > 0.0 ? norm2(hpsi) / h_max : 0.0;
}

ComplexMatrix columns(const ComplexMatrix& m, std::size_t first, std::size_t count) {
  ComplexMatrix out(m.rows(), count);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = m(r, first + c);
  return out;
}

void sort_retained(ConstrainedSpectrum& s) {
  std::vector<std::size_t> order(s.eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.eigenvalues[a] < s.eigenvalues[b];
  });
  ConstrainedSpectrum sorted = s;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.eigenvalues[i] = s.eigenvalues[order[i]];
    sorted.eigenvectors[i] = s.eigenvectors[order[i]];
    sorted.residuals[i] = s.residuals[order[i]];
  }
  s = std::move(sorted);
}

ConstrainedSpectrum filter_method(const OperatorPair& pair, double tol) {
  const HermitianOperator& h = pair.hamiltonian_2bH;
  const double h_max = max_abs(h.matrix());
  const EigenDecomposition mass = eig_hermitian(pair.mass_4M);
  const std::size_t n = mass.eigenvalues.size();

  ConstrainedSpectrum out;
  out.method = ConstraintMethod::filter;
  out.tol = tol;

  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && mass.eigenvalues[end] - mass.eigenvalues[end - 1] <=
                          kDegeneracyTol * std::max(1.0, std::abs(mass.eigenvalues[end]))) {
      ++end;
    }
    const std::size_t k = end - begin;
    ComplexMatrix block = columns(mass.eigenvectors, begin, k);
    if (k > 1) {
      const ComplexMatrix hv = h.matrix() * block;
      const EigenDecomposition gram = eig_hermitian(hv.adjoint() * hv);
      block = block * gram.eigenvectors;
    }
    for (std::size_t c = 0; c < k; ++c) {
      const ComplexVector psi = block.column(c);
      const double value = mass.eigenvalues[begin + c];
      const double residual = relative_residual(h, h_max, psi);
      out.ranked.push_back({value, residual});
      if (residual < tol) {
        out.eigenvalues.push_back(value);
        out.eigenvectors.push_back(psi);
        out.residuals.push_back(residual);
      }
    }
    begin = end;
  }
  return out;
}

ConstrainedSpectrum project_method(const OperatorPair& pair, double tol) {
  const HermitianOperator& h = pair.hamiltonian_2bH;
  const double h_max = max_abs(h.matrix());
  const EigenDecomposition constraint = eig_hermitian(h);
  double largest = 0.0;
  for (double v : constraint.eigenvalues) largest = std::max(largest, std::abs(v));

  ConstrainedSpectrum out;
  out.method = ConstraintMethod::project;
  out.tol = tol;

  std::vector<std::size_t> null_cols;
  for (std::size_t i = 0; i < constraint.eigenvalues.size(); ++i) {
    const double rel = largest > 0.0 ? std::abs(constraint.eigenvalues[i]) / largest : 0.0;
    out.ranked.push_back({constraint.eigenvalues[i], rel});
    if (rel < tol) null_cols.push_back(i);
  }
  if (null_cols.empty()) return out;

  const std::size_t dim = h.dim();
  ComplexMatrix basis(dim, null_cols.size());
  for (std::size_t c = 0; c < null_cols.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) basis(r, c) = constraint.eigenvectors(r, null_cols[c]);

  const ComplexMatrix reduced = basis.adjoint() * pair.mass_4M.matrix() * basis;
  // The compression is Hermitian up to rounding; symmetrize before the Hermiticity check.
  const ComplexMatrix sym = Complex(0.5) * (reduced + reduced.adjoint());
  const EigenDecomposition inner_eig = eig_hermitian(sym);
  const ComplexMatrix states = basis * inner_eig.eigenvectors;
  for (std::size_t c = 0; c < null_cols.size(); ++c) {
    const ComplexVector psi = states.column(c);
    out.eigenvalues.push_back(inner_eig.eigenvalues[c]);
    out.residuals.push_back(relative_residual(h, h_max, psi));
    out.eigenvectors.push_back(psi);
  }
  return out;
}

}  // namespace

std::string_view to_string(ConstraintMethod m) noexcept {
  return m == ConstraintMethod::filter ? "filter" : "project";
}

ConstraintMethod parse_constraint_method(std::string_view name) {
  if (name == "filter") return ConstraintMethod::filter;
  if (name == "project") return ConstraintMethod::project;
  throw ContractError("unknown constraint method '" + std::string(name) + "'");
}

double default_constraint_tol(ConstraintMethod m) noexcept {
  return m == ConstraintMethod::filter ? 0.05 : 1e-6;
}

ConstrainedSpectrum constrained_spectrum(const OperatorPair& pair, ConstraintMethod method,
                                         double tol) {
  if (!(tol > 0.0)) throw DomainError("constrained_spectrum: tol must be positive");
  if (pair.hamiltonian_2bH.dim() != pair.mass_4M.dim()) {
    throw DimensionError("constrained_spectrum: 2bH and 4M differ in dimension");
  }
  ConstrainedSpectrum out =
      method == ConstraintMethod::filter ? filter_method(pair, tol) : project_method(pair, tol);
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const ConstraintCandidate& a, const ConstraintCandidate& b) {
                     return a.residual < b.residual;
                   });
  sort_retained(out);
  return out;
}

EigenDecomposition full_spectrum(const HermitianOperator& op) { return eig_hermitian(op); }

void write_eigenvector_csv(std::ostream& os, const ConstrainedSpectrum& spectrum) {
  os << "state_index,basis_index,real,imag\n";
  char buf[128];
  for (std::size_t s = 0; s < spectrum.eigenvectors.size(); ++s) {
    const ComplexVector& v = spectrum.eigenvectors[s];
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", s, i, v[i].real(), v[i].imag());
      os << buf;
    }
  }
}

}  // namespace sdsq
