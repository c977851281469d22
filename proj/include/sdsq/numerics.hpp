#pragma once

// Numerical kernels shared by every other module: Hermitian eigensolver,
// cubic roots, adaptive quadrature and a box-constrained quasi-Newton
// minimizer.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "sdsq/matrix.hpp"

namespace sdsq {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Each eigenvector is rephased so that its
/// first component with modulus above 1e-10 is real and positive, which makes
/// the output deterministic for a given input.
///
/// Throws ContractError for non-square input or when ||A - A^dagger||_max
/// exceeds 1e-10 * max(1, ||A||_max).
EigenDecomposition eig_hermitian(const ComplexMatrix& a);
inline EigenDecomposition eig_hermitian(const HermitianOperator& a) {
  return eig_hermitian(a.matrix());
}

/// Real roots of c3 r^3 + c2 r^2 + c1 r + c0, ascending, repeated roots listed
/// with multiplicity. Trigonometric closed form when three roots are real,
/// Cardano otherwise, followed by Newton polishing on the original cubic.
/// Throws DomainError when c3 == 0.
std::vector<double> real_roots_cubic(double c3, double c2, double c1, double c0);

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
///
/// Subintervals with the largest Kronrod-Gauss discrepancy are bisected until
/// the summed discrepancy drops below rel_tol * |estimate|. Throws
/// ConvergenceError (carrying the current estimate) after `max_intervals`
/// bisections, DomainError for a >= b or a non-finite integrand value.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, std::size_t max_intervals = 4000);

struct OptimizerSettings {
  std::size_t max_iterations = 500;
  double gradient_tolerance = 1e-9;
  std::size_t memory_pairs = 10;
  /// Stop when an accepted step lowers f by less than this, relative to max(|f|, 1).
  double function_tolerance = 1e-15;
  /// Per-parameter bounds. Empty means unbounded in that direction.
  std::vector<double> lower;
  std::vector<double> upper;

  static OptimizerSettings boxed(std::size_t n, double lo, double hi) {
    OptimizerSettings s;
    s.lower.assign(n, lo);
    s.upper.assign(n, hi);
    return s;
  }
};

enum class OptimizerStatus {
  converged_gradient,  // projected gradient below tolerance
  converged_function,  // relative decrease below function_tolerance
  line_search_stalled, // no decrease possible along the projected steepest descent
  max_iterations,
  aborted_nan_gradient,
};

const char* to_string(OptimizerStatus s) noexcept;

struct OptimizerResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::quiet_NaN();
  /// (iteration, best value so far); iteration 0 is the starting point.
  std::vector<std::pair<std::size_t, double>> trace;
  std::size_t iterations = 0;
  std::size_t function_evaluations = 0;
  OptimizerStatus status = OptimizerStatus::max_iterations;

  bool aborted() const noexcept { return status == OptimizerStatus::aborted_nan_gradient; }
};

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<std::vector<double>(std::span<const double>)>;

/// Limited-memory BFGS with bound constraints by gradient projection.
///
/// Search directions come from the two-loop recursion restricted to the free
/// variables (those not pinned at a bound by the sign of their gradient); every
/// trial point of the backtracking line search is projected back into the box.
/// The returned point is always inside the box and never worse than x0.
///
/// A non-finite gradient stops the run with status aborted_nan_gradient and
/// returns the last iterate whose gradient was finite.
OptimizerResult minimize_bounded(const Objective& f, const Gradient& grad,
                                 std::vector<double> x0, const OptimizerSettings& settings);

}  // namespace sdsq
