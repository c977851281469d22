#include <algorithm>
#include <array>
#include <cmath>
#include <vector>
#include <string>

#include "sdsq/errors.hpp"
#include "sdsq/numerics.hpp"

namespace sdsq {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto eval = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw DomainError("integrate_adaptive: integrand is not finite at x = " + std::to_string(x));
    }
    return y;
  };
  const double fc = eval(mid);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = eval(mid - dx) + eval(mid + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, std::size_t max_intervals) {
  if (!(a < b)) throw DomainError("integrate_adaptive: need a < b");
  if (!(rel_tol > 0.0)) throw DomainError("integrate_adaptive: rel_tol must be positive");

  // Max-heap on the per-panel error estimate.
  std::vector<Panel> panels{gauss_kronrod(f, a, b)};
  double total = panels.front().value;
  double error = panels.front().error;

  for (std::size_t splits = 0;; ++splits) {
    if (error <= rel_tol * std::abs(total) || error == 0.0) {
      // Re-sum so the running update's rounding does not leak into the result.
      double exact = 0.0;
      for (const Panel& p : panels) exact += p.value;
      return exact;
    }
    if (splits >= max_intervals) {
      throw ConvergenceError("integrate_adaptive: error estimate " + std::to_string(error) +
                                 " above tolerance after " + std::to_string(splits) +
                                 " bisections",
                             total);
    }
    std::pop_heap(panels.begin(), panels.end());
    const Panel worst = panels.back();
    panels.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw ConvergenceError("integrate_adaptive: interval width reached machine precision",
                             total);
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push_back(left);
    std::push_heap(panels.begin(), panels.end());
    panels.push_back(right);
    std::push_heap(panels.begin(), panels.end());
  }
}

}  // namespace sdsq
