#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdsq/errors.hpp"
#include "sdsq/numerics.hpp"

namespace sdsq {

namespace {

struct Cubic {
  double c3, c2, c1, c0;
  double value(double r) const { return ((c3 * r + c2) * r + c1) * r + c0; }
  double slope(double r) const { return (3.0 * c3 * r + 2.0 * c2) * r + c1; }
};

// Newton steps that are kept only while they shrink |p(r)|; a double root
// converges linearly, so the improvement test is what terminates there.
double polish(const Cubic& p, double r) {
  double best = r;
  double best_abs = std::abs(p.value(r));
  for (int it = 0; it < 50 && best_abs > 0.0; ++it) {
    const double d = p.slope(best);
    if (d == 0.0) break;
    const double next = best - p.value(best) / d;
    const double next_abs = std::abs(p.value(next));
    if (!(next_abs < best_abs)) break;
    const bool small_step = std::abs(next - best) <= 1e-12 * std::max(1.0, std::abs(best));
    best = next;
    best_abs = next_abs;
    if (small_step) break;
  }
  return best;
}

}  // namespace

std::vector<double> real_roots_cubic(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0) throw DomainError("real_roots_cubic: leading coefficient is zero (not a cubic)");

  // Monic form r^3 + a r^2 + b r + c, then depressed t^3 + p t + q with r = t - a/3.
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

  const double half_q = q / 2.0;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  const double disc_scale = std::max(half_q * half_q, std::abs(third_p * third_p * third_p));

  std::vector<double> t;
  if (disc_scale == 0.0) {
    t = {0.0, 0.0, 0.0};
  } else if (std::abs(disc) <= 1e-12 * disc_scale) {
    // Double root: t1 = 3q/p (simple), t2 = t3 = -3q/(2p).
    const double simple = 3.0 * q / p;
    const double dbl = -1.5 * q / p;
    t = {simple, dbl, dbl};
  } else if (disc < 0.0) {
    const double m = 2.0 * std::sqrt(-third_p);
    double arg = (3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    constexpr double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
    t = {m * std::cos(phi), m * std::cos(phi - two_pi_3), m * std::cos(phi - 2.0 * two_pi_3)};
  } else {
    const double sq = std::sqrt(disc);
    t = {std::cbrt(-half_q + sq) + std::cbrt(-half_q - sq)};
  }

  const Cubic poly{c3, c2, c1, c0};
  std::vector<double> roots;
  roots.reserve(t.size());
  for (double ti : t) roots.push_back(polish(poly, ti - shift));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace sdsq
