#include "sdsq/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "sdsq/errors.hpp"
#include "sdsq/model.hpp"
#include "sdsq/numerics.hpp"

namespace sdsq::thermo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Masses this close to M_N (relative) are treated as the Nariai point.
constexpr double kNariaiTol = 1e-12;

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("thermo: lambda must be positive and finite");
  }
}

bool at_nariai(double M, double lambda) {
  return std::abs(M - nariai_mass(lambda)) <= kNariaiTol * nariai_mass(lambda);
}

// sqrt(27) M / ell, clamped onto [0, 1] when within rounding of the Nariai bound.
double nariai_ratio(double M, double lambda) {
  const double mn = nariai_mass(lambda);
  if (M > mn * (1.0 + kNariaiTol)) {
    throw NoHorizonError("thermo: M = " + std::to_string(M) + " exceeds the Nariai mass " +
                         std::to_string(mn) + "; no black-hole horizon");
  }
  return std::min(1.0, M / mn);
}

// With x = sqrt(27) M / ell, the closed form
//   r_bh = (2 ell / sqrt 3) cos[(pi + arccos x) / 3]
//   r_ch = (2 ell / sqrt 3) cos[(pi - arccos x) / 3]
// is evaluated through arccos x = pi/2 - arcsin x, which keeps r_bh accurate
// when x is small (cos near pi/2 would cancel).
Horizons trig_roots(double M, double lambda) {
  const double l = ell(lambda);
  const double x = nariai_ratio(M, lambda);
  const double scale = 2.0 * l / std::sqrt(3.0);
  const double third = std::asin(x) / 3.0;
  const double r_bh = scale * std::sin(third);
  const double r_ch = scale * std::cos(kPi / 6.0 + third);
  return {r_bh, r_ch, -(r_bh + r_ch)};
}

void require_mass(double M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("thermo: M must be positive and finite");
}

double beta_of(double r, double l) {
  return -4.0 * kPi * l * l * r / (3.0 * r * r - l * l);
}

}  // namespace

double ell(double lambda) {
  require_lambda(lambda);
  return std::sqrt(3.0 / lambda);
}

Horizons horizons_from_cubic(double M, double lambda) {
  require_mass(M);
  require_lambda(lambda);
  nariai_ratio(M, lambda);
  const double l2 = 3.0 / lambda;
  const std::vector<double> roots = real_roots_cubic(1.0, 0.0, -l2, 2.0 * M * l2);
  if (roots.size() != 3) throw NoHorizonError("thermo: cubic has a single real root");
  return {roots[1], roots[2], roots[0]};
}

Horizons horizons(double M, double lambda) {
  require_mass(M);
  require_lambda(lambda);
  const Horizons trig = trig_roots(M, lambda);
  const Horizons cubic = horizons_from_cubic(M, lambda);
  // Near the double root both evaluations lose half their digits; only compare
  // when the horizons are well separated.
  const double l = ell(lambda);
  if (trig.r_ch - trig.r_bh > 1e-3 * l) {
    const double tol = 1e-9 * std::max(1.0, l);
    if (std::abs(trig.r_bh - cubic.r_bh) > tol || std::abs(trig.r_ch - cubic.r_ch) > tol) {
      throw ContractError("horizons: trigonometric and cubic-solver roots disagree at M = " +
                          std::to_string(M));
    }
  }
  return trig;
}

Entropies entropies(double M, double lambda) {
  const Horizons h = horizons(M, lambda);
  const double s_bh = kPi * h.r_bh * h.r_bh;
  const double s_ch = kPi * h.r_ch * h.r_ch;
  return {s_bh, s_ch, s_bh + s_ch};
}

InverseTemperatures inverse_temperatures(double M, double lambda) {
  const Horizons h = horizons(M, lambda);
  if (at_nariai(M, lambda)) return {kInf, kInf, true};
  const double l = ell(lambda);
  return {beta_of(h.r_bh, l), beta_of(h.r_ch, l), false};
}

ThermoPoint thermo_point(double M, double lambda) {
  require_lambda(lambda);
  const double l = ell(lambda);
  ThermoPoint p{};
  p.M = M;
  p.lambda = lambda;
  p.ell = l;
  if (M == 0.0) {
    p.r_bh = 0.0;
    p.r_ch = l;
    p.beta_bh = 0.0;
    p.beta_ch = beta_of(l, l);
  } else {
    const Horizons h = horizons(M, lambda);
    p.r_bh = h.r_bh;
    p.r_ch = h.r_ch;
    const InverseTemperatures b = inverse_temperatures(M, lambda);
    p.beta_bh = b.beta_bh;
    p.beta_ch = b.beta_ch;
  }
  p.s_bh = kPi * p.r_bh * p.r_bh;
  p.s_ch = kPi * p.r_ch * p.r_ch;
  p.s_tot = p.s_bh + p.s_ch;
  p.t_bh = p.beta_bh == 0.0 ? kInf : 1.0 / p.beta_bh;
  p.t_ch = 1.0 / p.beta_ch;
  return p;
}

SeriesExpansions series_expansions(double M, double lambda) {
  if (!(M >= 0.0)) throw DomainError("series_expansions: M must be non-negative");
  const double l = ell(lambda);
  const double l2 = l * l;
  SeriesExpansions s{};
  s.s_bh = 4.0 * kPi * M * M + 32.0 * kPi * M * M * M * M / l2;
  s.s_ch = kPi * l2 - 2.0 * kPi * M * l;
  if (M == 0.0) {
    s.t_bh = kInf;
    s.t_bh_divergent = true;
  } else {
    s.t_bh = 1.0 / (8.0 * kPi * M) - 2.0 * M / (kPi * l2);
  }
  s.t_ch = -1.0 / (2.0 * kPi * l) + M / (kPi * l2);
  s.beta_bh = 8.0 * kPi * M + 128.0 * kPi * M * M * M / l2;
  s.beta_ch = -2.0 * kPi * l - 4.0 * kPi * M;
  return s;
}

TableRow de_sitter_row(double lambda) {
  require_lambda(lambda);
  return {3.0 * kPi / lambda, std::sqrt(lambda / 3.0) / (2.0 * kPi),
          2.0 * kPi * std::sqrt(3.0 / lambda)};
}

TableRow nariai_row(double lambda) {
  require_lambda(lambda);
  return {2.0 * kPi / lambda, 0.0, kInf};
}

TableRow schwarzschild_row(double M) {
  require_mass(M);
  return {4.0 * kPi * M * M, 1.0 / (8.0 * kPi * M), 8.0 * kPi * M};
}

TableRow schwarzschild_de_sitter_row(double M, double lambda) {
  require_mass(M);
  require_lambda(lambda);
  return {4.0 * kPi * M * M + 32.0 * kPi * lambda * M * M * M * M / 3.0,
          1.0 / (8.0 * kPi * M) - 2.0 * lambda * M / (3.0 * kPi),
          8.0 * kPi * M + 128.0 * kPi * lambda * M * M * M / 3.0};
}

double partition_integrand(double M, double beta) {
  if (M < 0.0) throw DomainError("partition_integrand: M must be non-negative");
  const double s_bh = M == 0.0 ? 0.0 : entropies(M, 3.0).s_bh;
  return std::exp(s_bh - beta * M);
}

double partition_function(double beta, double rel_tol) {
  if (!std::isfinite(beta)) throw DomainError("partition_function: beta must be finite");
  return integrate_adaptive([beta](double M) { return partition_integrand(M, beta); }, 0.0,
                            nariai_mass(3.0), rel_tol);
}

void write_sweep_csv(std::ostream& os, std::span<const ThermoPoint> points) {
  os << "M,r_bh,r_ch,S_bh,S_ch,S_tot,beta_bh,beta_ch,T_bh,T_ch\n";
  char buf[512];
  for (const ThermoPoint& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  p.M, p.r_bh, p.r_ch, p.s_bh, p.s_ch, p.s_tot, p.beta_bh, p.beta_ch, p.t_bh,
                  p.t_ch);
    os << buf;
  }
}

}  // namespace sdsq::thermo
