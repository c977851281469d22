#pragma once

#include <iosfwd>
#include <span>

namespace sdsq::thermo {

/// Curvature length with ell^2 = 3 / lambda.
double ell(double lambda);

struct Horizons {
  double r_bh;   // black-hole horizon
  double r_ch;   // cosmological horizon
  double r_neg;  // negative root of r^3 - ell^2 r + 2 M ell^2
};

/// Positive roots of 1 - 2M/r - r^2/ell^2 from the closed trigonometric form,
/// checked against the general cubic solver.
///
/// Throws DomainError for M <= 0 or lambda <= 0 and NoHorizonError for
/// M > M_N = 1/(3 sqrt(lambda)). At M = M_N both radii equal 1/sqrt(lambda).
Horizons horizons(double M, double lambda);

/// Same roots taken from real_roots_cubic alone.
Horizons horizons_from_cubic(double M, double lambda);

struct Entropies {
  double s_bh, s_ch, s_tot;
};

/// pi r^2 per horizon. Preconditions as `horizons`.
Entropies entropies(double M, double lambda);

struct InverseTemperatures {
  double beta_bh;
  double beta_ch;  // negative below the Nariai mass
  /// True at M = M_N, where both values are +infinity (zero temperature).
  bool nariai = false;
};

/// beta = dS/dM with dr/dM = -2 ell^2 / (3 r^2 - ell^2) from the horizon cubic.
InverseTemperatures inverse_temperatures(double M, double lambda);

/// Every horizon quantity at one mass, signs as they come out of dS/dM.
struct ThermoPoint {
  double M, lambda, ell;
  double r_bh, r_ch;
  double s_bh, s_ch, s_tot;
  double beta_bh, beta_ch;
  double t_bh, t_ch;
};

/// Like the individual functions, but also accepts M = 0 (pure de Sitter:
/// r_bh = 0, beta_bh = 0, T_bh = +inf) so mass sweeps may start at zero.
/// At M = M_N temperatures are 0 and inverse temperatures +inf.
ThermoPoint thermo_point(double M, double lambda);

/// Small-mass expansions, truncated at the orders listed:
///   S_bh = 4 pi M^2 + 32 pi M^4 / ell^2        S_ch = pi ell^2 - 2 pi M ell
///   T_bh = 1/(8 pi M) - 2M/(pi ell^2)          T_ch = -1/(2 pi ell) + M/(pi ell^2)
///   beta_bh = 8 pi M + 128 pi M^3 / ell^2      beta_ch = -2 pi ell - 4 pi M
struct SeriesExpansions {
  double s_bh, s_ch, t_bh, t_ch, beta_bh, beta_ch;
  /// Set at M = 0, where the 1/(8 pi M) term makes T_bh = +infinity.
  bool t_bh_divergent = false;
};

/// Throws DomainError for M < 0 or lambda <= 0.
SeriesExpansions series_expansions(double M, double lambda);

/// Tabulated closed forms for the limiting spacetimes.
struct TableRow {
  double entropy, temperature, inverse_temperature;
};
TableRow de_sitter_row(double lambda);     // 3pi/lambda, sqrt(lambda/3)/(2pi), 2pi sqrt(3/lambda)
TableRow nariai_row(double lambda);        // 2pi/lambda, 0, +inf
TableRow schwarzschild_row(double M);      // 4pi M^2, 1/(8 pi M), 8 pi M
/// Black-hole series written with lambda instead of ell.
TableRow schwarzschild_de_sitter_row(double M, double lambda);

/// exp(S_bh(M) - beta M) at lambda = 3 (ell = 1); S_bh(0) = 0.
double partition_integrand(double M, double beta);

/// Z(beta) = integral over [0, 1/sqrt(27)] of partition_integrand, by adaptive
/// quadrature at relative tolerance `rel_tol`.
double partition_function(double beta, double rel_tol = 1e-12);

/// Sweep CSV `M,r_bh,r_ch,S_bh,S_ch,S_tot,beta_bh,beta_ch,T_bh,T_ch`.
void write_sweep_csv(std::ostream& os, std::span<const ThermoPoint> points);

}  // namespace sdsq::thermo
