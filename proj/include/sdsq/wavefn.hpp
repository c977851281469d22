#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sdsq/matrix.hpp"

namespace sdsq {

/// Oscillator-level coefficients a[m][n], m for the u slot, n for the v slot.
struct CoefficientGrid {
  std::size_t levels = 0;  // 2^(q/2)
  std::vector<Complex> a;  // row-major, a[m * levels + n]

  Complex operator()(std::size_t m, std::size_t n) const { return a[m * levels + n]; }
  Complex& operator()(std::size_t m, std::size_t n) { return a[m * levels + n]; }
  ComplexVector flatten() const { return a; }
  double norm_squared() const;
};

/// a[m][n] = psi[m * 2^(q/2) + n]. Throws DimensionError for odd q or |psi| != 2^q.
CoefficientGrid reshape_state(std::span<const Complex> psi, unsigned qubits);

/// H_0(x) .. H_kmax(x) (physicists' convention) by upward recurrence.
std::vector<double> hermite_polynomials(double x, std::size_t kmax);

/// Oscillator eigenfunctions [sqrt(pi) 2^k k!]^(-1/2) H_k(x) exp(-x^2/2), k < count.
std::vector<double> hermite_functions(double x, std::size_t count);

/// Psi(u, v) = sum a_mn phi_m(u) phi_n(v).
Complex hermite_eval(const CoefficientGrid& grid, double u, double v);

/// Inclusive, evenly spaced samples.
struct GridAxis {
  double lo = -8.0;
  double hi = 8.0;
  std::size_t samples = 161;

  std::vector<double> points() const;
  /// Throws DomainError unless lo < hi and samples >= 2.
  void validate() const;
};

/// Rectangular samples; values are stored with the u index outermost.
struct FieldGrid {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<Complex> values;
  /// Contour level for the contour grids.
  std::optional<double> level;

  Complex at(std::size_t i, std::size_t j) const { return values[i * v.size() + j]; }
};

/// Psi on the u x v grid.
FieldGrid sample_wavefunction(const CoefficientGrid& grid, const GridAxis& u_axis,
                              const GridAxis& v_axis);

/// Trapezoid integral of |Psi|^2 over the grid.
double grid_norm(const FieldGrid& field);

/// Trapezoid projections <phi_m phi_n, Psi>, one per level pair.
CoefficientGrid project_onto_basis(const FieldGrid& field, std::size_t levels);

/// max |Psi(u, v) - Psi(-u, -v)| over a grid whose axes are symmetric about 0.
/// Throws DomainError when an axis is not symmetric.
double parity_defect(const FieldGrid& field);

enum class WkbVariant {
  printed,  // radicand lambda b^3 / 3 + 2m/b - 1
  metric,   // radicand lambda b^2 / 3 + 2m/b - 1
};

std::string_view to_string(WkbVariant v) noexcept;
WkbVariant parse_wkb_variant(std::string_view name);

enum class WkbRegion { allowed, forbidden, turning_point };

struct WkbSample {
  double a = 0.0;
  double b = 0.0;
  double radicand = 0.0;
  /// Zero at a turning point, where the amplitude diverges.
  Complex value;
  WkbRegion region = WkbRegion::allowed;
};

/// sqrt(b^(-3/2) / R) exp(i a b sqrt(R)) with principal-branch square roots.
/// A point with |R| below 1e-12 of its largest term is flagged as a turning
/// point. Throws DomainError for b <= 0.
WkbSample wkb(double a, double b, double m, double lambda,
              WkbVariant variant = WkbVariant::printed);

std::vector<WkbSample> wkb_grid(double m, double lambda, const GridAxis& a_axis,
                                const GridAxis& b_axis,
                                WkbVariant variant = WkbVariant::printed);

/// V_S and V_SD sampled along x = u - v.
struct PotentialProfile {
  std::vector<double> x;
  std::vector<double> v_s;
  std::vector<double> v_sd;
};

PotentialProfile potential_grid(double lambda, const GridAxis& x_axis);

/// mass_ab(p_a, b) over p_a x b, level M. The b axis must be positive.
FieldGrid contour_grid_ab(double M, double lambda, const GridAxis& p_a_axis,
                          const GridAxis& b_axis);

/// Classical 4M = P^2/2 + x^2/2 - (lambda/96) x^6 with P = p_u + p_v (first
/// axis) and x = u - v (second axis), level 4M.
FieldGrid contour_grid_uv(double M, double lambda, const GridAxis& momentum_axis,
                          const GridAxis& x_axis);

/// CSV `u,v,re,im,abs2`.
void write_grid_csv(std::ostream& os, const FieldGrid& field);
/// CSV `a,b,re,im,abs2,allowed_flag`; the flag is 1, 0 or -1 for a turning point.
void write_wkb_csv(std::ostream& os, std::span<const WkbSample> samples);
/// CSV `x,V_S,V_SD`.
void write_potential_csv(std::ostream& os, const PotentialProfile& profile);

}  // namespace sdsq
