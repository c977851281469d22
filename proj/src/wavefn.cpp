#include "sdsq/wavefn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "sdsq/errors.hpp"
#include "sdsq/model.hpp"

namespace sdsq {

namespace {

// Trapezoid weights for an evenly spaced axis.
std::vector<double> trapezoid_weights(const std::vector<double>& x) {
  std::vector<double> w(x.size(), 0.0);
  if (x.size() < 2) return w;
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  std::fill(w.begin(), w.end(), h);
  w.front() = w.back() = 0.5 * h;
  return w;
}

std::vector<std::vector<double>> basis_table(const std::vector<double>& x, std::size_t levels) {
  std::vector<std::vector<double>> table;
  table.reserve(x.size());
  for (double xi : x) table.push_back(hermite_functions(xi, levels));
  return table;
}

bool symmetric(const std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] + x[x.size() - 1 - i]) > 1e-12 * std::max(1.0, std::abs(x[i]))) return false;
  }
  return true;
}

void put(std::ostream& os, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  os << buf;
}

}  // namespace

double CoefficientGrid::norm_squared() const {
  double s = 0.0;
  for (const Complex& c : a) s += std::norm(c);
  return s;
}

CoefficientGrid reshape_state(std::span<const Complex> psi, unsigned qubits) {
  if (qubits == 0 || qubits % 2 != 0) {
    throw DimensionError("reshape_state: qubit count must be even and positive, got " +
                         std::to_string(qubits));
  }
  const std::size_t dim = std::size_t{1} << qubits;
  if (psi.size() != dim) {
    throw DimensionError("reshape_state: state has " + std::to_string(psi.size()) +
                         " amplitudes, expected " + std::to_string(dim));
  }
  CoefficientGrid grid;
  grid.levels = std::size_t{1} << (qubits / 2);
  grid.a.assign(psi.begin(), psi.end());
  return grid;
}

std::vector<double> hermite_polynomials(double x, std::size_t kmax) {
  std::vector<double> h(kmax + 1);
  h[0] = 1.0;
  if (kmax >= 1) h[1] = 2.0 * x;
  for (std::size_t k = 1; k < kmax; ++k) {
    h[k + 1] = 2.0 * x * h[k] - 2.0 * static_cast<double>(k) * h[k - 1];
  }
  return h;
}

std::vector<double> hermite_functions(double x, std::size_t count) {
  if (count == 0) return {};
  std::vector<double> h = hermite_polynomials(x, count - 1);
  const double gauss = std::exp(-0.5 * x * x);
  double norm = std::pow(std::numbers::pi, -0.25);  // [sqrt(pi) 2^k k!]^(-1/2) at k = 0
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) norm /= std::sqrt(2.0 * static_cast<double>(k));
    h[k] *= norm * gauss;
  }
  return h;
}

Complex hermite_eval(const CoefficientGrid& grid, double u, double v) {
  const std::vector<double> fu = hermite_functions(u, grid.levels);
  const std::vector<double> fv = hermite_functions(v, grid.levels);
  Complex psi{};
  for (std::size_t m = 0; m < grid.levels; ++m) {
    Complex row{};
    for (std::size_t n = 0; n < grid.levels; ++n) row += grid(m, n) * fv[n];
    psi += fu[m] * row;
  }
  return psi;
}

void GridAxis::validate() const {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || samples < 2) {
    throw DomainError("grid axis needs lo < hi and at least two samples");
  }
}

std::vector<double> GridAxis::points() const {
  validate();
  // Offsets from the midpoint keep an axis symmetric about 0 exactly symmetric.
  std::vector<double> x(samples);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const double span = static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i)
    x[i] = mid + half * ((2.0 * static_cast<double>(i) - span) / span);
  x.front() = lo;
  x.back() = hi;
  return x;
}

FieldGrid sample_wavefunction(const CoefficientGrid& grid, const GridAxis& u_axis,
                              const GridAxis& v_axis) {
  FieldGrid field;
  field.u = u_axis.points();
  field.v = v_axis.points();
  const auto fu = basis_table(field.u, grid.levels);
  const auto fv = basis_table(field.v, grid.levels);
  field.values.resize(field.u.size() * field.v.size());
  for (std::size_t i = 0; i < field.u.size(); ++i) {
    // Contract the u index first: c_n = sum_m a_mn phi_m(u_i).
    std::vector<Complex> c(grid.levels);
    for (std::size_t m = 0; m < grid.levels; ++m)
      for (std::size_t n = 0; n < grid.levels; ++n) c[n] += grid(m, n) * fu[i][m];
    for (std::size_t j = 0; j < field.v.size(); ++j) {
      Complex psi{};
      for (std::size_t n = 0; n < grid.levels; ++n) psi += c[n] * fv[j][n];
      field.values[i * field.v.size() + j] = psi;
    }
  }
  return field;
}

double grid_norm(const FieldGrid& field) {
  const std::vector<double> wu = trapezoid_weights(field.u);
  const std::vector<double> wv = trapezoid_weights(field.v);
  double total = 0.0;
  for (std::size_t i = 0; i < field.u.size(); ++i)
    for (std::size_t j = 0; j < field.v.size(); ++j) total += wu[i] * wv[j] * std::norm(field.at(i, j));
  return total;
}

CoefficientGrid project_onto_basis(const FieldGrid& field, std::size_t levels) {
  const std::vector<double> wu = trapezoid_weights(field.u);
  const std::vector<double> wv = trapezoid_weights(field.v);
  const auto fu = basis_table(field.u, levels);
  const auto fv = basis_table(field.v, levels);
  CoefficientGrid out;
  out.levels = levels;
  out.a.assign(levels * levels, Complex{});
  for (std::size_t i = 0; i < field.u.size(); ++i) {
    std::vector<Complex> row(levels);
    for (std::size_t j = 0; j < field.v.size(); ++j) {
      const Complex w = wv[j] * field.at(i, j);
      for (std::size_t n = 0; n < levels; ++n) row[n] += w * fv[j][n];
    }
    for (std::size_t m = 0; m < levels; ++m)
      for (std::size_t n = 0; n < levels; ++n) out(m, n) += wu[i] * fu[i][m] * row[n];
  }
  return out;
}

double parity_defect(const FieldGrid& field) {
  if (!symmetric(field.u) || !symmetric(field.v)) {
    throw DomainError("parity_defect: grid axes must be symmetric about zero");
  }
  const std::size_t nu = field.u.size(), nv = field.v.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t j = 0; j < nv; ++j)
      worst = std::max(worst, std::abs(field.at(i, j) - field.at(nu - 1 - i, nv - 1 - j)));
  return worst;
}

std::string_view to_string(WkbVariant v) noexcept {
  return v == WkbVariant::printed ? "printed" : "metric";
}

WkbVariant parse_wkb_variant(std::string_view name) {
  if (name == "printed") return WkbVariant::printed;
  if (name == "metric") return WkbVariant::metric;
  throw ContractError("unknown WKB variant '" + std::string(name) + "'");
}

WkbSample wkb(double a, double b, double m, double lambda, WkbVariant variant) {
  if (!(b > 0.0)) throw DomainError("wkb: b must be positive");
  const double power = variant == WkbVariant::printed ? 3.0 : 2.0;
  const double t1 = lambda * std::pow(b, power) / 3.0;
  const double t2 = 2.0 * m / b;
  const double r = t1 + t2 - 1.0;

  WkbSample s;
  s.a = a;
  s.b = b;
  s.radicand = r;
  const double scale = std::max({std::abs(t1), std::abs(t2), 1.0});
  if (std::abs(r) <= 1e-12 * scale) {
    s.region = WkbRegion::turning_point;
    s.value = Complex{};
    return s;
  }
  s.region = r > 0.0 ? WkbRegion::allowed : WkbRegion::forbidden;
  const Complex amplitude = std::sqrt(Complex(std::pow(b, -1.5) / r, 0.0));
  const Complex root = std::sqrt(Complex(r, 0.0));
  s.value = amplitude * std::exp(Complex(0.0, a * b) * root);
  return s;
}

std::vector<WkbSample> wkb_grid(double m, double lambda, const GridAxis& a_axis,
                                const GridAxis& b_axis, WkbVariant variant) {
  const std::vector<double> as = a_axis.points();
  const std::vector<double> bs = b_axis.points();
  std::vector<WkbSample> out;
  out.reserve(as.size() * bs.size());
  for (double a : as)
    for (double b : bs) out.push_back(wkb(a, b, m, lambda, variant));
  return out;
}

PotentialProfile potential_grid(double lambda, const GridAxis& x_axis) {
  PotentialProfile p;
  p.x = x_axis.points();
  for (double x : p.x) {
    p.v_s.push_back(potential_s(x));
    p.v_sd.push_back(potential_sd(x, lambda));
  }
  return p;
}

FieldGrid contour_grid_ab(double M, double lambda, const GridAxis& p_a_axis,
                          const GridAxis& b_axis) {
  if (!(b_axis.lo > 0.0)) throw DomainError("contour_grid_ab: b axis must be positive");
  FieldGrid field;
  field.u = p_a_axis.points();
  field.v = b_axis.points();
  field.level = M;
  field.values.reserve(field.u.size() * field.v.size());
  for (double pa : field.u)
    for (double b : field.v) field.values.emplace_back(mass_ab(pa, b, lambda), 0.0);
  return field;
}

FieldGrid contour_grid_uv(double M, double lambda, const GridAxis& momentum_axis,
                          const GridAxis& x_axis) {
  FieldGrid field;
  field.u = momentum_axis.points();
  field.v = x_axis.points();
  field.level = 4.0 * M;
  field.values.reserve(field.u.size() * field.v.size());
  for (double p : field.u)
    for (double x : field.v) field.values.emplace_back(0.5 * p * p + potential_sd(x, lambda), 0.0);
  return field;
}

void write_grid_csv(std::ostream& os, const FieldGrid& field) {
  os << "u,v,re,im,abs2\n";
  for (std::size_t i = 0; i < field.u.size(); ++i)
    for (std::size_t j = 0; j < field.v.size(); ++j) {
      const Complex z = field.at(i, j);
      put(os, "%.17g,%.17g,%.17g,%.17g,%.17g\n", field.u[i], field.v[j], z.real(), z.imag(),
          std::norm(z));
    }
}

void write_wkb_csv(std::ostream& os, std::span<const WkbSample> samples) {
  os << "a,b,re,im,abs2,allowed_flag\n";
  for (const WkbSample& s : samples) {
    const int flag = s.region == WkbRegion::allowed ? 1 : s.region == WkbRegion::forbidden ? 0 : -1;
    put(os, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.a, s.b, s.value.real(), s.value.imag(),
        std::norm(s.value), flag);
  }
}

void write_potential_csv(std::ostream& os, const PotentialProfile& profile) {
  os << "x,V_S,V_SD\n";
  for (std::size_t i = 0; i < profile.x.size(); ++i)
    put(os, "%.17g,%.17g,%.17g\n", profile.x[i], profile.v_s[i], profile.v_sd[i]);
}

}  // namespace sdsq
