// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdsq/ansatz.hpp"
#include "sdsq/model.hpp"
#include "sdsq/numerics.hpp"
#include "sdsq/pauli.hpp"
#include "sdsq/spectrum.hpp"
#include "sdsq/thermo.hpp"
#include "sdsq/vqe.hpp"
#include "sdsq/wavefn.hpp"

using namespace sdsq;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

void note(const std::string& text) {
  std::printf("         %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double eigen_min(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(e, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

std::vector<std::uint64_t> ten_seeds() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

VqeRun reference_vqe(unsigned q) {
  const ModelConfig cfg{ModelConfig::default_lambda(q), q, BasisKind::Oscillator};
  return run_vqe(cfg, AnsatzSpec{q, 3, Entanglement::full}, {}, ten_seeds());
}

// Thresholds t with count(|a| > t) == target form [sorted[target], sorted[target - 1]).
struct Window {
  double lo, hi;
  bool empty() const { return !(lo < hi); }
};

Window count_window(std::vector<double> mags, std::size_t target) {
  std::sort(mags.begin(), mags.end(), std::greater<>());
  if (target == 0 || target > mags.size()) return {1.0, 0.0};
  const double hi = mags[target - 1];
  const double lo = target < mags.size() ? mags[target] : 0.0;
  return {lo, hi};
}

void criterion_1() {
  struct Row {
    unsigned q;
    double lambda;
    std::size_t expected;
  };
  const Row rows[] = {{4, 0.01, 57}, {6, 0.01, 745}, {8, 0.005, 6611}};
  bool exact_at_default = true;
  Window common{1e-14, 1e-8};
  std::string detail;
  double q8_seconds = 0.0;
  for (const Row& r : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    const OperatorPair ops = build_operators({r.lambda, r.q, BasisKind::Oscillator});
    const PauliSum all = decompose(ops.mass_4M, 0.0);
    const std::size_t at_default = decompose(ops.mass_4M, 1e-12).size();
    if (r.q == 8) q8_seconds = seconds_since(t0);
    std::vector<double> mags;
    for (const PauliTerm& t : all.terms) mags.push_back(std::abs(t.coefficient));
    const Window w = count_window(mags, r.expected);
    common = {std::max(common.lo, w.lo), std::min(common.hi, w.hi)};
    exact_at_default = exact_at_default && at_default == r.expected;
    detail += fmt("q=%u: %zu at 1e-12 (expected %zu, matching window [%.3g, %.3g)); ", r.q, at_default,
                  r.expected, w.lo, w.hi);
  }
  const bool window_ok = !common.empty();
  const bool fast = q8_seconds < 60.0;
  std::string verdict = exact_at_default ? "exact at 1e-12"
                        : window_ok ? fmt("common threshold window [%.3g, %.3g) inside [1e-14, 1e-8]",
                                          common.lo, common.hi)
                                    : "no common window in [1e-14, 1e-8]";
  report(1, "Pauli term counts", (exact_at_default || window_ok) && fast,
         verdict + fmt("; q=8 decomposition %.2f s", q8_seconds));
  note(detail);
}

void criterion_2() {
  const OperatorPair ops = build_operators({0.01, 4, BasisKind::Oscillator});
  const std::vector<double> want{0.0, 0.935639, 3.29768, 7.67034};
  const ConstrainedSpectrum f = constrained_spectrum(ops, ConstraintMethod::filter);
  bool values_ok = f.eigenvalues.size() == want.size();
  double worst = 0.0;
  for (std::size_t k = 0; values_ok && k < want.size(); ++k) worst = std::max(worst, std::abs(f.eigenvalues[k] - want[k]));
  values_ok = values_ok && worst <= 1e-3;
  double kept = 0.0, rejected = std::numeric_limits<double>::infinity();
  for (const ConstraintCandidate& c : f.ranked) {
    if (c.residual < f.tol) kept = std::max(kept, c.residual);
    else rejected = std::min(rejected, c.residual);
  }
  const double separation = kept > 0.0 ? rejected / kept : std::numeric_limits<double>::infinity();
  std::string values;
  for (double v : f.eigenvalues) values += fmt("%.6g ", v);
  report(2, "Constrained spectrum (filter)", values_ok && separation >= 10.0,
         fmt("%zu states {%s} max deviation %.2e; residual separation %.1f (largest kept %.3g, smallest rejected %.3g)",
             f.eigenvalues.size(), values.c_str(), worst, separation, kept, rejected));

  const ConstrainedSpectrum p = constrained_spectrum(ops, ConstraintMethod::project);
  std::string pv;
  for (double v : p.eigenvalues) pv += fmt("%.6g ", v);
  note(fmt("project method (informational): %zu states {%s}", p.eigenvalues.size(), pv.c_str()));
}

void criterion_3() {
  bool q4_ok = false;
  std::string detail;
  for (unsigned q : {4u, 6u, 8u}) {
    const double lambda = ModelConfig::default_lambda(q);
    const OperatorPair ops = build_operators({lambda, q, BasisKind::Oscillator});
    const double ours = eig_hermitian(ops.mass_4M).eigenvalues.front();
    const double oracle = eigen_min(ops.mass_4M.matrix());
    const bool ok = std::abs(ours) <= 1e-6 && std::abs(ours - oracle) <= 1e-9;
    if (q == 4) q4_ok = ok;
    detail += fmt("q=%u %s %.3e (oracle %.3e); ", q, ok ? "pass" : "fail", ours, oracle);
  }
  report(3, "Exact minimum of 4M", q4_ok, detail);
}

double vqe_gap(const VqeRun& run) {
  const double exact = eig_hermitian(build_operators(run.config).mass_4M).eigenvalues.front();
  return run.best_value - exact;
}

bool monotone_csv(const VqeRun& run) {
  std::ostringstream os;
  export_convergence(os, run);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  long last_start = -1;
  double last = 0.0, overall = std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    long start = 0;
    double best = 0.0;
    std::sscanf(line.c_str(), "%ld,%*[^,],%*[^,],%lf", &start, &best);
    if (start == last_start && best > last) return false;
    last_start = start;
    last = best;
    overall = std::min(overall, best);
  }
  return overall == run.best_value;
}

double gap4 = std::nan("");

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  const VqeRun run = reference_vqe(4);
  const double secs = seconds_since(t0);
  gap4 = vqe_gap(run);
  const bool csv_ok = monotone_csv(run);
  report(4, "VQE q=4", gap4 <= 1e-6 && csv_ok && secs < 120.0,
         fmt("best %.3e, gap %.3e over %zu starts; best-so-far monotone %s; %.2f s", run.best_value, gap4,
             run.starts.size(), csv_ok ? "yes" : "no", secs));
}

void criterion_5() {
  // The q=4 gap sits at rounding level; its magnitude is floored at the 1e-6
  // tolerance criterion 4 certifies, so the claim is gap >= 1e3 * 1e-6.
  const double base = std::max(std::abs(gap4), 1e-6);
  bool ok = std::isfinite(gap4);
  std::string detail = fmt("q=4 gap %.3e (floored %.0e); ", gap4, base);
  for (unsigned q : {6u, 8u}) {
    const auto t0 = std::chrono::steady_clock::now();
    const VqeRun run = reference_vqe(q);
    const double g = vqe_gap(run);
    ok = ok && g >= 1e3 * base;
    detail += fmt("q=%u gap %.4f (%.1f orders above floor, %.0f s); ", q, g, std::log10(g / base),
                  seconds_since(t0));
  }
  report(5, "VQE degradation with qubit count", ok, detail);
  note("reference gaps: 0.3217 (q=6), 0.7799 (q=8)");
}

void criterion_6() {
  const thermo::Horizons h = thermo::horizons(0.5, 0.01);
  const double mn = nariai_mass(0.01);
  const double lambda = 0.01;
  const double s_ds = thermo::thermo_point(0.0, lambda).s_ch;
  const double s_small = thermo::entropies(1e-14, lambda).s_ch;
  const double s_n = thermo::entropies(mn, lambda).s_tot;
  const bool ok = std::abs(h.r_bh - 1.00337) <= 1e-3 && std::abs(h.r_ch - 16.797) <= 1e-3 &&
                  std::abs(mn - 3.3333) <= 1e-3 && std::abs(s_ds - 3 * kPi / lambda) <= 1e-9 &&
                  std::abs(s_small - 3 * kPi / lambda) <= 1e-9 && std::abs(s_n - 2 * kPi / lambda) <= 1e-9;
  report(6, "Thermodynamic golden numbers", ok,
         fmt("r_bh %.6f r_ch %.5f M_N %.6f; S_ch(0)-3pi/lambda %.1e, S_ch(1e-14)-3pi/lambda %.1e, S_N-2pi/lambda %.1e",
             h.r_bh, h.r_ch, mn, s_ds - 3 * kPi / lambda, s_small - 3 * kPi / lambda, s_n - 2 * kPi / lambda));
}

void criterion_7() {
  const double lambda = 0.01, l2 = 3.0 / lambda;
  double worst_id = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double M = nariai_mass(lambda) * k / 101.0;
    const thermo::Horizons h = thermo::horizons(M, lambda);
    worst_id = std::max({worst_id, std::abs(h.r_bh + h.r_ch + h.r_neg),
                         std::abs(h.r_bh * h.r_ch * h.r_neg / (-2 * M * l2) - 1.0),
                         std::abs((h.r_bh * h.r_ch + h.r_bh * h.r_neg + h.r_ch * h.r_neg) / -l2 - 1.0)});
  }

  double worst_beta = 0.0;
  for (double M : {0.01, 0.05, 0.1, 0.15}) {
    const double hstep = 1e-5 * std::max(M, 1e-3);
    const thermo::InverseTemperatures b = thermo::inverse_temperatures(M, 3.0);
    const thermo::Entropies p = thermo::entropies(M + hstep, 3.0), m = thermo::entropies(M - hstep, 3.0);
    worst_beta = std::max({worst_beta, std::abs((p.s_bh - m.s_bh) / (2 * hstep) / b.beta_bh - 1.0),
                           std::abs((p.s_ch - m.s_ch) / (2 * hstep) / b.beta_ch - 1.0)});
  }

  // S_bh truncation error scales as M^6: doubling M multiplies it by about 64.
  auto s_err = [](double M) {
    return std::abs(thermo::series_expansions(M, 3.0).s_bh - thermo::entropies(M, 3.0).s_bh);
  };
  const double e1 = s_err(1e-3), e2 = s_err(2e-3);
  const double order = std::log2(e2 / e1);
  const bool ok = worst_id <= 1e-9 && worst_beta <= 1e-8 && e1 < 1e-10 && std::abs(order - 6.0) < 0.5;
  report(7, "Thermodynamic properties", ok,
         fmt("cubic identities max %.1e; beta vs finite difference max rel %.1e; S_bh series error %.2e at M=1e-3, observed order %.2f",
             worst_id, worst_beta, e1, order));
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double s_bh_arccos(double M) {
  const double r = (2.0 / std::sqrt(3.0)) * std::cos((kPi + std::acos(std::min(1.0, std::sqrt(27.0) * M))) / 3.0);
  return kPi * r * r;
}

void criterion_8() {
  const double mn = 1.0 / std::sqrt(27.0);
  bool ok = true;
  std::string detail;
  for (double beta : {-5.0, 0.0, 5.0, 50.0}) {
    const double z = thermo::partition_function(beta);
    // Substituting M = M_N - s^2 makes the integrand smooth at the Nariai end.
    const double oracle = simpson(
        [&](double s) {
          const double M = mn - s * s;
          return 2.0 * s * std::exp(s_bh_arccos(M) - beta * M);
        },
        0.0, std::sqrt(mn), 100000);
    const double raw = simpson([&](double M) { return std::exp(s_bh_arccos(M) - beta * M); }, 0.0, mn, 100000);
    const double rel = std::abs(z / oracle - 1.0);
    ok = ok && std::isfinite(z) && rel <= 1e-8;
    detail += fmt("Z(%g)=%.12g rel %.1e (plain Simpson %.1e); ", beta, z, rel, std::abs(z / raw - 1.0));
  }
  report(8, "Partition function", ok, detail);
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = d(gen);
    for (std::size_t c = r + 1; c < n; ++c) {
      a(r, c) = Complex(d(gen), d(gen));
      a(c, r) = std::conj(a(r, c));
    }
  }
  return a;
}

void criterion_9() {
  std::mt19937_64 gen(2024);
  double round_trip = 0.0;
  for (unsigned q = 1; q <= 6; ++q) {
    const ComplexMatrix h = random_hermitian(std::size_t{1} << q, gen);
    round_trip = std::max(round_trip, max_abs(reconstruct(decompose(HermitianOperator(h), 0.0)).matrix() - h));
  }

  const HermitianOperator m = build_operators({0.01, 4, BasisKind::Oscillator}).mass_4M;
  const double lo = eig_hermitian(m).eigenvalues.front();
  const AnsatzSpec spec{4, 3, Entanglement::full};
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double grad_err = 0.0, bound_violation = 0.0, norm_err = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> th(spec.parameter_count());
    for (double& x : th) x = angle(gen);
    const AnsatzState st = prepare(spec, th);
    norm_err = std::max(norm_err, std::abs(norm2(st.amplitudes) - 1.0));
    bound_violation = std::max(bound_violation, lo - m.expectation(st.amplitudes));
    if (trial < 10) {
      const std::vector<double> g = gradient(spec, th, m);
      for (std::size_t k = 0; k < th.size(); ++k) {
        const double keep = th[k], h = 1e-5;
        th[k] = keep + h;
        const double fp = expectation_of(spec, th, m);
        th[k] = keep - h;
        const double fm = expectation_of(spec, th, m);
        th[k] = keep;
        grad_err = std::max(grad_err, std::abs(g[k] - (fp - fm) / (2 * h)));
      }
    }
  }
  const bool ok = round_trip < 1e-10 && grad_err < 1e-6 && bound_violation <= 1e-9 && norm_err <= 1e-12;
  report(9, "Quantum-kernel properties", ok,
         fmt("Pauli round trip %.1e; shift vs difference gradient %.1e; variational bound slack %.1e; norm drift %.1e",
             round_trip, grad_err, std::max(bound_violation, 0.0), norm_err));
}

void criterion_10() {
  const OperatorPair ops = build_operators({0.01, 4, BasisKind::Oscillator});
  const ConstrainedSpectrum s = constrained_spectrum(ops, ConstraintMethod::filter);
  double worst_norm = 0.0;
  for (const ComplexVector& psi : s.eigenvectors) {
    const CoefficientGrid a = reshape_state(psi, 4);
    worst_norm = std::max(worst_norm, std::abs(grid_norm(sample_wavefunction(a, {}, {})) - a.norm_squared()));
  }
  const double parity =
      s.empty() ? std::nan("") : parity_defect(sample_wavefunction(reshape_state(s.eigenvectors.front(), 4), {}, {}));
  CoefficientGrid ground;
  ground.levels = 4;
  ground.a.assign(16, Complex{});
  ground(0, 0) = 1.0;
  const double psi00 = hermite_eval(ground, 0.0, 0.0).real();
  const double psi_err = std::abs(psi00 - 1.0 / std::sqrt(kPi));
  const bool ok = !s.empty() && worst_norm <= 1e-3 && parity < 1e-8 && psi_err < 1e-14;
  report(10, "Wavefunction reconstruction", ok,
         fmt("grid vs coefficient norm max %.1e over %zu states; lowest-state parity defect %.1e; Psi(0,0)=%.15f",
             worst_norm, s.eigenvectors.size(), parity, psi00));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::function<void()> criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  int id = 1;
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      report(id, "criterion raised", false, e.what());
    }
    ++id;
  }
  std::printf("acceptance: %d of 10 criteria failed (%.1f s)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
