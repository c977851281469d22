#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "sdsq/errors.hpp"
#include "sdsq/numerics.hpp"

namespace sdsq {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

struct Box {
  std::vector<double> lo, hi;

  double lower(std::size_t i) const {
    return lo.empty() ? -std::numeric_limits<double>::infinity() : lo[i];
  }
  double upper(std::size_t i) const {
    return hi.empty() ? std::numeric_limits<double>::infinity() : hi[i];
  }
  double clamp(std::size_t i, double x) const { return std::clamp(x, lower(i), upper(i)); }
  // A variable is pinned when it sits on a bound and descent would push it outward.
  bool pinned(std::size_t i, double x, double g) const {
    return (x <= lower(i) && g > 0.0) || (x >= upper(i) && g < 0.0);
  }
};

struct CurvaturePair {
  std::vector<double> s, y;
  double rho;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Two-loop recursion applied to the free-variable part of the gradient.
std::vector<double> quasi_newton_direction(const std::deque<CurvaturePair>& memory,
                                           std::span<const double> g,
                                           const std::vector<char>& free) {
  const std::size_t n = g.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = free[i] ? g[i] : 0.0;

  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    const auto& m = memory[k];
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (free[i]) sq += m.s[i] * q[i];
    alpha[k] = m.rho * sq;
    for (std::size_t i = 0; i < n; ++i)
      if (free[i]) q[i] -= alpha[k] * m.y[i];
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& qi : q) qi *= gamma;
  }
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const auto& m = memory[k];
    double yr = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (free[i]) yr += m.y[i] * q[i];
    const double beta = m.rho * yr;
    for (std::size_t i = 0; i < n; ++i)
      if (free[i]) q[i] += (alpha[k] - beta) * m.s[i];
  }
  for (std::size_t i = 0; i < n; ++i) q[i] = free[i] ? -q[i] : 0.0;
  return q;
}

}  // namespace

const char* to_string(OptimizerStatus s) noexcept {
  switch (s) {
    case OptimizerStatus::converged_gradient: return "converged_gradient";
    case OptimizerStatus::converged_function: return "converged_function";
    case OptimizerStatus::line_search_stalled: return "line_search_stalled";
    case OptimizerStatus::max_iterations: return "max_iterations";
    case OptimizerStatus::aborted_nan_gradient: return "aborted_nan_gradient";
  }
  return "unknown";
}

OptimizerResult minimize_bounded(const Objective& f, const Gradient& grad, std::vector<double> x0,
                                 const OptimizerSettings& settings) {
  const std::size_t n = x0.size();
  if (settings.max_iterations < 1) throw ContractError("minimize_bounded: max_iterations < 1");
  if (!(settings.gradient_tolerance > 0.0)) {
    throw ContractError("minimize_bounded: gradient_tolerance must be positive");
  }
  if ((!settings.lower.empty() && settings.lower.size() != n) ||
      (!settings.upper.empty() && settings.upper.size() != n)) {
    throw DimensionError("minimize_bounded: bound vectors do not match parameter count");
  }
  const Box box{settings.lower, settings.upper};
  for (std::size_t i = 0; i < n; ++i) {
    if (box.lower(i) > box.upper(i)) {
      throw ContractError("minimize_bounded: lower bound above upper bound at index " +
                          std::to_string(i));
    }
    if (x0[i] < box.lower(i) || x0[i] > box.upper(i)) {
      throw ContractError("minimize_bounded: x0 outside bounds at index " + std::to_string(i));
    }
  }

  OptimizerResult out;
  std::vector<double> x = std::move(x0);
  double fx = f(x);
  ++out.function_evaluations;
  out.trace.emplace_back(0, fx);

  std::vector<double> g = grad(x);
  if (g.size() != n) throw DimensionError("minimize_bounded: gradient has wrong length");
  if (!all_finite(g) || !std::isfinite(fx)) {
    out.x = std::move(x);
    out.value = fx;
    out.status = OptimizerStatus::aborted_nan_gradient;
    return out;
  }

  std::deque<CurvaturePair> memory;
  std::vector<char> free(n);
  out.status = OptimizerStatus::max_iterations;

  for (std::size_t iter = 1; iter <= settings.max_iterations; ++iter) {
    double pg_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      free[i] = box.pinned(i, x[i], g[i]) ? 0 : 1;
      if (free[i]) pg_norm = std::max(pg_norm, std::abs(g[i]));
    }
    if (pg_norm < settings.gradient_tolerance) {
      out.status = OptimizerStatus::converged_gradient;
      break;
    }

    std::vector<double> d = quasi_newton_direction(memory, g, free);
    double slope = dot(g, d);
    if (!(slope < 0.0) || !all_finite(d)) {
      memory.clear();
      d = quasi_newton_direction(memory, g, free);
      slope = dot(g, d);
    }
    // Without curvature information, take a first step of unit length in the inf-norm.
    double step = memory.empty() ? std::min(1.0, 1.0 / pg_norm) : 1.0;

    std::vector<double> trial(n);
    double f_trial = fx;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = box.clamp(i, x[i] + step * d[i]);
      double predicted = 0.0;
      for (std::size_t i = 0; i < n; ++i) predicted += g[i] * (trial[i] - x[i]);
      f_trial = f(trial);
      ++out.function_evaluations;
      if (std::isfinite(f_trial) && f_trial <= fx + kArmijo * predicted && f_trial <= fx) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!memory.empty()) {
        // Retry the iteration along projected steepest descent.
        memory.clear();
        --iter;
        continue;
      }
      out.status = OptimizerStatus::line_search_stalled;
      break;
    }

    std::vector<double> g_trial = grad(trial);
    out.iterations = iter;
    if (!all_finite(g_trial)) {
      out.status = OptimizerStatus::aborted_nan_gradient;
      break;
    }

    CurvaturePair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = trial[i] - x[i];
      pair.y[i] = g_trial[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    const double yy = dot(pair.y, pair.y);
    if (sy > 1e-12 * yy && sy > 0.0) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > settings.memory_pairs) memory.pop_front();
    }

    const double decrease = fx - f_trial;
    x = std::move(trial);
    g = std::move(g_trial);
    fx = f_trial;
    out.trace.emplace_back(iter, std::min(out.trace.back().second, fx));

    if (decrease <= settings.function_tolerance * std::max({std::abs(fx), 1.0})) {
      out.status = OptimizerStatus::converged_function;
      break;
    }
  }

  out.x = std::move(x);
  out.value = fx;
  return out;
}

}  // namespace sdsq
