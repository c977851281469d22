#include "sdsq/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "sdsq/errors.hpp"

namespace sdsq {

namespace {

template <class Op>
VqeRun run_multistart(const Op& op, const AnsatzSpec& spec, OptimizerSettings settings,
                      const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw ContractError("run_vqe: at least one seed is required");
  const std::size_t n = spec.parameter_count();
  if (settings.lower.empty() && settings.upper.empty()) {
    const OptimizerSettings box = default_vqe_settings(n);
    settings.lower = box.lower;
    settings.upper = box.upper;
  }

  VqeRun run;
  run.spec = spec;
  run.settings = settings;
  run.seeds = seeds;

  for (const std::uint64_t seed : seeds) {
    VqeStart start;
    start.seed = seed;
    // Line-search trials can dip below the accepted iterate; keep the lowest point seen.
    double seen_value = std::numeric_limits<double>::infinity();
    std::vector<double> seen_theta;
    auto objective = [&](std::span<const double> theta) {
      const double value = expectation_of(spec, theta, op);
      start.evaluations.emplace_back(start.evaluations.size(), value);
      if (value < seen_value) {
        seen_value = value;
        seen_theta.assign(theta.begin(), theta.end());
      }
      return value;
    };
    auto grad = [&](std::span<const double> theta) { return gradient(spec, theta, op); };

    std::vector<double> x0 = initial_angles(seed, n);
    for (std::size_t i = 0; i < n; ++i) x0[i] = std::clamp(x0[i], settings.lower[i], settings.upper[i]);

    const OptimizerResult res = minimize_bounded(objective, grad, std::move(x0), settings);
    start.status = res.status;
    start.failed = res.aborted();
    start.final_value = res.value;
    start.final_theta = res.x;
    if (!start.failed && seen_value < res.value) {
      start.final_value = seen_value;
      start.final_theta = seen_theta;
    }
    if (!start.failed && start.final_value < run.best_value) {
      run.best_value = start.final_value;
      run.best_theta = start.final_theta;
      run.best_seed = seed;
    }
    run.starts.push_back(std::move(start));
  }

  if (std::all_of(run.starts.begin(), run.starts.end(), [](const VqeStart& s) { return s.failed; })) {
    throw RunError("run_vqe: every optimizer start failed");
  }
  return run;
}

}  // namespace

std::vector<double> initial_angles(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  for (double& x : out) {
    const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    x = -std::numbers::pi + 2.0 * std::numbers::pi * unit;
  }
  return out;
}

OptimizerSettings default_vqe_settings(std::size_t parameter_count) {
  return OptimizerSettings::boxed(parameter_count, -2.0 * std::numbers::pi,
                                  2.0 * std::numbers::pi);
}

std::size_t VqeRun::total_evaluations() const noexcept {
  std::size_t total = 0;
  for (const VqeStart& s : starts) total += s.evaluations.size();
  return total;
}

VqeRun run_vqe(const HermitianOperator& op, const AnsatzSpec& spec, OptimizerSettings settings,
               const std::vector<std::uint64_t>& seeds) {
  if (op.dim() != (std::size_t{1} << spec.qubits)) {
    throw DimensionError("run_vqe: operator dimension does not match ansatz qubits");
  }
  return run_multistart(op, spec, std::move(settings), seeds);
}

VqeRun run_vqe(const PauliSum& op, const AnsatzSpec& spec, OptimizerSettings settings,
               const std::vector<std::uint64_t>& seeds) {
  if (op.qubits != spec.qubits) {
    throw DimensionError("run_vqe: Pauli sum qubit count does not match ansatz");
  }
  return run_multistart(op, spec, std::move(settings), seeds);
}

VqeRun run_vqe(const ModelConfig& config, const AnsatzSpec& spec, OptimizerSettings settings,
               const std::vector<std::uint64_t>& seeds) {
  if (spec.qubits != config.qubits) {
    throw DimensionError("run_vqe: ansatz has " + std::to_string(spec.qubits) +
                         " qubits, model has " + std::to_string(config.qubits));
  }
  const OperatorPair ops = build_operators(config);
  VqeRun run = run_vqe(ops.mass_4M, spec, std::move(settings), seeds);
  run.config = config;
  return run;
}

void export_convergence(std::ostream& os, const VqeRun& run) {
  os << "start_id,eval_index,value,best_so_far\n";
  char buf[128];
  for (std::size_t s = 0; s < run.starts.size(); ++s) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [index, value] : run.starts[s].evaluations) {
      best = std::min(best, value);
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", s, index, value, best);
      os << buf;
    }
  }
}

}  // namespace sdsq
