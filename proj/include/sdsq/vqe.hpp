#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sdsq/ansatz.hpp"
#include "sdsq/model.hpp"
#include "sdsq/numerics.hpp"
#include "sdsq/pauli.hpp"

namespace sdsq {

/// Uniform draw on [-pi, pi)^n from std::mt19937_64 seeded with `seed`.
/// Each draw maps the top 53 bits of one generator output to [0, 1), so the
/// sequence is identical on every conforming standard library.
std::vector<double> initial_angles(std::uint64_t seed, std::size_t n);

/// Box [-2pi, 2pi] on every angle.
OptimizerSettings default_vqe_settings(std::size_t parameter_count);

struct VqeStart {
  std::uint64_t seed = 0;
  bool failed = false;
  OptimizerStatus status = OptimizerStatus::max_iterations;
  double final_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> final_theta;
  /// Every objective evaluation in order: (evaluation index, value).
  std::vector<std::pair<std::size_t, double>> evaluations;
};

struct VqeRun {
  ModelConfig config;
  AnsatzSpec spec;
  OptimizerSettings settings;
  std::vector<std::uint64_t> seeds;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> best_theta;
  std::uint64_t best_seed = 0;
  std::vector<VqeStart> starts;  // same order as `seeds`

  std::size_t total_evaluations() const noexcept;
};

/// Multi-start minimization of <psi(theta)|op|psi(theta)> with parameter-shift
/// gradients. Starts run sequentially in seed order. A start whose optimizer
/// aborts is marked failed; RunError is thrown when every start fails.
/// Settings with empty bounds get the default [-2pi, 2pi] box.
VqeRun run_vqe(const HermitianOperator& op, const AnsatzSpec& spec, OptimizerSettings settings,
               const std::vector<std::uint64_t>& seeds);
VqeRun run_vqe(const PauliSum& op, const AnsatzSpec& spec, OptimizerSettings settings,
               const std::vector<std::uint64_t>& seeds);

/// Builds 4M from `config` and minimizes it with the dense objective.
/// Throws DimensionError when spec.qubits != config.qubits.
VqeRun run_vqe(const ModelConfig& config, const AnsatzSpec& spec, OptimizerSettings settings,
               const std::vector<std::uint64_t>& seeds);

/// CSV `start_id,eval_index,value,best_so_far` over all starts, 17 significant digits.
void export_convergence(std::ostream& os, const VqeRun& run);

}  // namespace sdsq
