#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdsq/ansatz.hpp"
#include "sdsq/errors.hpp"
#include "sdsq/model.hpp"
#include "sdsq/numerics.hpp"
#include "sdsq/spectrum.hpp"

namespace sdsq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Bad flags, unreadable or malformed config. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Fully resolved run configuration.
struct RunConfig {
  ModelConfig model;
  /// False when lambda came from ModelConfig::default_lambda for the qubit count.
  bool lambda_given = false;
  AnsatzSpec ansatz;
  unsigned max_iterations = 500;
  double tolerance = 1e-9;
  unsigned memory_pairs = 10;
  double bound_lo = -6.283185307179586;
  double bound_hi = 6.283185307179586;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double threshold = 1e-12;
  ConstraintMethod method = ConstraintMethod::filter;
  std::optional<double> spectrum_tol;

  OptimizerSettings optimizer_settings() const;
  double constraint_tol() const { return spectrum_tol.value_or(default_constraint_tol(method)); }
};

/// Parses the JSON config document. Every section and key is optional; unknown
/// keys, wrong types and out-of-range values throw UsageError.
RunConfig parse_config(std::string_view json_text);
/// Reads and parses a config file. Missing or unreadable files throw UsageError.
RunConfig load_config(const std::filesystem::path& path);
/// The config as a JSON document accepted by parse_config.
std::string config_to_json(const RunConfig& config);

/// Parses "a:b:n" into n inclusive, evenly spaced values.
std::vector<double> parse_sweep(std::string_view text);

/// 64-bit FNV-1a, used for the manifest input hash.
std::uint64_t fnv1a(std::string_view bytes);

/// Runs one command. Summary JSON goes to `out`, diagnostics to `err`.
/// Returns kExitOk, kExitUsage or kExitNumerical.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdsq::cli
