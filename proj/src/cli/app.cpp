#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdsq/cli.hpp"
#include "sdsq/pauli.hpp"
#include "sdsq/thermo.hpp"
#include "sdsq/vqe.hpp"
#include "sdsq/wavefn.hpp"

#ifndef SDSQ_VERSION
#define SDSQ_VERSION "0.0.0"
#endif

namespace sdsq::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<unsigned> qubits;
  std::optional<double> mass;
  std::string sweep;
  std::optional<double> threshold;
  std::string wkb_variant = "printed";
};

// Output directory plus the list of files written into it.
class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw UsageError("cannot create output directory '" + dir_.string() + "'");
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ofstream os(dir_ / name, std::ios::binary);
    if (!os) throw UsageError("cannot write '" + (dir_ / name).string() + "'");
    body(os);
    files_.push_back(name);
  }

  const fs::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

// Infinite values become null in JSON; callers add an explicit flag alongside.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

RunConfig resolve_config(const Options& o) {
  RunConfig c = o.config_path.empty() ? parse_config("{}") : load_config(o.config_path);
  if (o.qubits) {
    c.model.qubits = *o.qubits;
    c.ansatz.qubits = *o.qubits;
    if (!c.lambda_given) c.model.lambda = ModelConfig::default_lambda(*o.qubits);
  }
  if (o.lambda) {
    c.model.lambda = *o.lambda;
    c.lambda_given = true;
  }
  if (o.threshold) {
    if (*o.threshold < 0.0) throw UsageError("--threshold must be non-negative");
    c.threshold = *o.threshold;
  }
  if (o.seed) {
    // A base seed replaces the seed list with the same number of consecutive seeds.
    const std::size_t count = c.seeds.size();
    for (std::size_t i = 0; i < count; ++i) c.seeds[i] = *o.seed + i;
  }
  try {
    c.model.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return c;
}

json cmd_decompose(const RunConfig& c, Output& out) {
  const OperatorPair ops = build_operators(c.model);
  const PauliSum sum = decompose(ops.mass_4M, c.threshold);
  out.write("pauli_terms.csv", [&](std::ostream& os) { write_csv(os, sum); });
  return {{"qubits", c.model.qubits},
          {"lambda", c.model.lambda},
          {"basis", std::string(to_string(c.model.basis))},
          {"threshold", c.threshold},
          {"term_count", sum.size()}};
}

json cmd_vqe(const RunConfig& c, Output& out) {
  const OperatorPair ops = build_operators(c.model);
  const double exact = eig_hermitian(ops.mass_4M).eigenvalues.front();
  const std::size_t terms = decompose(ops.mass_4M, c.threshold).size();
  VqeRun run = run_vqe(ops.mass_4M, c.ansatz, c.optimizer_settings(), c.seeds);
  run.config = c.model;
  out.write("convergence.csv", [&](std::ostream& os) { export_convergence(os, run); });

  json starts = json::array();
  std::size_t failed = 0;
  for (const VqeStart& s : run.starts) {
    failed += s.failed ? 1 : 0;
    starts.push_back({{"seed", s.seed},
                      {"status", to_string(s.status)},
                      {"failed", s.failed},
                      {"final_value", finite_or_null(s.final_value)},
                      {"evaluations", s.evaluations.size()}});
  }
  return {{"qubits", c.model.qubits},
          {"lambda", c.model.lambda},
          {"depth", c.ansatz.depth},
          {"entanglement", std::string(to_string(c.ansatz.entanglement))},
          {"parameters", c.ansatz.parameter_count()},
          {"pauli_terms", terms},
          {"exact_min", exact},
          {"vqe_best", run.best_value},
          {"gap", run.best_value - exact},
          {"best_seed", run.best_seed},
          {"best_theta", run.best_theta},
          {"seeds", c.seeds},
          {"failed_starts", failed},
          {"evaluations", run.total_evaluations()},
          {"starts", starts}};
}

json cmd_spectrum(const RunConfig& c, Output& out) {
  const OperatorPair ops = build_operators(c.model);
  const ConstrainedSpectrum s = constrained_spectrum(ops, c.method, c.constraint_tol());
  json ranked = json::array();
  for (const ConstraintCandidate& k : s.ranked)
    ranked.push_back({{"eigenvalue", k.eigenvalue}, {"residual", k.residual}});
  const json doc = {{"qubits", c.model.qubits},
                    {"lambda", c.model.lambda},
                    {"method", std::string(to_string(s.method))},
                    {"tol", s.tol},
                    {"retained", s.eigenvalues.size()},
                    {"eigenvalues", s.eigenvalues},
                    {"residuals", s.residuals},
                    {"commutator_norm", constraint_commutator_norm(ops)},
                    {"ranked", ranked}};
  out.write("spectrum.json", [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  out.write("eigenvectors.csv", [&](std::ostream& os) { write_eigenvector_csv(os, s); });
  json summary = doc;
  summary.erase("ranked");
  return summary;
}

json thermo_json(const thermo::ThermoPoint& p, double lambda) {
  const bool nariai = p.M > 0.0 && std::abs(p.M - nariai_mass(lambda)) <= 1e-12 * nariai_mass(lambda);
  return {{"M", p.M},
          {"lambda", p.lambda},
          {"ell", p.ell},
          {"r_bh", p.r_bh},
          {"r_ch", p.r_ch},
          {"S_bh", p.s_bh},
          {"S_ch", p.s_ch},
          {"S_tot", p.s_tot},
          {"beta_bh", finite_or_null(p.beta_bh)},
          {"beta_ch", finite_or_null(p.beta_ch)},
          {"T_bh", finite_or_null(p.t_bh)},
          {"T_ch", finite_or_null(p.t_ch)},
          {"nariai", nariai}};
}

json cmd_thermo(const RunConfig& c, const Options& o, Output& out) {
  if (o.mass && !o.sweep.empty()) throw UsageError("thermo: use either --M or --sweep");
  const double lambda = c.model.lambda;
  if (!(lambda > 0.0)) throw UsageError("thermo: lambda must be positive");
  const double mn = nariai_mass(lambda);

  std::vector<double> masses;
  if (o.mass) masses = {*o.mass};
  else if (!o.sweep.empty()) masses = parse_sweep(o.sweep);
  else {
    for (int i = 0; i < 100; ++i) masses.push_back(mn * i / 99.0);
    masses.back() = mn;
  }
  for (double m : masses) {
    if (m < 0.0) throw UsageError("thermo: masses must be non-negative");
    if (m > mn * (1.0 + 1e-12)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "thermo: M = %.17g exceeds the Nariai mass %.17g", m, mn);
      throw UsageError(buf);
    }
  }

  std::vector<thermo::ThermoPoint> points;
  for (double m : masses) points.push_back(thermo::thermo_point(std::min(m, mn), lambda));
  out.write("thermo.csv", [&](std::ostream& os) { thermo::write_sweep_csv(os, points); });

  // Partition function at lambda = 3, the normalization in which it is defined.
  const std::vector<double> betas{-5.0, 0.0, 5.0, 50.0};
  json partition = json::array();
  out.write("partition.csv", [&](std::ostream& os) {
    os << "beta,Z\n";
    for (double b : betas) {
      const double z = thermo::partition_function(b);
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", b, z);
      os << buf;
      partition.push_back({{"beta", b}, {"Z", z}});
    }
  });

  json summary = {{"lambda", lambda}, {"nariai_mass", mn}, {"rows", points.size()}, {"partition", partition}};
  if (masses.size() == 1) {
    summary["point"] = thermo_json(points.front(), lambda);
    if (masses.front() > 0.0) {
      const thermo::SeriesExpansions s = thermo::series_expansions(masses.front(), lambda);
      summary["series"] = {{"S_bh", s.s_bh}, {"S_ch", s.s_ch}, {"T_bh", finite_or_null(s.t_bh)},
                           {"T_ch", s.t_ch}, {"beta_bh", s.beta_bh}, {"beta_ch", s.beta_ch}};
    }
  } else {
    summary["M_first"] = masses.front();
    summary["M_last"] = masses.back();
  }
  return summary;
}

json cmd_wavefn(const RunConfig& c, const Options& o, Output& out) {
  const OperatorPair ops = build_operators(c.model);
  const ConstrainedSpectrum s = constrained_spectrum(ops, c.method, c.constraint_tol());
  json states = json::array();
  for (std::size_t k = 0; k < s.eigenvectors.size(); ++k) {
    const CoefficientGrid a = reshape_state(s.eigenvectors[k], c.model.qubits);
    const FieldGrid f = sample_wavefunction(a, GridAxis{}, GridAxis{});
    const std::string name = "state_" + std::to_string(k) + "_grid.csv";
    out.write(name, [&](std::ostream& os) { write_grid_csv(os, f); });
    states.push_back({{"index", k},
                      {"eigenvalue", s.eigenvalues[k]},
                      {"file", name},
                      {"coefficient_norm", a.norm_squared()},
                      {"grid_norm", grid_norm(f)},
                      {"parity_defect", parity_defect(f)}});
  }

  const double m = o.mass.value_or(0.5);
  const WkbVariant variant = parse_wkb_variant(o.wkb_variant);
  const std::vector<WkbSample> wkb_samples =
      wkb_grid(m, c.model.lambda, GridAxis{-2.0, 2.0, 41}, GridAxis{0.1, 20.0, 200}, variant);
  out.write("wkb.csv", [&](std::ostream& os) { write_wkb_csv(os, wkb_samples); });
  std::size_t allowed = 0, forbidden = 0, turning = 0;
  for (const WkbSample& w : wkb_samples) {
    allowed += w.region == WkbRegion::allowed;
    forbidden += w.region == WkbRegion::forbidden;
    turning += w.region == WkbRegion::turning_point;
  }
  return {{"qubits", c.model.qubits},
          {"lambda", c.model.lambda},
          {"method", std::string(to_string(s.method))},
          {"tol", s.tol},
          {"states", states},
          {"wkb", {{"m", m},
                   {"variant", std::string(to_string(variant))},
                   {"samples", wkb_samples.size()},
                   {"allowed", allowed},
                   {"forbidden", forbidden},
                   {"turning_points", turning}}}};
}

json cmd_grids(const RunConfig& c, const Options& o, Output& out) {
  const double lambda = c.model.lambda;
  if (!(lambda > 0.0)) throw UsageError("grids: lambda must be positive");
  const double mn = nariai_mass(lambda);
  const double sub = o.mass.value_or(0.5);
  if (!(sub > 0.0) || sub > mn) throw UsageError("grids: --M must lie in (0, M_N]");

  const double x_star = std::pow(16.0 / lambda, 0.25);
  const PotentialProfile pot = potential_grid(lambda, GridAxis{-1.5 * x_star, 1.5 * x_star, 2001});
  out.write("potential.csv", [&](std::ostream& os) { write_potential_csv(os, pot); });

  const double b_n = 1.0 / std::sqrt(lambda);
  const GridAxis pa{-2.0 * b_n, 2.0 * b_n, 201};
  const GridAxis b{0.02 * b_n, 2.0 * b_n, 200};
  const GridAxis p{-2.0 * x_star, 2.0 * x_star, 201};
  const GridAxis x{-1.5 * x_star, 1.5 * x_star, 201};
  json contours = json::array();
  for (const auto& [label, mass] : {std::pair{"nariai", mn}, std::pair{"sub", sub}}) {
    const FieldGrid ab = contour_grid_ab(mass, lambda, pa, b);
    const FieldGrid uv = contour_grid_uv(mass, lambda, p, x);
    const std::string f_ab = std::string("contour_ab_") + label + ".csv";
    const std::string f_uv = std::string("contour_uv_") + label + ".csv";
    out.write(f_ab, [&](std::ostream& os) { write_grid_csv(os, ab); });
    out.write(f_uv, [&](std::ostream& os) { write_grid_csv(os, uv); });
    contours.push_back({{"M", mass}, {"ab_file", f_ab}, {"ab_level", *ab.level},
                        {"uv_file", f_uv}, {"uv_level", *uv.level}});
  }
  double vmax = -std::numeric_limits<double>::infinity();
  for (double v : pot.v_sd) vmax = std::max(vmax, v);
  return {{"lambda", lambda},
          {"nariai_mass", mn},
          {"potential_file", "potential.csv"},
          {"v_sd_max_sampled", vmax},
          {"v_sd_max_exact", potential_sd(x_star, lambda)},
          {"contours", contours}};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const UnsupportedBasisError*>(&e)) {
    return kExitUsage;
  }
  return kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum simulation of the Schwarzschild-de Sitter minisuperspace", "sdsq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SDSQ_VERSION));

  const std::vector<std::pair<std::string, std::string>> commands{
      {"decompose", "Pauli decomposition of the mass operator 4M"},
      {"vqe", "Multistart VQE for the lowest eigenvalue of 4M"},
      {"spectrum", "Eigenvalues of 4M on states annihilated by 2bH"},
      {"thermo", "Horizon thermodynamics at one mass or over a sweep"},
      {"wavefn", "Hermite-reconstructed wavefunctions and the WKB wavefunction"},
      {"grids", "Potential and classical contour grids"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_dir, "Output directory (default sdsq-<command>)");
    sub->add_option("--seed", o.seed, "Base seed; seeds become N, N+1, ...");
    sub->add_option("--lambda", o.lambda, "Cosmological constant");
    sub->add_option("--qubits", o.qubits, "Total qubit count (even)");
    sub->add_option("--M", o.mass, "Black-hole mass");
    sub->add_option("--sweep", o.sweep, "Mass sweep a:b:n (inclusive)");
    sub->add_option("--threshold", o.threshold, "Pauli coefficient threshold");
    if (name == "wavefn") {
      sub->add_option("--wkb-variant", o.wkb_variant, "WKB radicand: printed or metric")
          ->check(CLI::IsMember({"printed", "metric"}));
    }
    sub->callback([&o, name = name] { o.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SDSQ_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const RunConfig config = resolve_config(o);
    Output output(o.out_dir.empty() ? fs::path("sdsq-" + o.command) : fs::path(o.out_dir));

    json summary;
    if (o.command == "decompose") summary = cmd_decompose(config, output);
    else if (o.command == "vqe") summary = cmd_vqe(config, output);
    else if (o.command == "spectrum") summary = cmd_spectrum(config, output);
    else if (o.command == "thermo") summary = cmd_thermo(config, o, output);
    else if (o.command == "wavefn") summary = cmd_wavefn(config, o, output);
    else summary = cmd_grids(config, o, output);
    summary["command"] = o.command;

    const std::string config_text = config_to_json(config);
    output.write("config.json", [&](std::ostream& os) { os << config_text << '\n'; });
    output.write("summary.json", [&](std::ostream& os) { os << summary.dump(2) << '\n'; });

    // Everything that determines the outputs: command, resolved config, mass flags.
    std::string replay = o.command + '\n' + config_text + '\n' + o.sweep + '\n' + o.wkb_variant;
    if (o.mass) replay += '\n' + json(*o.mass).dump();
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(replay)));

    json argv = json::array();
    for (const std::string& a : args) argv.push_back(a);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json manifest = {{"tool", "sdsq"},
                     {"version", SDSQ_VERSION},
                     {"command", o.command},
                     {"argv", argv},
                     {"config_path", o.config_path.empty() ? json(nullptr) : json(o.config_path)},
                     {"resolved_config", "config.json"},
                     {"output_dir", output.dir().string()},
                     {"seeds", config.seeds},
                     {"input_hash", hash},
                     {"files", output.files()},
                     {"wall_clock_seconds", seconds}};
    if (o.mass) manifest["M"] = *o.mass;
    if (!o.sweep.empty()) manifest["sweep"] = o.sweep;
    {
      std::ofstream os(output.dir() / "manifest.json", std::ios::binary);
      if (!os) throw UsageError("cannot write manifest");
      os << manifest.dump(2) << '\n';
    }
    out << summary.dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace sdsq::cli
