#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sdsq/cli.hpp"

namespace sdsq::cli {

namespace {

using nlohmann::json;

void only_keys(const json& obj, std::string_view where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw UsageError("config: '" + std::string(where) + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw UsageError("config: unknown key '" + key + "' in '" + std::string(where) + "'");
    }
  }
}

double number(const json& v, std::string_view key) {
  if (!v.is_number()) throw UsageError("config: '" + std::string(key) + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw UsageError("config: '" + std::string(key) + "' must be finite");
  return x;
}

std::uint64_t natural(const json& v, std::string_view key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw UsageError("config: '" + std::string(key) + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string text(const json& v, std::string_view key) {
  if (!v.is_string()) throw UsageError("config: '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

// Library parse errors carry the bad name; rethrow them as usage errors.
template <class F>
auto translate(F f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

}  // namespace

OptimizerSettings RunConfig::optimizer_settings() const {
  OptimizerSettings s = OptimizerSettings::boxed(ansatz.parameter_count(), bound_lo, bound_hi);
  s.max_iterations = max_iterations;
  s.gradient_tolerance = tolerance;
  s.memory_pairs = memory_pairs;
  return s;
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  only_keys(doc, "top level", {"model", "ansatz", "optimizer", "vqe", "pauli", "spectrum"});

  RunConfig c;
  if (doc.contains("model")) {
    const json& m = doc["model"];
    only_keys(m, "model", {"lambda", "qubits", "basis"});
    if (m.contains("qubits")) c.model.qubits = static_cast<unsigned>(natural(m["qubits"], "model.qubits"));
    if (m.contains("lambda")) {
      c.model.lambda = number(m["lambda"], "model.lambda");
      c.lambda_given = true;
    }
    if (m.contains("basis")) {
      const std::string b = text(m["basis"], "model.basis");
      c.model.basis = translate([&] { return parse_basis(b); });
    }
  }
  if (!c.lambda_given) c.model.lambda = ModelConfig::default_lambda(c.model.qubits);
  translate([&] { c.model.validate(); return 0; });

  c.ansatz.qubits = c.model.qubits;
  if (doc.contains("ansatz")) {
    const json& a = doc["ansatz"];
    only_keys(a, "ansatz", {"depth", "entanglement"});
    if (a.contains("depth")) c.ansatz.depth = static_cast<unsigned>(natural(a["depth"], "ansatz.depth"));
    if (a.contains("entanglement")) {
      const std::string e = text(a["entanglement"], "ansatz.entanglement");
      c.ansatz.entanglement = translate([&] { return parse_entanglement(e); });
    }
  }

  if (doc.contains("optimizer")) {
    const json& o = doc["optimizer"];
    only_keys(o, "optimizer", {"max_iterations", "tolerance", "memory_pairs", "bounds"});
    if (o.contains("max_iterations"))
      c.max_iterations = static_cast<unsigned>(natural(o["max_iterations"], "optimizer.max_iterations"));
    if (o.contains("tolerance")) c.tolerance = number(o["tolerance"], "optimizer.tolerance");
    if (o.contains("memory_pairs"))
      c.memory_pairs = static_cast<unsigned>(natural(o["memory_pairs"], "optimizer.memory_pairs"));
    if (o.contains("bounds")) {
      const json& b = o["bounds"];
      if (!b.is_array() || b.size() != 2) throw UsageError("config: 'optimizer.bounds' must be [lo, hi]");
      c.bound_lo = number(b[0], "optimizer.bounds[0]");
      c.bound_hi = number(b[1], "optimizer.bounds[1]");
    }
  }
  if (!(c.tolerance > 0.0)) throw UsageError("config: 'optimizer.tolerance' must be positive");
  if (c.memory_pairs == 0) throw UsageError("config: 'optimizer.memory_pairs' must be at least 1");
  if (!(c.bound_lo < 0.0 && 0.0 < c.bound_hi)) {
    throw UsageError("config: 'optimizer.bounds' must satisfy lo < 0 < hi");
  }

  if (doc.contains("vqe")) {
    const json& v = doc["vqe"];
    only_keys(v, "vqe", {"seeds"});
    if (v.contains("seeds")) {
      if (!v["seeds"].is_array() || v["seeds"].empty())
        throw UsageError("config: 'vqe.seeds' must be a non-empty array");
      c.seeds.clear();
      for (const json& s : v["seeds"]) c.seeds.push_back(natural(s, "vqe.seeds[]"));
    }
  }

  if (doc.contains("pauli")) {
    const json& p = doc["pauli"];
    only_keys(p, "pauli", {"threshold"});
    if (p.contains("threshold")) c.threshold = number(p["threshold"], "pauli.threshold");
  }
  if (c.threshold < 0.0) throw UsageError("config: 'pauli.threshold' must be non-negative");

  if (doc.contains("spectrum")) {
    const json& s = doc["spectrum"];
    only_keys(s, "spectrum", {"method", "tol"});
    if (s.contains("method")) {
      const std::string m = text(s["method"], "spectrum.method");
      c.method = translate([&] { return parse_constraint_method(m); });
    }
    if (s.contains("tol")) {
      c.spectrum_tol = number(s["tol"], "spectrum.tol");
      if (!(*c.spectrum_tol > 0.0)) throw UsageError("config: 'spectrum.tol' must be positive");
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const RunConfig& c) {
  json doc;
  doc["model"] = {{"lambda", c.model.lambda},
                  {"qubits", c.model.qubits},
                  {"basis", std::string(to_string(c.model.basis))}};
  doc["ansatz"] = {{"depth", c.ansatz.depth},
                   {"entanglement", std::string(to_string(c.ansatz.entanglement))}};
  doc["optimizer"] = {{"max_iterations", c.max_iterations},
                      {"tolerance", c.tolerance},
                      {"memory_pairs", c.memory_pairs},
                      {"bounds", {c.bound_lo, c.bound_hi}}};
  doc["vqe"] = {{"seeds", c.seeds}};
  doc["pauli"] = {{"threshold", c.threshold}};
  doc["spectrum"] = {{"method", std::string(to_string(c.method))}, {"tol", c.constraint_tol()}};
  return doc.dump(2);
}

std::vector<double> parse_sweep(std::string_view spec) {
  const std::size_t first = spec.find(':');
  const std::size_t second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos) throw UsageError("--sweep expects a:b:n, got '" + std::string(spec) + "'");
  double a = 0, b = 0;
  long long n = 0;
  try {
    std::size_t used = 0;
    const std::string sa(spec.substr(0, first)), sb(spec.substr(first + 1, second - first - 1)),
        sn(spec.substr(second + 1));
    a = std::stod(sa, &used);
    if (used != sa.size()) throw std::invalid_argument(sa);
    b = std::stod(sb, &used);
    if (used != sb.size()) throw std::invalid_argument(sb);
    n = std::stoll(sn, &used);
    if (used != sn.size()) throw std::invalid_argument(sn);
  } catch (const std::logic_error&) {
    throw UsageError("--sweep expects numbers a:b:n, got '" + std::string(spec) + "'");
  }
  if (n < 1 || !std::isfinite(a) || !std::isfinite(b) || (n > 1 && !(a < b))) {
    throw UsageError("--sweep needs n >= 1 and a < b when n > 1");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 1) out.back() = b;
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace sdsq::cli
