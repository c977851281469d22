#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sdsq/basis.hpp"
#include "sdsq/cli.hpp"
#include "sdsq/model.hpp"
#include "sdsq/pauli.hpp"

using namespace sdsq;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sdsq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  json summary() const { return json::parse(out_.str()); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST(CliConfig, DefaultsAndOverrides) {
  const cli::RunConfig d = cli::parse_config("{}");
  EXPECT_EQ(d.model.qubits, 4u);
  EXPECT_DOUBLE_EQ(d.model.lambda, 0.01);
  EXPECT_EQ(d.seeds.size(), 10u);
  EXPECT_EQ(d.ansatz.parameter_count(), 16u);
  EXPECT_DOUBLE_EQ(cli::parse_config(R"({"model":{"qubits":8}})").model.lambda, 0.005);
  const cli::RunConfig c = cli::parse_config(
      R"({"model":{"lambda":0.02,"qubits":6,"basis":"ladder"},"ansatz":{"depth":2,"entanglement":"linear"},
          "optimizer":{"max_iterations":50,"tolerance":1e-6,"memory_pairs":5,"bounds":[-3,3]},
          "vqe":{"seeds":[7,8]},"pauli":{"threshold":1e-9},"spectrum":{"method":"project","tol":1e-5}})");
  EXPECT_EQ(c.model.basis, BasisKind::Ladder);
  EXPECT_EQ(c.ansatz.qubits, 6u);
  EXPECT_EQ(c.ansatz.entanglement, Entanglement::linear);
  EXPECT_EQ(c.optimizer_settings().lower.front(), -3.0);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{7, 8}));
  EXPECT_EQ(c.method, ConstraintMethod::project);
  EXPECT_DOUBLE_EQ(c.constraint_tol(), 1e-5);
  // The serialized form parses back to the same settings.
  const cli::RunConfig back = cli::parse_config(cli::config_to_json(c));
  EXPECT_EQ(cli::config_to_json(back), cli::config_to_json(c));
}

TEST(CliConfig, RejectsTyposAndBadValues) {
  EXPECT_THROW(cli::parse_config(R"({"modle":{}})"), cli::UsageError);
  EXPECT_THROW(cli::parse_config(R"({"model":{"lamda":0.1}})"), cli::UsageError);
  EXPECT_THROW(cli::parse_config(R"({"model":{"qubits":5}})"), cli::UsageError);
  EXPECT_THROW(cli::parse_config(R"({"model":{"basis":"spline"}})"), cli::UsageError);
  EXPECT_THROW(cli::parse_config(R"({"model":{"lambda":"big"}})"), cli::UsageError);
  EXPECT_THROW(cli::parse_config(R"({"vqe":{"seeds":[]}})"), cli::UsageError);
  EXPECT_THROW(cli::parse_config(R"({"optimizer":{"bounds":[1,2]}})"), cli::UsageError);
  EXPECT_THROW(cli::parse_config("{not json"), cli::UsageError);
  EXPECT_THROW(cli::load_config("/nonexistent/config.json"), cli::UsageError);
}

TEST(CliConfig, SweepParsing) {
  const std::vector<double> s = cli::parse_sweep("0:3.3333:100");
  ASSERT_EQ(s.size(), 100u);
  EXPECT_EQ(s.front(), 0.0);
  EXPECT_EQ(s.back(), 3.3333);
  EXPECT_EQ(cli::parse_sweep("0.5:1:1"), std::vector<double>{0.5});
  EXPECT_THROW(cli::parse_sweep("1:0:5"), cli::UsageError);
  EXPECT_THROW(cli::parse_sweep("a:b:c"), cli::UsageError);
  EXPECT_THROW(cli::parse_sweep("1:2"), cli::UsageError);
}

TEST(CliConfig, Fnv1aReferenceValues) {
  EXPECT_EQ(cli::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(cli::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST_F(CliTest, DecomposeCounts) {
  ASSERT_EQ(run({"decompose", "--out", path("d")}), cli::kExitOk) << err_.str();
  EXPECT_EQ(summary()["term_count"], 57);
  ASSERT_EQ(run({"decompose", "--qubits", "6", "--out", path("d6")}), cli::kExitOk);
  EXPECT_EQ(summary()["term_count"], 745);
  EXPECT_TRUE(fs::exists(dir_ / "d" / "pauli_terms.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "d" / "manifest.json"));
}

TEST_F(CliTest, DecomposeTwoQubitsMatchesDenseScan) {
  ASSERT_EQ(run({"decompose", "--qubits", "2", "--lambda", "0", "--out", path("d")}), cli::kExitOk);
  // Brute-force scan over the 16 two-qubit strings.
  const HermitianOperator m = build_operators({0.0, 2, BasisKind::Oscillator}).mass_4M;
  std::size_t count = 0;
  const Complex i(0.0, 1.0);
  const ComplexMatrix paulis[4] = {ComplexMatrix::identity(2), ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}),
                                   ComplexMatrix(2, 2, {0.0, -i, i, 0.0}),
                                   ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0})};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const ComplexMatrix p = kron(paulis[a], paulis[b]) * m.matrix();
      Complex tr{};
      for (std::size_t k = 0; k < 4; ++k) tr += p(k, k);
      if (std::abs(tr) / 4.0 > 1e-12) ++count;
    }
  EXPECT_EQ(summary()["term_count"], count);
}

TEST_F(CliTest, VqeDefaultsAndReplay) {
  ASSERT_EQ(run({"vqe", "--out", path("a")}), cli::kExitOk) << err_.str();
  const json s = summary();
  EXPECT_LE(s["gap"].get<double>(), 1e-6);
  EXPECT_EQ(s["pauli_terms"], 57);
  ASSERT_EQ(run({"vqe", "--out", path("b")}), cli::kExitOk);
  EXPECT_EQ(slurp(dir_ / "a" / "convergence.csv"), slurp(dir_ / "b" / "convergence.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "summary.json"), slurp(dir_ / "b" / "summary.json"));
  const json ma = json::parse(slurp(dir_ / "a" / "manifest.json"));
  const json mb = json::parse(slurp(dir_ / "b" / "manifest.json"));
  EXPECT_EQ(ma["input_hash"], mb["input_hash"]);
  // Replaying from the resolved config reproduces the outputs.
  ASSERT_EQ(run({"vqe", "--config", path("a/config.json"), "--out", path("c")}), cli::kExitOk);
  EXPECT_EQ(slurp(dir_ / "a" / "convergence.csv"), slurp(dir_ / "c" / "convergence.csv"));
}

TEST_F(CliTest, SeedFlagChangesSeeds) {
  write("cfg.json", R"({"ansatz":{"depth":1},"vqe":{"seeds":[1,2]}})");
  ASSERT_EQ(run({"vqe", "--config", path("cfg.json"), "--seed", "40", "--out", path("v")}), cli::kExitOk);
  EXPECT_EQ(summary()["seeds"], json::array({40, 41}));
}

TEST_F(CliTest, SpectrumEigenvalues) {
  ASSERT_EQ(run({"spectrum", "--out", path("s")}), cli::kExitOk) << err_.str();
  const std::vector<double> got = summary()["eigenvalues"];
  const std::vector<double> want{0.0, 0.935639, 3.29768, 7.67034};
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-3);
  EXPECT_TRUE(fs::exists(dir_ / "s" / "eigenvectors.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "s" / "spectrum.json"));
}

TEST_F(CliTest, ThermoSingleAndSweep) {
  ASSERT_EQ(run({"thermo", "--M", "0.5", "--lambda", "0.01", "--out", path("t")}), cli::kExitOk);
  EXPECT_NEAR(summary()["point"]["r_bh"].get<double>(), 1.00337, 1e-3);
  ASSERT_EQ(run({"thermo", "--sweep", "0:3.3333:100", "--lambda", "0.01", "--out", path("s")}),
            cli::kExitOk);
  std::istringstream csv(slurp(dir_ / "s" / "thermo.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "M,r_bh,r_ch,S_bh,S_ch,S_tot,beta_bh,beta_ch,T_bh,T_ch");
  std::vector<double> r_ch;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    r_ch.push_back(std::stod(cell));
  }
  ASSERT_EQ(r_ch.size(), 100u);
  for (std::size_t k = 1; k < r_ch.size(); ++k) EXPECT_LT(r_ch[k], r_ch[k - 1]);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"vqe", "--config", path("missing.json")}), cli::kExitUsage);
  EXPECT_EQ(run({}), cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}), cli::kExitUsage);
  EXPECT_EQ(run({"decompose", "--qubits", "x"}), cli::kExitUsage);
  EXPECT_EQ(run({"thermo", "--M", "50", "--out", path("t")}), cli::kExitUsage);
  EXPECT_EQ(run({"thermo", "--sweep", "2:1:3", "--out", path("t")}), cli::kExitUsage);
  write("typo.json", R"({"spectrum":{"metod":"filter"}})");
  EXPECT_EQ(run({"spectrum", "--config", path("typo.json"), "--out", path("s")}), cli::kExitUsage);
  EXPECT_EQ(run({"decompose", "--help"}), cli::kExitOk);
  EXPECT_TRUE(out_.str().empty());
}

TEST_F(CliTest, ManifestListsOutputs) {
  ASSERT_EQ(run({"grids", "--out", path("g")}), cli::kExitOk) << err_.str();
  const json m = json::parse(slurp(dir_ / "g" / "manifest.json"));
  EXPECT_EQ(m["command"], "grids");
  for (const auto& f : m["files"]) EXPECT_TRUE(fs::exists(dir_ / "g" / f.get<std::string>())) << f;
  std::size_t manifests = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "g")) manifests += e.path().filename() == "manifest.json";
  EXPECT_EQ(manifests, 1u);
}

TEST_F(CliTest, WavefnNorms) {
  ASSERT_EQ(run({"wavefn", "--out", path("w")}), cli::kExitOk) << err_.str();
  const json s = summary();
  ASSERT_EQ(s["states"].size(), 4u);
  for (const json& st : s["states"]) {
    EXPECT_NEAR(st["grid_norm"].get<double>(), st["coefficient_norm"].get<double>(), 1e-3);
  }
  EXPECT_EQ(s["wkb"]["samples"], 41 * 200);
}
