#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcoh/cli/commands.hpp"
#include "qcoh/cli/figures.hpp"

namespace qcoh::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
  std::map<std::string, std::string> fields;

  double number(const std::string& key) const { return std::stod(fields.at(key)); }
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qcoh");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r{run(static_cast<int>(argv.size()), argv.data(), out, err), out.str(), err.str(), {}};
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos) r.fields[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return r;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("qcoh_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream s(line);
  for (std::string cell; std::getline(s, cell, ',');) out.push_back(cell);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("# ", 0) == 0) {
      csv.comments.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      std::vector<double> row;
      for (const std::string& cell : split(line)) row.push_back(std::stod(cell));
      csv.rows.push_back(row);
    }
  }
  return csv;
}

TEST(CliCoherenceTest, Vacuum) {
  const Result r = invoke({"coherence", "--state", "vacuum"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.number("C"), oracle::kSqrt2Pi, 1e-7);
  EXPECT_NEAR(r.number("C_analytic"), oracle::kSqrt2Pi, 1e-8);
}

TEST(CliCoherenceTest, ThermalAgreesWithClosedForm) {
  const Result r = invoke({"coherence", "--state", "thermal:nbar=1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.number("C"), oracle::kThermal1L1, 1e-7);
  EXPECT_LT(r.number("rel_diff"), 1e-4);
}

TEST(CliCoherenceTest, OnePhotonHasNoClosedFormLine) {
  const Result r = invoke({"coherence", "--state", "fock:n=1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.number("C"), oracle::kFock1L1, 1e-7);
  EXPECT_EQ(r.fields.count("C_analytic"), 0u);
}

TEST(CliErrorTest, BadStateSpecExitsTwoNamingField) {
  const Result r = invoke({"coherence", "--state", "gaussian:sigma=abc,mu=1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("sigma"), std::string::npos) << r.err;
}

TEST(CliErrorTest, UnknownFlagAndMissingSubcommand) {
  EXPECT_EQ(invoke({"coherence", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"coherence", "--t", "1.5"}).code, 2);
}

TEST(CliErrorTest, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).code, 0); }

TEST(CliConditionTest, ThermalBalanced) {
  const Result r = invoke({"condition", "--state", "thermal:nbar=1", "--ancilla", "vacuum", "--t",
                           "0.70710678118654752", "--x0p", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.number("Cp"), std::sqrt(std::numbers::pi), 1e-4 * std::sqrt(std::numbers::pi));
  EXPECT_NEAR(r.number("Cp_analytic"), std::sqrt(std::numbers::pi), 1e-8);
}

TEST(CliConditionTest, TransparentSplitter) {
  const Result r = invoke({"condition", "--state", "thermal:nbar=1", "--t", "1", "--x0p", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.number("Cp"), r.number("C"), 1e-7);
  const double peak = oracle::kSqrt2OverPi * std::exp(-2 * 0.3 * 0.3);
  EXPECT_NEAR(r.number("p"), peak, 1e-8);
}

TEST(CliConditionTest, OnePhotonAtOriginKeepsCoherence) {
  const Result r = invoke({"condition", "--state", "fock:n=1", "--x0p", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.number("ratio"), 1.0, 1e-7);
}

TEST(CliConditionTest, ErrorCodes) {
  EXPECT_EQ(invoke({"condition", "--state", "vacuum", "--x0p", "6"}).code, 4);
  EXPECT_EQ(invoke({"condition", "--state", "vacuum"}).code, 2);
}

TEST(CliConfigTest, FlagsOverrideFileOverridesDefaults) {
  TempDir dir;
  const std::string cfg = dir.file("run.cfg");
  std::ofstream(cfg) << "# defaults for this run\nstate=thermal:nbar=1\nx0p=0.5\nt=1\n";
  const Result from_file = invoke({"condition", "--config", cfg});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.fields.at("state").rfind("thermal", 0), 0u);
  EXPECT_NEAR(from_file.number("t"), 1.0, 0.0);
  const Result overridden = invoke({"condition", "--config", cfg, "--t", "0.5"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_NEAR(overridden.number("t"), 0.5, 0.0);
  EXPECT_NEAR(overridden.number("x0p"), 0.5, 0.0);
  const Result defaults = invoke({"condition", "--x0p", "0"});
  EXPECT_EQ(defaults.fields.at("state"), "fock:n=0");
}

TEST(CliConfigTest, UnknownKeyRejected) {
  TempDir dir;
  const std::string cfg = dir.file("bad.cfg");
  std::ofstream(cfg) << "colour=blue\n";
  EXPECT_EQ(invoke({"coherence", "--config", cfg}).code, 2);
}

TEST(CliFigureTest, UnknownFigure) { EXPECT_EQ(invoke({"figure", "fig1", "-o", "-"}).code, 2); }

TEST(CliFigureTest, Fig2VanishesAtUnitTransmission) {
  const Result r = invoke({"figure", "fig2", "-o", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.header, (std::vector<std::string>{"t", "dC_dx0.25", "dC_dx1"}));
  ASSERT_EQ(csv.rows.size(), 21u);
  EXPECT_DOUBLE_EQ(csv.rows.back()[0], 1.0);
  EXPECT_NEAR(csv.rows.back()[1], 0.0, 1e-8);
  EXPECT_NEAR(csv.rows.back()[2], 0.0, 1e-8);
  // C(dx = 0.25) < C0 = sqrt(2 pi) < C(dx = 1): the first input gains, the second loses.
  EXPECT_GT(csv.rows[10][1], 0.0);
  EXPECT_LT(csv.rows[10][2], 0.0);
}

TEST(CliFigureTest, Fig4StartsAtOne) {
  const Result r = invoke({"figure", "fig4", "-o", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.header, (std::vector<std::string>{"x0p", "ratio_n1", "ratio_n2", "ratio_n3"}));
  EXPECT_EQ(csv.rows.size(), 61u);
  EXPECT_DOUBLE_EQ(csv.rows.front()[0], 0.0);
  EXPECT_NEAR(csv.rows.front()[1], 1.0, 1e-7);
  EXPECT_FALSE(csv.comments.empty());
}

TEST(CliFigureTest, Fig5MirroredMassIsOne) {
  const Result r = invoke({"figure", "fig5", "-o", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.rows.size(), 201u);
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<double> p;
    for (const auto& row : csv.rows) p.push_back(row[k]);
    double s = p.front() + p.back();
    for (std::size_t i = 1; i + 1 < p.size(); ++i) s += (i % 2 ? 4.0 : 2.0) * p[i];
    EXPECT_NEAR(2.0 * s * 0.025 / 3.0, 1.0, 1e-4);
  }
}

TEST(CliFigureTest, Fig9EndpointsCoincide) {
  const Result r = invoke({"figure", "fig9", "-o", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.header, (std::vector<std::string>{"t", "S_avg", "S_red"}));
  EXPECT_NEAR(csv.rows.front()[1], csv.rows.front()[2], 1e-6);
  EXPECT_NEAR(csv.rows.back()[1], csv.rows.back()[2], 1e-6);
  EXPECT_NEAR(csv.rows.front()[2], oracle::kEntropyPsi0, 1e-7);
  EXPECT_NEAR(csv.rows.back()[2], oracle::kEntropyPsi1, 1e-7);
}

TEST(CliFigureTest, Fig3IsDeterministicWithLfEndings) {
  TempDir dir;
  const std::string a = dir.file("a.csv");
  const std::string b = dir.file("b.csv");
  ASSERT_EQ(invoke({"figure", "fig3", "--output", a}).code, 0);
  ASSERT_EQ(invoke({"figure", "fig3", "--output", b}).code, 0);
  const std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const Csv csv = parse_csv(text);
  ASSERT_EQ(csv.header, (std::vector<std::string>{"n", "C"}));
  ASSERT_EQ(csv.rows.size(), 11u);
  EXPECT_NEAR(csv.rows[0][1], oracle::kSqrt2Pi, 1e-7);
  EXPECT_NEAR(csv.rows[1][1], oracle::kFock1L1, 1e-7);
  for (std::size_t n = 1; n < csv.rows.size(); ++n) EXPECT_GT(csv.rows[n][1], csv.rows[n - 1][1]);
}

TEST(CliFigureTest, FailedSweepWritesNothing) {
  TempDir dir;
  const std::string path = dir.file("fig7.csv");
  const Result r = invoke({"figure", "fig7", "--sweep-nodes", "3", "--output", path});
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_FALSE(fs::exists(path));
}

TEST(CliFormatTest, NineSignificantDigits) {
  EXPECT_EQ(format_number(2.506628274631000502), "2.50662827");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-12), "1e-12");
  Table t{{"note"}, {"a", "b"}, {{1.0, 0.5}}};
  EXPECT_EQ(to_csv(t), "# note\na,b\n1,0.5\n");
}

}  // namespace
}  // namespace qcoh::cli
