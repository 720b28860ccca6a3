#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "phiconv/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "phiconv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = phiconv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("phiconv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << body;
    return p.string();
  }

  std::string grid(const std::string& name, auto f, int n = 33) {
    std::ostringstream s;
    s << "x,f\n";
    for (int k = 0; k < n; ++k) {
      const double x = -0.8 + 1.6 * k / (n - 1);
      s << phiconv::format_double(x) << ',' << phiconv::format_double(f(x)) << '\n';
    }
    return write(name, s.str());
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"gamma", "--phi", "power:1,0.5", "--bogus"}).code, 2);
  const Result r = run({"gamma"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, GammaPrintsFactor) {
  const Result r = run({"gamma", "--phi", "power:1,0.5", "--alpha", "inf"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gamma=1.414213562"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("factor=3.414213562"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExponentAboveOneIsInputError) {
  const Result r = run({"gamma", "--phi", "power:1,2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("subadditive"), std::string::npos) << r.err;
}

TEST_F(CliTest, TakagiTableIsDeterministicAndReparses) {
  const Result a = run({"takagi", "--phi", "power:1,0.5", "--u", "1", "--points", "1025", "--depth", "48"});
  const Result b = run({"takagi", "--phi", "power:1,0.5", "--u", "1", "--points", "1025", "--depth", "48"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  const auto table = phiconv::read_csv(in);
  EXPECT_EQ(table.rows.size(), 1025u);
  for (const auto& row : table.rows) EXPECT_LE(row[3], row[2]);
  std::ostringstream again;
  phiconv::write_csv(again, table);
  EXPECT_EQ(again.str(), a.out);
}

TEST_F(CliTest, OutputFile) {
  const std::string path = (dir_ / "t.csv").string();
  const Result r = run({"takagi", "--phi", "power:1,0", "--points", "9", "-o", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,T_lower,T_upper,tau,ratio_upper_bound");
}

TEST_F(CliTest, CheckFlatPasses) {
  const std::string flat = grid("flat.csv", [](double) { return 1.5; });
  const Result r = run({"check", "--input", flat, "--phi", "power:0,1", "--mode", "both"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"passed\""), std::string::npos);
}

TEST_F(CliTest, CheckViolationExitsOne) {
  const std::string cap = grid("cap.csv", [](double x) { return -x * x; });
  EXPECT_EQ(run({"check", "--input", cap, "--phi", "power:0.001,0.5", "--mode", "slopes"}).code, 1);
  EXPECT_EQ(run({"check", "--input", cap, "--phi", "power:0.001,0.5", "--mode", "equivalence"}).code, 1);
}

TEST_F(CliTest, CheckInputErrors) {
  const std::string bad = write("bad.csv", "x,f\n0,1\n1,oops\n2,3\n");
  EXPECT_EQ(run({"check", "--input", bad, "--phi", "power:1,0.5"}).code, 2);
  EXPECT_EQ(run({"check", "--input", (dir_ / "missing.csv").string(), "--phi", "power:1,0.5"}).code, 2);
  const std::string ragged = write("ragged.csv", "x,f\n0,1\n0.1,1\n0.3,1\n0.4,1\n");
  EXPECT_EQ(run({"check", "--input", ragged, "--phi", "power:1,0.5", "--mode", "mid"}).code, 2);
  EXPECT_EQ(run({"check", "--input", ragged, "--phi", "power:1,0.5", "--mode", "slopes"}).code, 0);
  EXPECT_EQ(run({"check", "--input", ragged, "--phi", "power:1,0.5", "--mode", "sideways"}).code, 2);
}

TEST_F(CliTest, FuzzIsConsistent) {
  const Result a = run({"check", "--fuzz", "25", "--seed", "3"});
  const Result b = run({"check", "--fuzz", "25", "--seed", "3"});
  EXPECT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, SupportTable) {
  const std::string sq = grid("sq.csv", [](double x) { return x * x; });
  const Result r = run({"support", "--phi", "power:0.1,0.5", "--input", sq});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto table = phiconv::read_csv(in);
  EXPECT_EQ(table.header, (std::vector<std::string>{"u", "a", "b", "recon_err"}));
  EXPECT_EQ(table.rows.size(), 33u);
}

TEST_F(CliTest, TransferFactors) {
  const Result c = run({"transfer", "--phi", "power:1,0"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("factor=2\n"), std::string::npos) << c.out;
  EXPECT_NE(c.out.find("effective_phi=power:2,0"), std::string::npos) << c.out;
  const Result lin = run({"transfer", "--phi", "power:1,1"});
  EXPECT_EQ(lin.code, 0);
  EXPECT_NE(lin.out.find("applicable=false"), std::string::npos) << lin.out;
  EXPECT_NE(lin.out.find("effective_phi=none"), std::string::npos) << lin.out;
}

TEST_F(CliTest, TransferCatalogPipeline) {
  const Result r = run({"transfer", "--phi", "power:0.1,0.5", "--catalog", "takagi_perturbed",
                        "--param", "eps=0.1", "--param", "p=0.5", "--sweep-lo", "0", "--sweep-hi", "1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("\"passed\""), std::string::npos);
  EXPECT_EQ(run({"transfer", "--phi", "power:0.1,0.5", "--catalog", "cubic"}).code, 2);
  EXPECT_EQ(run({"transfer", "--phi", "power:0.1,0.5", "--catalog", "quadratic", "--param", "a"}).code, 2);
}

TEST_F(CliTest, DerhamTable) {
  const Result r = run({"derham", "--phi", "power:1,0.5", "--resolution", "4", "--iterations", "40"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto table = phiconv::read_csv(in);
  EXPECT_EQ(table.header, (std::vector<std::string>{"t", "value", "T_lower", "T_upper"}));
  ASSERT_EQ(table.rows.size(), 16u);
  for (const auto& row : table.rows) {
    EXPECT_GE(row[1], row[2] - 1e-9);
    EXPECT_LE(row[1], row[3] + 1e-9);
  }
  EXPECT_EQ(run({"derham", "--phi", "power:1,0.5", "--resolution", "30"}).code, 2);
}
