#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fkdist/cli.hpp"

namespace fkdist::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fkdist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fkdist_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv(kOutputDirEnv);
  }
  void TearDown() override {
    ::unsetenv(kOutputDirEnv);
    fs::remove_all(dir_);
  }
  fs::path dir_;
};

TEST(FormatReal, SixPlaces) {
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_real(1.0), "1.000000");
  EXPECT_EQ(format_real(0.015625), "0.015625");
}

TEST(Parsing, RealsAndWords) {
  EXPECT_EQ(parse_real("golden", "--alpha"), kGolden);
  EXPECT_EQ(parse_real("0.25", "--x"), 0.25);
  EXPECT_EQ(parse_real_list("0.1,0.2", "--eps").size(), 2u);
  EXPECT_EQ(parse_count_list("1024,2048", "--schedule"), (std::vector<std::size_t>{1024, 2048}));
  EXPECT_EQ(parse_word("01a", "--w"), (Word{0, 1, 10}));
  try {
    parse_real("abc", "--alpha");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field, "--alpha");
  }
  EXPECT_THROW(parse_count_list("12,x", "--schedule"), ConfigError);
  EXPECT_THROW(parse_word("0-1", "--w"), ConfigError);
}

TEST(Parsing, Systems) {
  const SystemOverrides none;
  EXPECT_EQ(parse_system("thue-morse", none, "--system").kind(), SystemKind::substitution);
  EXPECT_EQ(parse_system("periodic:01", none, "--system").word(), (Word{0, 1}));
  const OrbitSource s = parse_system("sturmian:alpha=golden,beta=0.25", none, "--system");
  EXPECT_EQ(s.alpha(), kGolden);
  EXPECT_EQ(s.phase(), 0.25);
  const OrbitSource sub = parse_system("substitution:0>01,1>10", none, "--system");
  EXPECT_EQ(orbit_word(sub, 0, 8), orbit_word(OrbitSource::thue_morse(), 0, 8));
  SystemOverrides o;
  o.p = "0.25";
  o.seed = 9;
  const OrbitSource b = parse_system("bernoulli", o, "--system");
  EXPECT_EQ(b.probability(), 0.25);
  EXPECT_EQ(b.seed(), 9u);
  const OrbitSource shifted = parse_companion("shift:3", b, "--vs");
  EXPECT_EQ(shifted.offset(), 3u);
  EXPECT_THROW(parse_system("nonsense", none, "--system"), ConfigError);
  EXPECT_THROW(parse_system("substitution:0>10", none, "--system"), ConfigError);
  EXPECT_THROW(parse_system("sturmian:alpha=1.5", none, "--system"), ConfigError);
}

TEST_F(CliTest, FbarPrintsValue) {
  const Outcome r = invoke({"fbar", "--a", "aba", "--b", "bab"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out, "0.333333\n");
}

TEST_F(CliTest, DistAlternatingWordAgainstShift) {
  const Outcome r = invoke({"dist", "--system", "periodic:01", "--vs", "shift:1", "--n", "1024", "--grid-step", "0.015625"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> data;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#') data.push_back(line);
  }
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data[0], "pair_id,n,rho_fk,rho_b,rho_b_prime");
  std::istringstream cells(data[1]);
  std::vector<std::string> v;
  while (std::getline(cells, line, ',')) v.push_back(line);
  ASSERT_EQ(v.size(), 5u);
  EXPECT_LE(std::stod(v[2]), 0.03125);
  EXPECT_EQ(v[3], "1.000000");
}

TEST_F(CliTest, HeaderEchoesResolvedConfig) {
  const Outcome r = invoke({"katok", "--system", "sturmian", "--n", "64", "--samples", "10"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(r.out.rfind("# fkdist 1.0.0\n# rng splitmix64-counter/1\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("# command=katok"), std::string::npos);
  EXPECT_NE(r.out.find("# eps=0.100000"), std::string::npos);
  EXPECT_NE(r.out.find("# seed=0"), std::string::npos);
  EXPECT_NE(r.out.find("# note:"), std::string::npos);
}

TEST_F(CliTest, TlkProbeIsByteIdentical) {
  const std::vector<std::string> args = {"tlk-probe", "--system", "sturmian", "--alpha", "0.6180339887", "--schedule",
                                         "1024,2048,4096", "--pairs", "16", "--seed", "7"};
  auto first = args;
  first.insert(first.end(), {"--output", (dir_ / "a.csv").string()});
  auto second = args;
  second.insert(second.end(), {"--output", (dir_ / "b.csv").string()});
  ASSERT_EQ(invoke(first).code, kSuccess);
  ASSERT_EQ(invoke(second).code, kSuccess);
  const std::string a = slurp(dir_ / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "a.csv.tmp"));
}

TEST_F(CliTest, TlkProbePerPairRows) {
  const Outcome r = invoke({"tlk-probe", "--system", "thue-morse", "--schedule", "64,128", "--pairs", "3", "--per-pair"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  std::size_t rows = 0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) rows += (!line.empty() && line[0] != '#') ? 1 : 0;
  EXPECT_EQ(rows, 1u + 2u * 3u);
}

TEST_F(CliTest, TsvAndEnvironmentDirectory) {
  ::setenv(kOutputDirEnv, dir_.c_str(), 1);
  const Outcome r = invoke({"profile", "--system", "thue-morse", "--vs", "shift:1", "--n", "64", "--format", "tsv",
                            "--grid", "0.25,0.5"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string table = slurp(dir_ / "profile.tsv");
  EXPECT_NE(table.find("delta\tfbar\n"), std::string::npos);
  EXPECT_NE(table.find("0.250000\t"), std::string::npos);

  ASSERT_EQ(invoke({"fbar", "--a", "ab", "--b", "ba", "--output", "rel.csv"}).code, kSuccess);
  EXPECT_TRUE(fs::exists(dir_ / "rel.csv"));
}

TEST_F(CliTest, InvalidConfigNamesField) {
  const Outcome r = invoke({"dist", "--system", "periodic:01", "--vs", "shift:1", "--grid-step", "0"});
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_EQ(r.err.rfind("error: --grid-step:", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_EQ(invoke({"sensitivity", "--system", "bernoulli", "--ball", "2"}).code, kConfigError);
  EXPECT_EQ(invoke({"tlk-probe", "--system", "sturmian", "--schedule", "64,32"}).code, kConfigError);
  EXPECT_EQ(invoke({"fbar", "--a", "ab", "--b", "abc"}).code, kConfigError);
  EXPECT_EQ(invoke({"dist", "--system", "rotation", "--vs", "thue-morse"}).code, kConfigError);
  EXPECT_EQ(invoke({"bogus"}).code, kConfigError);
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
  const Outcome r = invoke({"fbar", "--a", "ab", "--b", "ba", "--output", (dir_ / "missing" / "x.csv").string()});
  EXPECT_EQ(r.code, kIoError);
  EXPECT_EQ(r.err.rfind("error: output:", 0), 0u) << r.err;
}

#ifdef FKDIST_TOOL_PATH
TEST_F(CliTest, BinaryRunsTwiceIdentically) {
  const fs::path a = dir_ / "bin_a.csv";
  const fs::path b = dir_ / "bin_b.csv";
  const std::string base = std::string("\"") + FKDIST_TOOL_PATH + "\" katok --system bernoulli --n 128 --samples 20 --seed 3 -o ";
  ASSERT_EQ(std::system((base + '"' + a.string() + '"').c_str()), 0);
  ASSERT_EQ(std::system((base + '"' + b.string() + '"').c_str()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const int status = std::system(("\"" + std::string(FKDIST_TOOL_PATH) + "\" dist --system nope 2>/dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), kConfigError);
}
#endif

}  // namespace
}  // namespace fkdist::cli
