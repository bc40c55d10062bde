// Drives the cbias executable as a subprocess and checks output and exit codes.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI with `args`; stderr is discarded unless `merge_stderr`.
Result cli(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" CBIAS_CLI "\" " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::size_t line_count(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string l; std::getline(in, l);) ++n;
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cbias_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kSmallAudit = "audit --quiet --dim 5 --budget 400 --runs 2 --seed 3 --methods de,gwo --functions F01,F08";

}  // namespace

TEST_F(Cli, ListFunctions) {
  const auto r = cli("list functions");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(line_count(r.out), 14u);
  EXPECT_EQ(r.out.rfind("id,name,modality,separability,low,high,f_star,x_star,f_at_zero\n", 0), 0u);
}

TEST_F(Cli, ListMethods) {
  for (const char* args : {"list methods", "list --methods"}) {
    const auto r = cli(args);
    EXPECT_EQ(r.status, 0) << args;
    EXPECT_EQ(line_count(r.out), 8u) << args;
    EXPECT_NE(r.out.find("DE,50,"), std::string::npos);
  }
}

TEST_F(Cli, ListBogusIsUsageError) { EXPECT_EQ(cli("list bogus").status, 2); }

TEST_F(Cli, Evaluate) {
  EXPECT_EQ(cli("evaluate F05 zero --dim 30").out, "2.90E+01\n");
  EXPECT_EQ(cli("evaluate F01 xstar").out, "0.00E+00\n");
  EXPECT_EQ(cli("evaluate F01 zero --shift-fraction 0.1").out, "1.20E+04\n");
  EXPECT_EQ(cli("evaluate F01 1,2 --dim 2").out, "5.00E+00\n");
  EXPECT_EQ(cli("evaluate F99 zero").status, 2);
  EXPECT_EQ(cli("evaluate F01 1,2,3 --dim 2").status, 2);
  EXPECT_EQ(cli("evaluate F01 abc").status, 2);
}

TEST_F(Cli, AuditRejectsBadConfig) {
  EXPECT_EQ(cli("audit --runs 0").status, 2);
  EXPECT_EQ(cli("audit --bogus-flag 1").status, 2);
  EXPECT_EQ(cli("audit --methods lshade").status, 2);
  EXPECT_EQ(cli("audit --preset huge").status, 2);
  EXPECT_EQ(cli("audit --threshold 0.5").status, 2);
}

TEST_F(Cli, AuditSummaryAndLog) {
  const auto r = cli("audit --dim 5 --budget 400 --runs 2 --seed 3 --methods de,gwo --functions F01,F08", true);
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("[1/8]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("method,geomean,verdict"), std::string::npos) << r.out;
}

TEST_F(Cli, AuditIsByteIdenticalAcrossRunsAndWorkers) {
  ASSERT_EQ(cli(kSmallAudit + " --workers 1 --out " + path("a.json")).status, 0);
  ASSERT_EQ(cli(kSmallAudit + " --workers 3 --out " + path("b.json")).status, 0);
  const auto a = slurp(path("a.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b.json")));
}

TEST_F(Cli, ConfigFileEnvAndFlagPrecedence) {
  {
    std::ofstream cfg(path("audit.cfg"));
    cfg << "# small audit\nbudget = 300\nruns = 3\nmethods = de\nfunctions = F01\noptim.de.F = 0.7\n"
           "optim.de.population = 20\n";
  }
  ASSERT_EQ(cli("audit --quiet --dim 4 --config " + path("audit.cfg") + " --runs 2 --out " + path("r.json")).status, 0);
  const auto json = slurp(path("r.json"));
  EXPECT_NE(json.find("\"budget\": 300"), std::string::npos) << json;
  EXPECT_NE(json.find("\"runs\": 2"), std::string::npos) << json;
  EXPECT_NE(json.find("\"F\": 0.7"), std::string::npos) << json;
  EXPECT_NE(json.find("\"population\": 20"), std::string::npos) << json;

  ASSERT_EQ(cli("audit --quiet --dim 4 --config " + path("audit.cfg") + " --out " + path("e.json"), false,
                "CBIAS_BUDGET=250")
                .status,
            0);
  EXPECT_NE(slurp(path("e.json")).find("\"budget\": 250"), std::string::npos);

  {
    std::ofstream cfg(path("bad.cfg"));
    cfg << "budgte = 300\n";
  }
  EXPECT_EQ(cli("audit --config " + path("bad.cfg")).status, 2);
}

TEST_F(Cli, ReportFromResults) {
  ASSERT_EQ(cli(kSmallAudit + " --out " + path("r.json")).status, 0);
  const auto md = cli("report --in " + path("r.json") + " --format markdown");
  EXPECT_EQ(md.status, 0);
  EXPECT_NE(md.out.find("| DE | geomean |"), std::string::npos) << md.out;
  EXPECT_NE(md.out.find("| GWO | F08 |"), std::string::npos) << md.out;
  const auto csv = cli("report --in " + path("r.json") + " --format csv");
  EXPECT_EQ(line_count(csv.out), 1u + 2u * 3u);
}

TEST_F(Cli, ReportRegistrySvgAndHistogram) {
  const std::string registry = std::string(CBIAS_DATA_DIR) + "/table3_methods.csv";
  const auto r = cli("report --registry " + registry + " --svg " + path("out.svg"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(slurp(path("out.svg")).find("</svg>"), std::string::npos);

  const auto h = cli("report --registry " + registry + " --histogram");
  EXPECT_EQ(h.status, 0);
  EXPECT_EQ(h.out.rfind("year,biased,unbiased\n", 0), 0u);
  EXPECT_NE(h.out.find("\n1987,"), std::string::npos);
}

TEST_F(Cli, ReportErrors) {
  EXPECT_EQ(cli("report --in " + path("missing.json")).status, 1);
  {
    std::ofstream bad(path("bad.json"));
    bad << "{\"config\": [1, 2,";
  }
  const auto r = cli("report --in " + path("bad.json"), true);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("byte"), std::string::npos) << r.out;
  EXPECT_EQ(cli("report --in " + path("bad.json") + " --format latex").status, 2);
  EXPECT_EQ(cli("report --svg " + path("x.svg")).status, 2);
}

TEST_F(Cli, HelpExitsCleanly) {
  const auto r = cli("--help");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("audit"), std::string::npos);
}
