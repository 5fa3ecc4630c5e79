#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sclab/scenario.hpp"

using namespace sclab;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(SCLAB_CLI_PATH) + " " + args + " 2>&1";
  CliResult e{0, {}};
  FILE* p = popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) e.out.append(buf, k);
  int st = pclose(p);
  e.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return e;
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("sclab_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmall = R"(version: 1
seed: 3
grid_n: 512
scenarios:
  - name: s
    gallery: round_sphere
    audits: [gauss_bonnet, spectral, {name: mt_closed, count: 10}]
)";

}  // namespace

TEST(Config, ParsesReferenceSuite) {
  auto c = load_config(fs::path(SCLAB_CONFIG_DIR) / "reference_suite.yaml");
  EXPECT_EQ(c.version, 1);
  EXPECT_GE(c.scenarios.size(), 5u);
  EXPECT_EQ(c.sweeps.size(), 2u);
}

TEST(Config, DefaultsAndOverrides) {
  auto c = parse_config(kSmall);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.grid_n, 512u);
  ASSERT_EQ(c.scenarios[0].audits.size(), 3u);
  EXPECT_DOUBLE_EQ(c.scenarios[0].audits[2].params.at("count"), 10.0);
  EXPECT_DOUBLE_EQ(c.scenarios[0].beta, 1.0);
}

TEST(Config, ErrorsCarryLineNumbers) {
  const std::string bad_audit = "scenarios:\n  - name: a\n    gallery: round_sphere\n    audits:\n      - bogus\n";
  try {
    parse_config(bad_audit);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_NE(std::string(e.what()).find("unknown audit 'bogus'"), std::string::npos);
  }
  const std::string bad_param = "scenarios:\n  - name: a\n    gallery: spheroid\n    params: {eps: 0.1}\n    audits: [spectral]\n";
  try {
    parse_config(bad_param);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(parse_config("version: 2\nscenarios: []\n"), ConfigError);
  EXPECT_THROW(parse_config("scenarios:\n  - name: a\n    gallery: torus\n    audits: [spectral]\n"), ConfigError);
  EXPECT_THROW(parse_config("sweeps:\n  - {name: w, kind: scaling, values: [100, 1000]}\n"), ConfigError);
  EXPECT_THROW(parse_config("scenarios: [\n"), ConfigError);
}

TEST(Run, DeterministicCsv) {
  auto c = parse_config(kSmall);
  auto a = run_scenario(c.scenarios[0], c.grid_n, c.seed);
  auto b = run_scenario(c.scenarios[0], c.grid_n, c.seed);
  EXPECT_EQ(records_csv(a), records_csv(b));
  EXPECT_FALSE(a.failed());
  EXPECT_EQ(records_csv(a).rfind("# sclab audit csv v1\n", 0), 0u);
  auto j = nlohmann::json::parse(report_json(a));
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Run, SweepWritesFitRow) {
  auto d = scratch("sweep");
  write(d / "c.yaml", "sweeps:\n  - {name: w, kind: scaling, beta: 0.4, values: [100, 300, 1000, 3000], grid_n: 512}\n");
  auto e = run_cli("sweep --config " + (d / "c.yaml").string() + " --out-dir " + d.string());
  EXPECT_TRUE(e.code == 0 || e.code == 1) << e.out;
  std::istringstream data(slurp(d / "w_data.csv"));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(data, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u);  // version, header, 4 rows, fit
  EXPECT_EQ(lines.back().rfind("fit,", 0), 0u);
  EXPECT_TRUE(fs::exists(d / "w.json"));
}

TEST(Cli, UnknownAuditExitsTwo) {
  auto d = scratch("bad");
  write(d / "c.yaml", "scenarios:\n  - name: a\n    gallery: round_sphere\n    audits: [bogus]\n");
  auto e = run_cli("run --config " + (d / "c.yaml").string() + " --out-dir " + d.string());
  EXPECT_EQ(e.code, 2);
  EXPECT_NE(e.out.find("line 4"), std::string::npos) << e.out;
  EXPECT_EQ(run_cli("run").code, 2);
  EXPECT_EQ(run_cli("run --config /nonexistent.yaml").code, 2);
}

TEST(Cli, RunWritesIdenticalReports) {
  auto d = scratch("run");
  write(d / "c.yaml", kSmall);
  auto e1 = run_cli("run --config " + (d / "c.yaml").string() + " --out-dir " + d.string());
  ASSERT_EQ(e1.code, 0) << e1.out;
  auto first = slurp(d / "s.csv");
  auto e2 = run_cli("run --config " + (d / "c.yaml").string() + " --out-dir " + d.string() + " --jobs 2");
  ASSERT_EQ(e2.code, 0);
  EXPECT_EQ(slurp(d / "s.csv"), first);
}

TEST(Cli, ListGalleryJson) {
  auto e = run_cli("list-gallery --json");
  ASSERT_EQ(e.code, 0);
  auto j = nlohmann::json::parse(e.out);
  ASSERT_TRUE(j.is_array());
  bool saw_spheroid = false;
  for (const auto& g : j) {
    if (g["name"] == "spheroid") {
      saw_spheroid = true;
      EXPECT_EQ(g["topology"], "sphere");
      EXPECT_TRUE(g["params"].contains("epsilon"));
    }
  }
  EXPECT_TRUE(saw_spheroid);
  auto h = nlohmann::json::parse(run_cli("list-gallery --json --topology half_open").out);
  ASSERT_FALSE(h.empty());
  for (const auto& g : h) EXPECT_EQ(g["topology"], "half_open");
  EXPECT_EQ(run_cli("list-gallery --topology torus").code, 2);
}
