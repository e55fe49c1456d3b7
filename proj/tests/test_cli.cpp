#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HUP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream is(csv);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::string footer(const std::string& csv, const std::string& key) {
  const std::string tag = "# " + key + ": ";
  auto p = csv.find(tag);
  if (p == std::string::npos) return "";
  auto e = csv.find('\n', p);
  return csv.substr(p + tag.size(), e - p - tag.size());
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify bogus").code, 2);
  EXPECT_EQ(run("wandering --family sigma --gamma 1").code, 2);
  EXPECT_EQ(run("wandering --family tau --beta 0").code, 2);
  EXPECT_EQ(run("iterate --kind Nope").code, 2);
  EXPECT_EQ(run("--no-such-flag").code, 2);
}

TEST(Cli, VerifyList) {
  auto r = run("verify --list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("prop-contract1\t"), std::string::npos);
}

TEST(Cli, SpiralTable) {
  auto r = run("spiral");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("x,ci,si,abs_spiral\n", 0), 0u);
  EXPECT_EQ(data_rows(r.out).size(), 100u);
  EXPECT_GT(std::stod(footer(r.out, "min_abs_spiral")), 1e-3);
  EXPECT_EQ(footer(r.out, "tool"), "hup 1.0.0");
  EXPECT_EQ(footer(r.out, "command"), "spiral");
  EXPECT_EQ(footer(r.out, "seed"), "20240611");
}

TEST(Cli, IterateZeroSteps) {
  auto r = run("iterate --kind SubT --beta 0.5 --f const1 --n-max 0");
  ASSERT_EQ(r.code, 0);
  auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].rfind("0,2.0000000000000", 0), 0u);
  // Without --timing the elapsed column is empty.
  EXPECT_EQ(rows[0].back(), ',');
}

TEST(Cli, IterateDecays) {
  auto r = run("iterate --kind SubT --beta 0.5 --f kappa1 --n-max 3 --sub -0.9,0.9 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 4u);
  for (int n = 1; n <= 3; ++n) EXPECT_LE(j["rows"][n][2].get<double>(), 2 * std::pow(0.5, n) / 0.5 + 1e-6);
}

TEST(Cli, LatticeOrigin) {
  auto r = run("lattice --m-max 0 --n-max 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(data_rows(r.out).size(), 1u);
  EXPECT_LT(std::stod(footer(r.out, "max_residual")), 1e-8);
}

TEST(Cli, LatticePoissonWitness) {
  auto r = run("lattice --density poisson --m-max 2 --n-max 2 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 9u);
  EXPECT_GE(std::stod(j["summary"]["max_residual"].get<std::string>()), 1e-2);
  EXPECT_EQ(j["provenance"]["command"], "lattice");
}

TEST(Cli, WanderingTable) {
  auto r = run("wandering --family tau --beta 0.5 --n-max 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("N,measure,bound,violation,duality,unresolved\n", 0), 0u);
  EXPECT_EQ(data_rows(r.out).size(), 3u);
  EXPECT_EQ(footer(r.out, "violations"), "0");
}

TEST(Cli, VerifyWritesReports) {
  const auto dir = std::filesystem::temp_directory_path() / "hup_cli_test_reports";
  std::filesystem::remove_all(dir);
  auto r = run("verify eq-Hilbert02 --out " + dir.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(dir / "eq-Hilbert02.json");
  ASSERT_TRUE(in.good());
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["campaign_id"], "eq-Hilbert02");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_FALSE(j.contains("wall_time_s"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  EXPECT_EQ(run("verify eq-Hilbert02 --set eps=0.25 --out " + dir.string()).code, 0);
  EXPECT_EQ(run("verify eq-Hilbert02 --set nope=1 --out " + dir.string()).code, 2);
  std::filesystem::remove_all(dir);
}
