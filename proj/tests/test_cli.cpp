#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "domideal.hpp"

using namespace domideal;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(DOMIDEAL_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, IsDominant) {
  auto r = run("is-dominant 'x^2*y, x*z^3, y^2*z'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "true\n");
  r = run("is-dominant 'x^2*y, x*z^3, y*z'");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "false\n");
  r = run("is-dominant '[2,1,0],[1,0,3],[0,2,1]' --json");
  EXPECT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["dominant"]);
  EXPECT_EQ(j["generators"].size(), 3u);
}

TEST(Cli, Errors) {
  EXPECT_EQ(run("is-dominant 'x^'").status, 2);
  EXPECT_EQ(run("is-dominant").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("count --lcm 1,0").status, 2);
  EXPECT_EQ(run("formula --n 7 --source closed").status, 2);
}

TEST(Cli, Count) {
  auto r = run("count --lcm 2,3,4");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "675 (formula) / 675 (enumeration) agree\n");
  r = run("count --lcm 2,3,4 --json");
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["formula"], 675);
  EXPECT_EQ(j["enumeration"], 675);
  EXPECT_EQ(run("count --lcm 3").out, "1 (symbolic) / 1 (enumeration) agree\n");
}

TEST(Cli, EnumerateLcm) {
  auto r = run("enumerate-lcm --lcm 1,1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(count_lines(r.out), 2u);
  EXPECT_NE(r.out.find("(x*y)"), std::string::npos);
  EXPECT_NE(r.out.find("(x, y)"), std::string::npos);
  EXPECT_EQ(count_lines(run("enumerate-lcm --lcm 2,3,4 --threads 3").out), 675u);
}

TEST(Cli, Formula) {
  auto r = run("formula --n 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "1 + m1*m2 + m1*m3 + m2*m3 + 3*m1*m2*m3 + m1^2*m2^2*m3^2\n");
  r = run("formula --n 4 --compare");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("term by term"), std::string::npos);
  r = run("formula --n 2 --source symbolic --json");
  EXPECT_EQ(json::parse(r.out)["text"], "1 + m1*m2");
}

TEST(Cli, HistogramMatchesGolden) {
  const std::string dir = DOMIDEAL_GOLDEN_DIR;
  EXPECT_EQ(run("histogram --lcm 2,3,4 --json").out, read_file(dir + "/footprint_histogram_x2y3z4.json"));
  EXPECT_EQ(run("histogram --lcm 2,3,4 --kind low-or-max --json").out,
            read_file(dir + "/low_or_max_histogram_x2y3z4.json"));
  const auto text = run("histogram --lcm 2,3,4").out;
  EXPECT_NE(text.find("     576  [y*z, x*z, x*y]"), std::string::npos);
  EXPECT_NE(text.find("     675  total"), std::string::npos);
}

TEST(Cli, AssocHeights) {
  auto r = run("assoc-heights 'a*b, a*c, b*d, c*d' --oracle");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("height 2:"), std::string::npos);
  EXPECT_NE(r.out.find("heights agree"), std::string::npos);
  r = run("assoc-heights 'a*b, a*c, b*d, c*d' --json");
  EXPECT_EQ(json::parse(r.out)["heights"], json::array({2}));
}

TEST(Cli, PdimMax) {
  auto r = run("pdim-max 'a^3*b^2, b^3*c^2, a^2*c^3, a*b*c' --json");
  EXPECT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["pdim_is_max"]);
  EXPECT_EQ(j["max_dominant_subset"], 3);
  EXPECT_EQ(run("pdim-max 'x^2*y, x*z^3, y^2*z'").out.substr(0, 5), "true\n");
}

TEST(Cli, SampleIsReproducible) {
  const auto a = run("sample --model basic --n 3 --degree 5 --p 0.2 --count 5 --seed 7 --json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(count_lines(a.out), 5u);
  EXPECT_EQ(a.out, run("sample --model basic --n 3 --degree 5 --p 0.2 --count 5 --seed 7 --json").out);
  const auto first = json::parse(a.out.substr(0, a.out.find('\n')));
  EXPECT_EQ(ideal_from_json(first), sample_basic({3, 5, 0.2}, {7, 0}));
  const auto f = run("sample --model fixed-count --n 3 --degree 4 --g 3 --count 3 --seed 1 --json");
  std::istringstream in(f.out);
  for (std::string line; std::getline(in, line);) EXPECT_EQ(json::parse(line)["generators"].size(), 3u);
  EXPECT_EQ(run("sample --model basic --n 3 --degree 5 --p 2").status, 2);
}

TEST(Cli, ExperimentCsv) {
  const std::string args = "experiment --model basic --n 3 --degrees 4..5 --p 0.2,0.8 --samples 20 --seed 5";
  const auto a = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "model,n,d,p,g,sample_size,dominant_count,h0,h1,h2,h3,seed");
  EXPECT_EQ(count_lines(a.out), 5u);
  EXPECT_EQ(a.out, run(args + " --threads 1").out);
  ExperimentConfig c;
  c.degrees = {4, 5};
  c.source = GridSource::Explicit;
  c.probabilities = {0.2, 0.8};
  c.sample_size = 20;
  c.seed = 5;
  std::ostringstream lib;
  write_experiment(c, lib);
  EXPECT_EQ(a.out, lib.str());
}

TEST(Cli, ExperimentFixedCountLegacy) {
  const auto r = run("experiment --model fixed-count --n 3 --degrees 3 --g 2,4 --samples 20 --legacy-format");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("(3,4,3,0)"), std::string::npos);
}
