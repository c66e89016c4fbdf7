#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using pathkit::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pathkit_cli_" + name);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, ReactionIntegral) {
  const auto r = call({"react", "--family", "i1", "--gamma", "1", "--a", "1", "--b", "1"});
  ASSERT_EQ(r.code, pathkit::cli::kOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "value");
  EXPECT_NEAR(std::stod(ls[1]), 0.2797317636330449, 1e-9);
}

TEST(Cli, Sweep) {
  const auto r = call({"react", "--family", "i1", "--gamma", "1", "--b", "0", "--sweep", "a:1:3:1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], "a,value");
  EXPECT_NEAR(std::stod(ls[3].substr(ls[3].find(',') + 1)), 1.0 / 3, 1e-10);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, pathkit::cli::kUsage);
  EXPECT_EQ(call({"pdf", "--bogus", "1"}).code, pathkit::cli::kUsage);
  EXPECT_EQ(call({"pdf", "--alpha", "1"}).code, pathkit::cli::kUsage);  // no grid
  EXPECT_EQ(call({"pdf", "--alpha", "3", "--gamma", "1", "--eta", "1", "--grid", "0:1:0.5"}).code,
            pathkit::cli::kDomain);
  EXPECT_EQ(call({"figures", "--which", "3a"}).code, pathkit::cli::kDomain);

  const auto path = temp_file("few.csv");
  {
    std::ofstream f(path);
    f << "x\n1\n2\n3\n";
  }
  EXPECT_EQ(call({"fit", "--in", path.string()}).code, pathkit::cli::kAccuracy);
  std::filesystem::remove(path);
}

TEST(Cli, HelpSucceeds) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("figures"), std::string::npos);
}

TEST(Cli, SamplingIsSeeded) {
  const std::vector<std::string> args{"sample", "--alpha", "0.5", "--n", "50", "--seed", "11"};
  const auto a = call(args);
  const auto b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 51u);
  auto other = args;
  other.back() = "12";
  EXPECT_NE(call(other).out, a.out);
}

TEST(Cli, JobFileAndOutputFile) {
  const auto job = temp_file("job.json");
  const auto out = temp_file("out.csv");
  {
    std::ofstream f(job);
    f << R"({"command": "pdf", "alpha": 1, "a": 1, "delta": 1, "gamma": 1, "eta": 1, "grid": "0:1:0.5"})";
  }
  const auto r = call({"--job", job.string(), "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::stringstream content;
  content << in.rdbuf();
  const auto ls = lines(content.str());
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], "x,pdf");
  EXPECT_NEAR(std::stod(ls[3].substr(ls[3].find(',') + 1)), std::exp(-1.0), 1e-14);

  // command-line flags override the job file
  const auto r2 = call({"--job", job.string(), "--grid", "2:2:1"});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(lines(r2.out).size(), 2u);
  std::filesystem::remove(job);
  std::filesystem::remove(out);
}

TEST(Cli, FigureHeader) {
  const auto r = call({"figures", "--which", "1a"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).front(), "series,alpha,x,value");
}

TEST(Cli, ReduceNamesSpecialCase) {
  const auto r = call({"reduce", "--alpha", "1", "--a", "1", "--delta", "1", "--gamma", "1", "--eta", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("exponential"), std::string::npos);
}
