#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(MOL_BINARY) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json without_timing(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("wall_time_ms");
  return j;
}

TEST(Cli, DepthJsonIsDeterministic) {
  const Outcome a = run("depth --config trapezoid --class 5 --json -");
  const Outcome b = run("depth --config trapezoid --class 5 --json -");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(without_timing(a.out), without_timing(b.out));
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.at("command"), "depth");
  EXPECT_EQ(j.at("outputs").at("k").at("text"), "2");
  EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, GermWordAndDeterminism) {
  const std::string args = "germ --gens levels12 --word \"[d1,d2]\" --json -";
  const Outcome a = run(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(without_timing(a.out), without_timing(run(args).out));
  EXPECT_NE(a.out.find("z - eps^2*u1*u2*z^4"), std::string::npos);
}

TEST(Cli, GvReport) {
  const Outcome r = run("gv --phi \"F^2/(x-1)\" --json -");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("outputs").at("length"), 3);
  EXPECT_TRUE(j.at("outputs").contains("riccati_system"));
}

TEST(Cli, ConfigExportRoundTrips) {
  const Outcome r = run("config export generic4");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("name"), "generic4");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("depth --config nowhere.json").status, 2);
  EXPECT_EQ(run("gv --phi \"1/F\"").status, 2);
  EXPECT_EQ(run("depth --config generic4 --class 1").status, 2);
  EXPECT_EQ(run("bogus").status, 2);
  EXPECT_EQ(run("depth --config generic4 --class 13").status, 3);
  EXPECT_EQ(run("germ --gens levels12 --budget 5").status, 4);
  EXPECT_EQ(run("selftest --filter casale").status, 0);
}

TEST(Cli, ResourceCapFromEnvironment) {
  EXPECT_EQ(run("depth --config generic4 --class 4").status, 0);
  const std::string cmd = std::string("MOL_MAX_BASIS=10 ") + MOL_BINARY + " depth --config generic4 --class 4 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
}

}  // namespace
