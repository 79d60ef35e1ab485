#include <gtest/gtest.h>

#include <algorithm>

#include "mol/acceptance.hpp"

namespace mol {
namespace {

const CriterionResult* find(const std::vector<CriterionResult>& rs, const std::string& id) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](const auto& r) { return r.id == id; });
  return it == rs.end() ? nullptr : &*it;
}

TEST(Acceptance, FilterSelectsModule) {
  AcceptanceOptions opts;
  opts.filter = "gv";
  const auto rs = run_acceptance(opts);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].id, "gv-lengths");
  EXPECT_EQ(rs[1].id, "casale");
  for (const auto& r : rs) EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Acceptance, EveryCriterionIsListedOnce) {
  std::vector<std::string> ids;
  for (const auto& c : acceptance_criteria()) ids.push_back(c.id);
  EXPECT_EQ(ids.size(), 8u);
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
}

TEST(Acceptance, SwappedConfigurationIsCaught) {
  AcceptanceOptions opts;
  opts.filter = "orbit";
  opts.configs = [](std::string_view name) {
    return load_config(name == "trapezoid" ? "parallelogram" : name);
  };
  const auto rs = run_acceptance(opts);
  const auto* t = find(rs, "theorem1");
  ASSERT_NE(t, nullptr);
  EXPECT_FALSE(t->passed);
  EXPECT_FALSE(t->detail.empty());
}

TEST(Acceptance, ThrowingProviderIsReportedAsFailure) {
  AcceptanceOptions opts;
  opts.filter = "theorem1";
  opts.configs = [](std::string_view) -> Configuration { throw std::runtime_error("no configs today"); };
  const auto rs = run_acceptance(opts);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_FALSE(rs[0].passed);
  EXPECT_NE(rs[0].detail.find("no configs today"), std::string::npos);
}

TEST(Acceptance, JsonOmitsTiming) {
  CriterionResult r;
  r.id = "x";
  r.seconds = 3;
  const auto j = to_json(r);
  EXPECT_FALSE(j.contains("seconds"));
  EXPECT_EQ(j.at("id"), "x");
}

}  // namespace
}  // namespace mol
