#include <gtest/gtest.h>

#include <random>

#include "mol/errors.hpp"
#include "mol/orbit.hpp"

namespace mol {
namespace {

using nlohmann::json;
using IV = InvariantValue;

LieElement gen(const HallBasisPtr& b, std::uint32_t i) { return LieElement::generator(b, i); }

TEST(BuiltinConfigs, NamesAndRoundTrip) {
  EXPECT_EQ(builtin_config_names(), (std::vector<std::string>{"generic4", "parallelogram", "trapezoid"}));
  for (const auto& name : builtin_config_names()) {
    const Configuration cfg = load_config(name);
    EXPECT_EQ(cfg.name, name);
    const Configuration again = config_from_json(to_json(cfg));
    EXPECT_EQ(to_json(again), to_json(cfg));
    EXPECT_EQ(again.orbit_words(5), cfg.orbit_words(5));
  }
}

TEST(BuiltinConfigs, Generic4) {
  const auto r = orbit_depth(load_config("generic4"), 4);
  EXPECT_EQ(r.k, IV::exact(2));
  EXPECT_EQ(r.n, IV::exact(1));
  EXPECT_EQ(r.d, IV::exact(1));
  EXPECT_TRUE(r.monotone);
}

TEST(BuiltinConfigs, Trapezoid) {
  const auto r = orbit_depth(load_config("trapezoid"), 5);
  EXPECT_EQ(r.k, IV::exact(2));
  EXPECT_EQ(r.n, IV::at_least(5));
  EXPECT_FALSE(r.d.is_exact());
  EXPECT_GE(r.d.value, 2);
  ASSERT_TRUE(r.nilpotence_witness.has_value());
  EXPECT_EQ(r.nilpotence_witness->degree, 5);
}

TEST(BuiltinConfigs, ParallelogramNeverPassesBelowTheCutoff) {
  for (int c = 4; c <= 6; ++c) {
    const auto r = orbit_depth(load_config("parallelogram"), c);
    EXPECT_EQ(r.k, IV::at_least(c - 1)) << c;
    for (const auto& l : r.levels) {
      if (l.level <= c - 2) {
        EXPECT_EQ(l.verdict, Verdict::CertifiedFalse) << c << " " << l.level;
      }
    }
    EXPECT_EQ(r.levels.back().verdict, Verdict::Undetermined);
  }
}

TEST(OrbitIdeal, Generic4ContainsAllOfDegreeTwo) {
  const auto cfg = load_config("generic4");
  const auto ctx = make_lie_context(cfg.alphabet->rank(), 4);
  const auto ideal = orbit_ideal(cfg, ctx);
  for (std::uint32_t i = 0; i < 6; ++i) {
    for (std::uint32_t j = i + 1; j < 6; ++j) {
      EXPECT_TRUE(ideal.contains(bracket(gen(ctx.basis, i), gen(ctx.basis, j))));
    }
  }
  EXPECT_EQ(ideal.dimensions()[1], ctx.basis->degree_size(2));
}

TEST(OrbitIdeal, ParallelogramContainsFamilyLeaders) {
  const auto cfg = load_config("parallelogram");
  const auto ctx = make_lie_context(cfg.alphabet->rank(), 5);
  const auto ideal = orbit_ideal(cfg, ctx);
  for (int m = 0; m <= 3; ++m) {
    WordSymbols sym;
    sym.parameters["m"] = m;
    const Word w = parse_word("[d1 d2, ad(d2)^m(d2 d3)]", cfg.alphabet, sym);
    const LieElement lead = log_leading(w, ctx.basis);
    EXPECT_EQ(lead.lowest_degree(), m + 2);
    EXPECT_TRUE(ideal.contains(lead)) << m;
  }
}

TEST(OrbitIdeal, TrapezoidCommutatorIdealContainsBracket) {
  const auto cfg = load_config("trapezoid");
  const auto ctx = make_lie_context(cfg.alphabet->rank(), 5);
  const auto ideal = orbit_ideal(cfg, ctx);
  const auto comm = commutator_ideal(ideal, ctx);
  const auto& b = ctx.basis;
  // leading term of [d1 d2, [d2, d2 d3]] computed by hand
  const LieElement expected = bracket(gen(b, 0) + gen(b, 1), bracket(gen(b, 1), gen(b, 2)));
  const Word w = parse_word("[d1 d2, [d2, d2 d3]]", cfg.alphabet);
  EXPECT_EQ(log_leading(w, b), expected);
  EXPECT_TRUE(comm.contains(expected));
  EXPECT_TRUE(comm.is_subspace_of(ideal));
}

TEST(OrbitIdeal, LevelWitnessSeparatesTheIdeals) {
  const auto cfg = load_config("parallelogram");
  const auto ctx = make_lie_context(cfg.alphabet->rank(), 5);
  const auto ideal = orbit_ideal(cfg, ctx);
  const auto comm = commutator_ideal(ideal, ctx);
  for (const auto& l : level_verdicts(ideal, comm)) {
    if (l.verdict != Verdict::CertifiedFalse) continue;
    ASSERT_TRUE(l.witness.has_value());
    EXPECT_GT(l.witness->degree, l.level);
    EXPECT_TRUE(ideal.contains(l.witness->element));
    EXPECT_FALSE(comm.contains(l.witness->element));
  }
}

TEST(Dichotomy, ExtraCommutatorFlipsTheVerdict) {
  auto j = to_json(load_config("parallelogram"));
  EXPECT_EQ(orbit_depth(config_from_json(j), 5).k, IV::at_least(4));
  j["orbit_families"].push_back({{"template", "[d2,d3]"}});
  EXPECT_EQ(orbit_depth(config_from_json(j), 5).k, IV::exact(2));
}

TEST(Quotient, DimensionsComplementTheOrbit) {
  for (const auto& name : builtin_config_names()) {
    const auto r = orbit_depth(load_config(name), 4);
    ASSERT_EQ(r.quotient_dimensions.size(), 4u);
    EXPECT_EQ(r.quotient_dimensions[0], r.algebra_dimensions[0]);
    for (std::size_t d = 1; d < 4; ++d) {
      EXPECT_EQ(r.quotient_dimensions[d], r.algebra_dimensions[d] - r.orbit_dimensions[d]) << name;
    }
  }
}

TEST(DepthFromLevels, Cases) {
  auto run = [](std::vector<Verdict> vs, bool* mono) {
    std::vector<LevelVerdict> levels;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      LevelVerdict l;
      l.level = static_cast<int>(i) + 1;
      l.verdict = vs[i];
      levels.push_back(l);
    }
    return depth_from_levels(levels, mono);
  };
  using V = Verdict;
  bool mono = false;
  EXPECT_EQ(run({V::CertifiedFalse, V::CertifiedTrue, V::Undetermined}, &mono), IV::exact(2));
  EXPECT_TRUE(mono);
  EXPECT_EQ(run({V::CertifiedTrue, V::CertifiedTrue, V::Undetermined}, &mono), IV::exact(1));
  EXPECT_EQ(run({V::CertifiedFalse, V::CertifiedFalse, V::Undetermined}, &mono), IV::at_least(3));
  EXPECT_EQ(run({V::CertifiedTrue, V::CertifiedFalse, V::Undetermined}, &mono), IV::at_least(3));
  EXPECT_FALSE(mono);
  EXPECT_EQ(run({V::Undetermined}, &mono), IV::at_least(1));
}

TEST(OrbitDepth, ClassLimits) {
  const auto cfg = load_config("generic4");
  EXPECT_THROW(orbit_depth(cfg, 1), DomainError);
  EXPECT_THROW(orbit_depth(cfg, 13), ResourceLimit);
  OrbitOptions tight;
  tight.max_basis = 50;
  EXPECT_THROW(orbit_depth(cfg, 4, tight), ResourceLimit);
}

TEST(Json, ReportShape) {
  const auto j = to_json(orbit_depth(load_config("parallelogram"), 5));
  EXPECT_EQ(j.at("config"), "parallelogram");
  EXPECT_EQ(j.at("class"), 5);
  EXPECT_EQ(j.at("k").at("kind"), "at-least");
  EXPECT_EQ(j.at("k").at("value"), 4);
  EXPECT_EQ(j.at("k").at("text"), "≥ 4");
  EXPECT_EQ(j.at("levels").size(), 4u);
  EXPECT_EQ(to_string(IV::exact(3)), "3");
}

json minimal() {
  return json::parse(R"({"name":"t","alphabet":["a","b"],"cycle":"a b","orbit_families":[{"template":"[a,b]"}]})");
}

std::string config_error_path(const json& j) {
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(ConfigErrors, NameTheOffendingField) {
  EXPECT_EQ(config_error_path(minimal()), "<no error>");
  auto j = minimal();
  j["colour"] = 1;
  EXPECT_EQ(config_error_path(j), "colour");
  j = minimal();
  j.erase("cycle");
  EXPECT_EQ(config_error_path(j), "cycle");
  j = minimal();
  j["orbit_families"][0]["template"] = "[a,q]";
  EXPECT_EQ(config_error_path(j), "orbit_families[0].template");
  j = minimal();
  j["orbit_families"][0]["extra"] = true;
  EXPECT_EQ(config_error_path(j), "orbit_families[0].extra");
  j = minimal();
  j["orbit_families"][0]["parameter"] = "m";
  EXPECT_EQ(config_error_path(j), "orbit_families[0].range");
  j = minimal();
  j["orbit_families"].push_back({{"template", "ad(a)^m(b)"}, {"parameter", "m"}, {"range", {0, "k"}}});
  EXPECT_EQ(config_error_path(j), "orbit_families[1].range[1]");
  j = minimal();
  j["alphabet"] = {"a", "a"};
  EXPECT_EQ(config_error_path(j), "alphabet");
}

TEST(ConfigErrors, Intersections) {
  auto j = minimal();
  j["intersections"] = {{"gamma", "a", 1}, {"a", "gamma", 1}};
  EXPECT_EQ(config_error_path(j), "intersections[1]");
  j["intersections"] = {{"gamma", "a", 1}, {"a", "gamma", -1}};
  const auto cfg = config_from_json(j);
  EXPECT_EQ(cfg.intersection("gamma", "a"), 1);
  EXPECT_EQ(cfg.intersection("a", "gamma"), -1);
  j["intersections"] = {{"gamma", "z", 1}};
  EXPECT_EQ(config_error_path(j), "intersections[0][1]");
  j["intersections"] = {{"a", "a", 2}};
  EXPECT_EQ(config_error_path(j), "intersections[0]");
}

TEST(ConfigErrors, LoadUnknown) {
  EXPECT_THROW(load_config("no-such-config-or-file"), ConfigError);
  EXPECT_THROW(builtin_config_text("nope"), ConfigError);
}

json random_config(std::mt19937& rng) {
  const std::vector<std::string> letters = {"a", "b", "c", "d"};
  auto word = [&](int len) {
    std::string s;
    for (int i = 0; i < len; ++i) {
      s += letters[rng() % letters.size()];
      if (rng() % 3 == 0) s += "^-1";
      s += " ";
    }
    return s;
  };
  json j = {{"name", "random"}, {"alphabet", letters}, {"cycle", word(4)}, {"orbit_families", json::array()}};
  const int families = 1 + static_cast<int>(rng() % 3);
  for (int f = 0; f < families; ++f) {
    j["orbit_families"].push_back({{"template", "[" + word(2) + "," + word(2) + "]"}});
  }
  return j;
}

TEST(Inequalities, HoldOnRandomConfigurations) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const auto j = random_config(rng);
    const auto r = orbit_depth(config_from_json(j), 4);
    EXPECT_NO_THROW(verify_inequalities(r)) << j.dump();
    if (r.k.is_exact() && r.n.is_exact()) {
      EXPECT_LE(r.k.value, r.n.value + 1) << j.dump();
    }
    if (r.d.is_exact() && r.n.is_exact()) {
      EXPECT_LE(r.d.value, r.n.value) << j.dump();
    }
  }
}

}  // namespace
}  // namespace mol
