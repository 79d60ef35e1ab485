// Command-line front end: depth, gv, germ, selftest, config export.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mol/acceptance.hpp"
#include "mol/errors.hpp"
#include "mol/germs.hpp"
#include "mol/gv.hpp"
#include "mol/orbit.hpp"

namespace {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kSelftestFailed = 1,
  kInputError = 2,
  kResourceCap = 3,
  kTruncation = 4,
};

struct Output {
  std::string json_target;  // empty: text only; "-": JSON on stdout
};

std::size_t max_basis_from_env() {
  const char* raw = std::getenv("MOL_MAX_BASIS");
  if (raw == nullptr || *raw == '\0') return mol::kDefaultMaxBasis;
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || value == 0) {
    throw mol::ConfigError("MOL_MAX_BASIS", "expected a positive integer, got '" + std::string(raw) + "'");
  }
  return static_cast<std::size_t>(value);
}

void emit(const Output& out, const std::string& command, const json& inputs, const json& outputs,
          std::chrono::steady_clock::time_point start, const std::string& summary) {
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json report{{"command", command},
              {"inputs", inputs},
              {"outputs", outputs},
              {"version", std::string(mol::version())},
              {"wall_time_ms", ms}};
  if (out.json_target == "-") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  if (!out.json_target.empty()) {
    std::ofstream file(out.json_target);
    if (!file) throw mol::ConfigError("json", "cannot write '" + out.json_target + "'");
    file << report.dump(2) << "\n";
  }
  std::cout << summary;
}

std::string depth_summary(const json& r, const json& ineq) {
  std::ostringstream s;
  s << "config " << r["config"].get<std::string>() << ", class " << r["class"] << " (" << r["qualifier"].get<std::string>()
    << ")\n";
  s << "  orbit depth k:       " << r["k"]["text"].get<std::string>() << "\n";
  s << "  nilpotence class n:  " << r["n"]["text"].get<std::string>() << "\n";
  s << "  derived length d:    " << r["d"]["text"].get<std::string>() << "\n";
  for (const auto& l : r["levels"]) {
    s << "  j=" << l["j"] << ": " << l["verdict"].get<std::string>();
    if (!l["witness"].is_null()) {
      s << ", witness in degree " << l["witness"]["degree"] << ": " << l["witness"]["element"].get<std::string>();
    }
    s << "\n";
  }
  if (!r["monotone"].get<bool>()) s << "  note: level verdicts are not monotone\n";
  s << "  " << ineq["explanation"].get<std::string>() << "\n";
  return s.str();
}

int cmd_depth(const std::string& config, int cutoff, bool subspaces, const Output& out) {
  const auto start = std::chrono::steady_clock::now();
  const mol::Configuration cfg = mol::load_config(config);
  mol::OrbitOptions options;
  options.max_basis = max_basis_from_env();
  const mol::DepthReport report = mol::orbit_depth(cfg, cutoff, options);
  const mol::InequalityCheck ineq = mol::verify_inequalities(report);
  json outputs = mol::to_json(report);
  outputs["inequalities"] = mol::to_json(ineq);
  if (subspaces) {
    const mol::LieContext ctx = mol::make_lie_context(cfg.alphabet->rank(), cutoff, options.max_basis);
    const mol::GradedSubspace orbit = mol::orbit_ideal(cfg, ctx);
    outputs["orbit_ideal"] = mol::to_json(orbit, cfg.alphabet.get());
    outputs["commutator_ideal"] = mol::to_json(mol::commutator_ideal(orbit, ctx), cfg.alphabet.get());
  }
  const json inputs{{"config", config}, {"class", cutoff}, {"max_basis", options.max_basis}};
  emit(out, "depth", inputs, outputs, start, depth_summary(outputs, outputs["inequalities"]));
  return kOk;
}

int cmd_gv(const std::string& phi_text, std::optional<int> max, const Output& out) {
  const auto start = std::chrono::steady_clock::now();
  const mol::RatF phi = mol::parse_ratf(phi_text);
  const int length = max.value_or(std::max(phi.degree_F() + 2, 1));
  const mol::GVSequence seq = mol::gv_sequence(phi, length);
  const mol::GVVerification check = mol::verify_gv(seq);
  json outputs = mol::to_json(seq, check);
  if (phi.degree_F() == 2) outputs["riccati_system"] = mol::to_json(mol::riccati_system(phi));
  std::ostringstream s;
  s << "phi = " << outputs["phi"].get<std::string>() << "\n";
  for (const auto& e : outputs["eta"]) s << "  eta_" << e["k"] << " = " << e["form"].get<std::string>() << "\n";
  s << "  residuals " << (check.all_zero ? "all zero" : "NONZERO") << "\n";
  s << "  length " << seq.length << " (" << mol::gv_classification(seq.length) << ")\n";
  const json inputs{{"phi", phi_text}, {"max", length}};
  emit(out, "gv", inputs, outputs, start, s.str());
  return kOk;
}

int cmd_germ(const std::string& gens, int budget, std::optional<int> order, std::optional<int> eps_order,
             const std::vector<std::string>& words, const Output& out) {
  const auto start = std::chrono::steady_clock::now();
  if (budget < 1) throw mol::ConfigError("budget", "must be at least 1");
  const mol::GermAssignment asgn = mol::load_assignment(gens, order, eps_order);
  json outputs;
  outputs["order"] = asgn.order;
  outputs["eps_order"] = asgn.eps_order;
  outputs["generators"] = json::array();
  for (const auto& [name, g] : asgn.germs) {
    json gj = mol::to_json(g);
    gj["name"] = name;
    outputs["generators"].push_back(std::move(gj));
  }
  outputs["level_checks"] = json::array();
  for (std::size_t i = 0; i < asgn.germs.size(); ++i) {
    for (std::size_t j = i + 1; j < asgn.germs.size(); ++j) {
      json cj;
      try {
        cj = mol::to_json(mol::commutator_level_check(asgn.germs[i].second, asgn.germs[j].second));
      } catch (const mol::TruncationError& e) {
        cj = json{{"error", e.what()}};
      }
      cj["pair"] = json::array({asgn.germs[i].first, asgn.germs[j].first});
      outputs["level_checks"].push_back(std::move(cj));
    }
  }
  std::ostringstream s;
  for (const auto& [name, g] : asgn.germs) s << name << " -> " << mol::to_string(g) << "\n";
  outputs["words"] = json::array();
  for (const auto& text : words) {
    const mol::Word w = mol::parse_word(text, asgn.alphabet);
    const mol::Germ image = mol::poincare_rep(asgn, w);
    json wj = mol::to_json(image);
    wj["word"] = text;
    outputs["words"].push_back(std::move(wj));
    s << "P(" << text << ") = " << mol::to_string(image) << "\n";
  }
  const auto result = mol::group_dichotomy(asgn.germs, budget);
  outputs["dichotomy"] = mol::to_json(result);
  if (result.pair) {
    outputs["dichotomy"]["pair"] =
        json::array({asgn.germs[result.pair->first].first, asgn.germs[result.pair->second].first});
  }
  if (result.abelian) {
    s << "abelian: every pair of generators commutes to order " << asgn.order << "\n";
  } else {
    s << "non-abelian at truncation; commutator chain:\n";
    for (const auto& step : result.chain) s << "  " << step.expression << "  level " << step.level << "\n";
  }
  json inputs{{"gens", gens}, {"budget", budget}, {"order", asgn.order}, {"eps_order", asgn.eps_order}, {"words", words}};
  emit(out, "germ", inputs, outputs, start, s.str());
  return kOk;
}

int cmd_selftest(const std::string& filter, const Output& out) {
  const auto start = std::chrono::steady_clock::now();
  mol::AcceptanceOptions options;
  options.filter = filter;
  const auto results = mol::run_acceptance(options);
  json outputs = json::array();
  std::ostringstream s;
  bool ok = true;
  for (const auto& r : results) {
    outputs.push_back(mol::to_json(r));
    s << (r.passed ? "PASS " : "FAIL ") << r.id << ": " << r.title << "\n";
    if (!r.passed) s << "     " << r.detail << "\n";
    ok = ok && r.passed;
  }
  if (results.empty()) s << "no criteria match '" << filter << "'\n";
  emit(out, "selftest", json{{"filter", filter}}, outputs, start, s.str());
  if (!ok) std::cerr << "selftest failed\n";
  return ok ? kOk : kSelftestFailed;
}

int cmd_config_export(const std::string& name) {
  std::cout << json::parse(mol::builtin_config_text(name)).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy orbits, parabolic germs and Godbillon-Vey sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mol::version()));

  Output out;
  std::string config;
  int cutoff = mol::kDefaultClass;
  bool subspaces = false;
  auto* depth = app.add_subcommand("depth", "orbit depth k, nilpotence class n, derived length d");
  depth->add_option("--config", config, "built-in name or JSON file")->required();
  depth->add_option("--class", cutoff, "truncation class c")->capture_default_str();
  depth->add_flag("--subspaces", subspaces, "include the ideal bases in the JSON report");
  depth->add_option("--json", out.json_target, "write the JSON report to a file, '-' for stdout");

  std::string phi;
  std::optional<int> max;
  auto* gv = app.add_subcommand("gv", "Godbillon-Vey sequence for dF + eps*phi dx");
  gv->add_option("--phi", phi, "phi(x, F), e.g. \"F/(x-1)+F^2/(x+1)\"")->required();
  gv->add_option("--max", max, "last eta index (default deg_F phi + 2)");
  gv->add_option("--json", out.json_target, "write the JSON report to a file, '-' for stdout");

  std::string gens;
  int budget = 3;
  std::optional<int> order;
  std::optional<int> eps_order;
  std::vector<std::string> words;
  auto* germ = app.add_subcommand("germ", "parabolic germ dichotomy and Poincare representation");
  germ->add_option("--gens", gens, "built-in assignment or JSON file")->required();
  germ->add_option("--budget", budget, "commutator chain length")->capture_default_str();
  germ->add_option("--order", order, "truncation order N in z");
  germ->add_option("--eps-order", eps_order, "truncation order M in eps");
  germ->add_option("--word", words, "word to evaluate, repeatable")->allow_extra_args(false);
  germ->add_option("--json", out.json_target, "write the JSON report to a file, '-' for stdout");

  std::string filter;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--filter", filter, "criterion id or module substring");
  selftest->add_option("--json", out.json_target, "write the JSON report to a file, '-' for stdout");

  std::string export_name;
  auto* cfg = app.add_subcommand("config", "built-in configurations");
  cfg->require_subcommand(1);
  auto* exp = cfg->add_subcommand("export", "print a built-in configuration as JSON");
  exp->add_option("name", export_name, "configuration name")->required()->check(CLI::IsMember(mol::builtin_config_names()));
  auto* list = cfg->add_subcommand("list", "list built-in configurations and germ assignments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*depth) return cmd_depth(config, cutoff, subspaces, out);
    if (*gv) return cmd_gv(phi, max, out);
    if (*germ) return cmd_germ(gens, budget, order, eps_order, words, out);
    if (*selftest) return cmd_selftest(filter, out);
    if (*exp) return cmd_config_export(export_name);
    if (*list) {
      for (const auto& n : mol::builtin_config_names()) std::cout << "config " << n << "\n";
      for (const auto& n : mol::builtin_assignment_names()) std::cout << "germs  " << n << "\n";
      return kOk;
    }
  } catch (const mol::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kInputError;
  } catch (const mol::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const mol::ResourceLimit& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const mol::TruncationError& e) {
    std::cerr << "truncation exhausted: " << e.what() << "\n";
    return kTruncation;
  } catch (const mol::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kSelftestFailed;
  }
  return kOk;
}
