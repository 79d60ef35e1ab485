#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mol/orbit.hpp"

namespace mol {

/// Library version reported by every run.
std::string_view version();

struct CriterionResult {
  std::string id;
  std::string module;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

using ConfigProvider = std::function<Configuration(std::string_view name)>;

struct AcceptanceOptions {
  /// Source of the built-in configurations; defaults to load_config.
  ConfigProvider configs;
  /// Runs only criteria whose id or module contains this text.
  std::string filter;
  std::uint64_t seed = 0x5eed2024;
};

struct CriterionInfo {
  std::string id;
  std::string module;
  std::string title;
};

const std::vector<CriterionInfo>& acceptance_criteria();

/// Runs the selected criteria. A criterion that throws is reported as
/// failed with the exception text.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

nlohmann::json to_json(const CriterionResult& r);

}  // namespace mol
