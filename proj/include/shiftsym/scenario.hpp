#pragma once

// Scenario files: a JSON document describing the group, the manifold, the
// action, the fiber representation, the symbol table and analysis options.
// The schema is documented in docs/scenario-schema.md.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "shiftsym/analyzer.hpp"

namespace shiftsym {

inline constexpr const char* kScenarioSchema = "shiftsym-scenario/1";

struct ScenarioOptions {
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  double eps_inv = 1e-8;
  std::vector<std::size_t> oracle_sizes{64, 128, 256, 512};
  double oracle_eps = 1e-6;

  AnalysisOptions analysis() const;
};

struct Scenario {
  std::string name;
  GammaSymbolData data;
  ScenarioOptions options;
  std::map<std::string, Element> aliases;
  std::string canonical;  // compact JSON of the parsed document with sorted keys
  std::string hash;       // 16 hex digits of FNV-1a over `canonical`
};

/// Throws ParseError (with line and column) or ValidationError (with the field
/// path and, when it can be located, the line).
Scenario parse_scenario(const std::string& text, const std::string& origin = "<input>");
Scenario load_scenario(const std::filesystem::path& path);

/// Element by name, "#index" or scenario alias.
std::optional<Element> resolve_element(const Scenario& s, const std::string& name);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace shiftsym
