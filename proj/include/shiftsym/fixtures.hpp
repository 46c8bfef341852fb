#pragma once

// The shipped scenarios, one per structural case of the decision procedure
// plus a disconnected quotient and a degree-1 twisted symbol.

#include <span>
#include <string>
#include <string_view>

#include "shiftsym/scenario.hpp"

namespace shiftsym {

struct BuiltinFixture {
  std::string_view name;
  std::string_view source;  // JSON text
  Verdict verdict;
  Classification classification;
};

std::span<const BuiltinFixture> builtin_fixtures();

/// Throws InvalidArgument for an unknown name.
Scenario load_builtin(std::string_view name);

}  // namespace shiftsym
