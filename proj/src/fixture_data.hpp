#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace shiftsym::detail {

/// (name, JSON text) of every shipped fixture, in shipping order.
const std::vector<std::pair<std::string_view, std::string_view>>& fixture_sources();

}  // namespace shiftsym::detail
