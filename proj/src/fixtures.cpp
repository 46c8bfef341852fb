#include "shiftsym/fixtures.hpp"

#include <map>
#include <vector>

#include "fixture_data.hpp"
#include "shiftsym/error.hpp"

namespace shiftsym {

namespace {

// Hand-derived outcomes: the reduced symbols are constant or degree 1, so
// their singular values are known in closed form.
struct Expected {
  Verdict verdict;
  Classification classification;
};

const std::map<std::string_view, Expected>& expectations() {
  static const std::map<std::string_view, Expected> e{
      {"trivial_action", {Verdict::Fredholm, Classification::Elliptic}},
      {"antipodal_elliptic", {Verdict::Fredholm, Classification::Elliptic}},
      {"klein4_nonelliptic_fredholm", {Verdict::Fredholm, Classification::FredholmNonElliptic}},
      {"coset_bundle", {Verdict::Fredholm, Classification::Elliptic}},
      {"two_component_mixed", {Verdict::NotFredholm, Classification::NotFredholm}},
      {"antipodal_twisted", {Verdict::Fredholm, Classification::Elliptic}},
  };
  return e;
}

}  // namespace

std::span<const BuiltinFixture> builtin_fixtures() {
  static const std::vector<BuiltinFixture> all = [] {
    std::vector<BuiltinFixture> v;
    for (const auto& [name, source] : detail::fixture_sources()) {
      const Expected& e = expectations().at(name);
      v.push_back({name, source, e.verdict, e.classification});
    }
    return v;
  }();
  return all;
}

Scenario load_builtin(std::string_view name) {
  for (const auto& f : builtin_fixtures())
    if (f.name == name) return parse_scenario(std::string(f.source), "builtin:" + std::string(name));
  throw Error(ErrorKind::InvalidArgument, "no built-in fixture named \"" + std::string(name) + "\"");
}

}  // namespace shiftsym
