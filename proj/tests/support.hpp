#pragma once

// Builders shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "shiftsym/analyzer.hpp"
#include "shiftsym/error.hpp"
#include "shiftsym/oracle.hpp"
#include "shiftsym/scenario.hpp"

namespace shiftsym::testing {

inline GroupDescriptor cyclic(std::size_t n) { return {GroupDescriptor::Cyclic{n}}; }
inline GroupDescriptor dihedral(std::size_t n) { return {GroupDescriptor::Dihedral{n}}; }
inline GroupDescriptor product(const GroupDescriptor& a, const GroupDescriptor& b) {
  return {GroupDescriptor::Product{std::make_shared<const GroupDescriptor>(a),
                                   std::make_shared<const GroupDescriptor>(b)}};
}

inline GroupPtr make_group(const GroupDescriptor& d) {
  return std::make_shared<const FiniteGroup>(build_group(d));
}

inline Element named(const FiniteGroup& g, const std::string& name) { return g.find(name).value(); }

/// theta -> orientation * theta + angle on every copy, copies fixed.
inline IsometryDescriptor uniform_map(std::size_t copies, Turn angle, int orientation = 1) {
  IsometryDescriptor d = IsometryDescriptor::identity(copies);
  for (auto& m : d.per_copy) m = {angle, orientation};
  return d;
}

inline IsometryDescriptor swap_copies() {
  IsometryDescriptor d = IsometryDescriptor::identity(2);
  d.copy_perm = {1, 0};
  return d;
}

inline std::shared_ptr<const IsometricAction> make_action(GroupPtr g, std::size_t copies,
                                                          const std::map<Element, IsometryDescriptor>& gens,
                                                          std::size_t rank = 1,
                                                          const std::map<Element, Matrix>& fiber = {}) {
  // Elements outside the generated subgroup act trivially.
  std::map<Element, IsometryDescriptor> all = gens;
  std::vector<Element> keys;
  for (const auto& [x, m] : gens) keys.push_back(x);
  for (Element x = 0; x < g->order(); ++x) {
    const auto reached = g->generate(keys);
    if (std::find(reached.begin(), reached.end(), x) != reached.end()) continue;
    all[x] = IsometryDescriptor::identity(copies);
    keys.push_back(x);
  }
  return std::make_shared<const IsometricAction>(
      build_action(std::move(g), ModelManifold{ModelManifold::Kind::CircleUnion, copies}, all, rank, fiber));
}

inline Matrix scalar(cplx v) { return Matrix::Constant(1, 1, v); }

inline TrigMatrixSymbol constant(std::size_t copies, cplx v) { return TrigMatrixSymbol::constant(copies, scalar(v)); }

/// Scalar symbol with a_+ = plus (mode coefficients) and a_- = minus on every copy.
inline TrigMatrixSymbol branches(std::size_t copies, const std::map<int, cplx>& plus,
                                 const std::map<int, cplx>& minus) {
  TrigMatrixSymbol a(1, copies);
  for (std::size_t c = 0; c < copies; ++c) {
    for (const auto& [m, v] : plus) a.set_coeff(c, 1, 0, 0, m, v);
    for (const auto& [m, v] : minus) a.set_coeff(c, -1, 0, 0, m, v);
  }
  return a;
}

inline GammaSymbolData make_data(std::shared_ptr<const IsometricAction> action,
                                 std::map<Element, TrigMatrixSymbol> symbols) {
  GammaSymbolData d{std::move(action), std::move(symbols)};
  d.validate();
  return d;
}

/// The Z/2 antipodal scenario on one circle with constant a_e and a_g.
inline GammaSymbolData antipodal(cplx ae, cplx ag) {
  auto g = make_group(cyclic(2));
  auto act = make_action(g, 1, {{named(*g, "g"), uniform_map(1, Turn(1, 2))}});
  return make_data(act, {{g->identity(), constant(1, ae)}, {named(*g, "g"), constant(1, ag)}});
}

/// Klein four with a = (g,e) antipodal and b = (e,g) trivial.
struct Klein {
  GroupPtr group;
  Element e, a, b, ab;
  std::shared_ptr<const IsometricAction> action;
};

inline Klein klein() {
  Klein k;
  k.group = make_group(product(cyclic(2), cyclic(2)));
  k.e = k.group->identity();
  k.a = named(*k.group, "(g,e)");
  k.b = named(*k.group, "(e,g)");
  k.ab = k.group->mul(k.a, k.b);
  k.action = make_action(k.group, 1, {{k.a, uniform_map(1, Turn(1, 2))}, {k.b, IsometryDescriptor::identity(1)}});
  return k;
}

/// Random scalar trigonometric symbol of the given degree on every copy.
inline TrigMatrixSymbol random_symbol(std::mt19937_64& gen, std::size_t copies, int degree, double scale = 1.0,
                                      std::size_t rank = 1) {
  std::normal_distribution<double> nd(0.0, scale);
  TrigMatrixSymbol a(rank, copies, degree);
  for (std::size_t c = 0; c < copies; ++c)
    for (int xi : {1, -1})
      for (std::size_t r = 0; r < rank; ++r)
        for (std::size_t q = 0; q < rank; ++q)
          for (int m = -degree; m <= degree; ++m) a.set_coeff(c, xi, r, q, m, {nd(gen), nd(gen)});
  return a;
}

inline double two_pi() { return 2.0 * std::numbers::pi; }

}  // namespace shiftsym::testing
