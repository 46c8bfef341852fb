// Seeded random scenarios checked against the structural identities.

#include <cmath>

#include <gtest/gtest.h>

#include "shiftsym/analyzer.hpp"
#include "shiftsym/oracle.hpp"
#include "support.hpp"

namespace shiftsym {
namespace {

using namespace shiftsym::testing;

// Random finite action on one or two circles: Z/n by rotations, or D_n by
// rotations plus a reflection, with a diagonal fiber character.
GammaSymbolData random_scenario(std::mt19937_64& gen, int degree) {
  std::uniform_int_distribution<int> pick(0, 3);
  const int kind = pick(gen);
  const std::size_t n = kind % 2 ? 4 : 2;
  const std::size_t copies = 1 + pick(gen) % 2;
  const std::size_t rank = 1 + pick(gen) % 2;
  std::map<Element, IsometryDescriptor> maps;
  std::map<Element, Matrix> fiber;
  GroupPtr g;
  const Turn step(std::uniform_int_distribution<int>(0, 1)(gen) ? 1 : 3, static_cast<std::int64_t>(n));
  IsometryDescriptor rot = uniform_map(copies, step);
  if (copies == 2 && pick(gen) % 2) rot.copy_perm = {1, 0};
  Matrix u = Matrix::Identity(rank, rank);
  for (std::size_t r = 0; r < rank; ++r) u(r, r) = std::polar(1.0, two_pi() * double(pick(gen)) / double(n));
  if (kind < 2) {
    g = make_group(cyclic(n));
    maps[named(*g, "g")] = rot;
  } else {
    g = make_group(dihedral(n));
    maps[named(*g, "r")] = rot;
    maps[named(*g, "s")] = uniform_map(copies, Turn(pick(gen), 8), -1);
    fiber[named(*g, "s")] = Matrix::Identity(rank, rank);
    for (std::size_t r = 0; r < rank; ++r) u(r, r) = pick(gen) % 2 ? 1.0 : -1.0;  // s r s = r^-1 needs u = u^-1
  }
  fiber[kind < 2 ? named(*g, "g") : named(*g, "r")] = u;
  auto act = make_action(g, copies, maps, rank, fiber);
  std::map<Element, TrigMatrixSymbol> sym;
  std::bernoulli_distribution present(0.7);
  for (Element a = 0; a < g->order(); ++a)
    if (present(gen)) sym.emplace(a, random_symbol(gen, copies, degree, 1.0, rank));
  return make_data(act, sym);
}

bool reverses_orientation(const IsometricAction& a) {
  for (const auto& m : a.maps)
    for (const auto& c : m.per_copy)
      if (c.orientation < 0) return true;
  return false;
}

// Retries the draw when the rotation/character combination is not a homomorphism.
GammaSymbolData draw(std::mt19937_64& gen, int degree) {
  for (;;) {
    try {
      return random_scenario(gen, degree);
    } catch (const Error&) {
    }
  }
}

TEST(Properties, UniformizationResidualVanishes) {
  std::mt19937_64 gen(101);
  for (int i = 0; i < 12; ++i) {
    const GammaSymbolData d = draw(gen, 2);
    const UniformizedDiscretization u = assemble_uniformized(d, 16);
    EXPECT_LT(u.residual, 1e-10) << "draw " << i;
    // A reflection swaps P+ with the modes -(N/2-1)..0, so quantizing the
    // twisted blocks only matches the operator for orientation-preserving actions.
    if (!reverses_orientation(*d.action)) {
      EXPECT_LT(u.convention_residual, 1e-10) << "draw " << i;
    }
  }
}

TEST(Properties, IntertwiningIsExact) {
  std::mt19937_64 gen(102);
  for (int i = 0; i < 12; ++i) {
    const GammaSymbolData d = draw(gen, 0);
    const IsometricAction& a = *d.action;
    const Matrix q = fiber_q(a);
    EXPECT_LE(max_abs_diff(q * q, Matrix::Identity(q.rows(), q.cols())), 1e-14);
    const MonomialOp qn = q_operator(a, 8);
    for (Element g = 0; g < a.G().order(); ++g) {
      EXPECT_LE(max_abs_diff(q * right_matrix(a, g), tl_matrix(a, g) * q), 1e-14);
      EXPECT_LE(distance(compose(qn, right_operator(a, g, 8)), compose(tl_operator(a, g, 8), qn)), 1e-14);
    }
  }
}

TEST(Properties, ShiftsFormARepresentation) {
  std::mt19937_64 gen(103);
  for (int i = 0; i < 8; ++i) {
    const GammaSymbolData d = draw(gen, 0);
    const FiniteGroup& g = d.G();
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        EXPECT_LT(max_abs_diff(discretize_shift(*d.action, a, 8) * discretize_shift(*d.action, b, 8),
                               discretize_shift(*d.action, g.mul(a, b), 8)),
                  1e-14);
  }
}

TEST(Properties, EquivarianceHolds) {
  std::mt19937_64 gen(104);
  std::uniform_real_distribution<double> angle(0.0, two_pi());
  for (int i = 0; i < 12; ++i) {
    const GammaSymbolData d = draw(gen, 3);
    for (int j = 0; j < 10; ++j) {
      const CotangentPoint p{static_cast<std::size_t>(j) % d.action->copies(), angle(gen), j % 2 ? 1 : -1};
      for (Element g = 0; g < d.G().order(); ++g) EXPECT_LT(equivariance_defect(d, g, p), 1e-10);
    }
  }
}

TEST(Properties, UniformizedSymbolIsLinearInTheFamily) {
  std::mt19937_64 gen(105);
  const GammaSymbolData d1 = draw(gen, 1);
  GammaSymbolData d2{d1.action, {}};
  for (Element a = 0; a < d1.G().order(); ++a)
    d2.symbols.emplace(a, random_symbol(gen, d1.action->copies(), 1, 1.0, d1.rank()));
  GammaSymbolData sum{d1.action, d2.symbols};
  for (const auto& [a, s] : d1.symbols) sum.symbols.at(a) += s;
  const CotangentPoint p{0, 1.234, -1};
  EXPECT_LT(max_abs_diff(uniformized_symbol(sum, p), uniformized_symbol(d1, p) + uniformized_symbol(d2, p)), 1e-12);
}

TEST(Properties, OverallVerdictIsConjunctionOfComponents) {
  std::mt19937_64 gen(106);
  for (int i = 0; i < 10; ++i) {
    const GammaSymbolData d = draw(gen, 1);
    AnalysisOptions o;
    o.samples = 64;
    const FredholmVerdict v = analyze(d, o);
    bool all = true, any_not = false;
    for (const auto& c : v.components) {
      all = all && c.verdict == Verdict::Fredholm;
      any_not = any_not || c.verdict == Verdict::NotFredholm;
    }
    if (all) {
      EXPECT_EQ(v.overall, Verdict::Fredholm);
    }
    if (any_not) {
      EXPECT_EQ(v.overall, Verdict::NotFredholm);
    }
    if (v.ellipticity.elliptic) {
      EXPECT_EQ(v.overall, Verdict::Fredholm);
    }
  }
}

TEST(Properties, OperatorAdjointMatchesAdjointFamily) {
  // For a trivial-group scenario, discretizing is linear in the symbol.
  std::mt19937_64 gen(107);
  auto g = make_group(cyclic(1));
  auto act = make_action(g, 2, {});
  const TrigMatrixSymbol a = random_symbol(gen, 2, 2), b = random_symbol(gen, 2, 3);
  const Matrix lhs = discretize_symbol_op(a + b.scaled({0.0, 2.0}), 16);
  const Matrix rhs = discretize_symbol_op(a, 16) + cplx(0.0, 2.0) * discretize_symbol_op(b, 16);
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
}

}  // namespace
}  // namespace shiftsym
