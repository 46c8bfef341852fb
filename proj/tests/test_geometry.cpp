#include <cmath>

#include <gtest/gtest.h>

#include "shiftsym/error.hpp"
#include "shiftsym/geometry.hpp"
#include "support.hpp"

namespace shiftsym {
namespace {

using namespace shiftsym::testing;

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const IsometricAction> antipodal_action(std::size_t copies = 1) {
  auto g = make_group(cyclic(2));
  return make_action(g, copies, {{named(*g, "g"), uniform_map(copies, Turn(1, 2))}});
}

std::shared_ptr<const IsometricAction> reflection_action() {
  auto g = make_group(cyclic(2));
  return make_action(g, 1, {{named(*g, "g"), uniform_map(1, Turn(0, 1), -1)}});
}

TEST(TurnAngles, ParseReduceAndHalve) {
  EXPECT_EQ(Turn::parse("2/4"), Turn(1, 2));
  EXPECT_EQ(Turn::parse("3/2"), Turn(1, 2));
  EXPECT_EQ(Turn::parse("-1/4"), Turn(3, 4));
  EXPECT_EQ(Turn(1, 2) + Turn(1, 2), Turn(0, 1));
  EXPECT_NEAR(Turn(1, 4).radians(), kPi / 2, 1e-15);
  const auto [h0, h1] = Turn(1, 2).halves();
  EXPECT_EQ(h0, Turn(1, 4));
  EXPECT_EQ(h1, Turn(3, 4));
  EXPECT_THROW(Turn::parse("0.5"), Error);
}

TEST(BuildAction, AntipodalSquaresToIdentity) {
  auto act = antipodal_action();
  const Element g = named(act->G(), "g");
  EXPECT_EQ(act->maps[g].per_copy[0], (CopyMap{Turn(1, 2), 1}));
  EXPECT_TRUE(compose(act->maps[g], act->maps[g]).is_identity());
}

TEST(BuildAction, ReflectionIsValid) {
  auto act = reflection_action();
  const Element g = named(act->G(), "g");
  EXPECT_EQ(act->maps[g].per_copy[0].orientation, -1);
  EXPECT_TRUE(compose(act->maps[g], act->maps[g]).is_identity());
}

TEST(BuildAction, OrderMismatchIsNotAHomomorphism) {
  auto g = make_group(cyclic(3));
  try {
    make_action(g, 1, {{named(*g, "g"), uniform_map(1, Turn(1, 2))}});
    FAIL() << "expected NotAHomomorphism";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAHomomorphism);
  }
}

TEST(BuildAction, BadPermutationRejected) {
  auto g = make_group(cyclic(2));
  IsometryDescriptor d = IsometryDescriptor::identity(2);
  d.copy_perm = {0, 0};
  try {
    make_action(g, 2, {{named(*g, "g"), d}});
    FAIL() << "expected BadPermutation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadPermutation);
  }
}

TEST(BuildAction, DihedralOnCircleCompletes) {
  // D4 by rotations of a quarter turn and the reflection theta -> -theta.
  auto g = make_group(dihedral(4));
  auto act = make_action(g, 1, {{named(*g, "r"), uniform_map(1, Turn(1, 4))}, {named(*g, "s"), uniform_map(1, Turn(0, 1), -1)}});
  for (Element a = 0; a < g->order(); ++a)
    for (Element b = 0; b < g->order(); ++b)
      EXPECT_EQ(compose(act->maps[a], act->maps[b]), act->maps[g->mul(a, b)]);
}

TEST(Isotropy, ReflectionPoints) {
  auto act = reflection_action();
  EXPECT_EQ(isotropy_group(*act, 0, 0.0), Subgroup::whole(act->G()));
  EXPECT_EQ(isotropy_group(*act, 0, 1.0), Subgroup::trivial(act->G()));
  EXPECT_EQ(isotropy_group(*act, 0, Turn(1, 2)), Subgroup::whole(act->G()));
}

TEST(Isotropy, KleinIsotropyIsB) {
  const Klein k = klein();
  const Subgroup eb = Subgroup::make(*k.group, {k.e, k.b});
  for (double theta : {0.0, 0.3, 2.0, 5.9}) EXPECT_EQ(isotropy_group(*k.action, 0, theta), eb);
}

TEST(MinimalIsotropy, Examples) {
  auto anti = antipodal_action();
  EXPECT_EQ(minimal_isotropy(*anti, {0}).gamma0, Subgroup::trivial(anti->G()));

  auto g = make_group(cyclic(2));
  auto triv = make_action(g, 1, {});
  EXPECT_EQ(minimal_isotropy(*triv, {0}).gamma0, Subgroup::whole(*g));

  const Klein k = klein();
  const IsotropyReport r = minimal_isotropy(*k.action, {0});
  EXPECT_EQ(r.gamma0, Subgroup::make(*k.group, {k.e, k.b}));
  EXPECT_TRUE(r.verified);

  auto refl = reflection_action();
  const IsotropyReport rr = minimal_isotropy(*refl, {0});
  EXPECT_EQ(rr.gamma0, Subgroup::trivial(refl->G()));
  EXPECT_EQ(rr.special_points.at(0), (std::vector<Turn>{Turn(0, 1), Turn(1, 2)}));
}

TEST(QuotientComponents, Examples) {
  EXPECT_EQ(quotient_components(*antipodal_action()).size(), 1u);
  auto g = make_group(cyclic(2));
  auto swapped = make_action(g, 2, {{named(*g, "g"), swap_copies()}});
  EXPECT_EQ(quotient_components(*swapped), (std::vector<std::vector<std::size_t>>{{0, 1}}));
  auto trivial2 = make_action(g, 2, {});
  EXPECT_EQ(quotient_components(*trivial2), (std::vector<std::vector<std::size_t>>{{0}, {1}}));
}

TEST(CotangentAction, Examples) {
  auto refl = reflection_action();
  const Element g = named(refl->G(), "g");
  const CotangentPoint p{0, 1.0, 1};
  EXPECT_EQ(cotangent_action(*refl, refl->G().identity(), p), p);
  const CotangentPoint q = cotangent_action(*refl, g, p);
  EXPECT_TRUE(same_point(q, {0, 2 * kPi - 1.0, -1}));

  auto anti = antipodal_action();
  const CotangentPoint r = cotangent_action(*anti, g, {0, 0.5, 1});
  EXPECT_TRUE(same_point(r, {0, 0.5 + kPi, 1}));
}

TEST(CotangentAction, IsAGroupAction) {
  auto g = make_group(dihedral(3));
  auto act = make_action(g, 1, {{named(*g, "r"), uniform_map(1, Turn(1, 3))}, {named(*g, "s"), uniform_map(1, Turn(1, 5), -1)}});
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(0.0, two_pi());
  for (int i = 0; i < 20; ++i) {
    const CotangentPoint p{0, angle(gen), i % 2 ? 1 : -1};
    for (Element a = 0; a < g->order(); ++a)
      for (Element b = 0; b < g->order(); ++b)
        EXPECT_TRUE(same_point(cotangent_action(*act, a, cotangent_action(*act, b, p)),
                               cotangent_action(*act, g->mul(a, b), p)));
  }
}

TEST(FixedSphere, TrivialIsotropyCoversEverything) {
  auto anti = antipodal_action(2);
  const SphereSample s = sample_fixed_sphere(*anti, Subgroup::trivial(anti->G()), 16, 0);
  EXPECT_EQ(s.size(), 2u * 2u * 16u);
  const Klein k = klein();
  const SphereSample t = sample_fixed_sphere(*k.action, Subgroup::make(*k.group, {k.e, k.b}), 16, 0);
  EXPECT_EQ(t.size(), 2u * 16u);
}

TEST(FixedSphere, ReflectionHasNoFixedCovectors) {
  auto refl = reflection_action();
  const SphereSample s = sample_fixed_sphere(*refl, Subgroup::whole(refl->G()), 16, 0);
  EXPECT_EQ(s.size(), 0u);
}

TEST(FixedSphere, EmptyFixedSetThrows) {
  auto anti = antipodal_action();
  try {
    sample_fixed_sphere(*anti, Subgroup::whole(anti->G()), 8, 0);
    FAIL() << "expected EmptyFixedSet";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyFixedSet);
  }
}

TEST(FixedSphere, SeedShiftsTheGrid) {
  auto anti = antipodal_action();
  const auto a = sample_sphere(*anti, 8, 1).points();
  const auto b = sample_sphere(*anti, 8, 1).points();
  const auto c = sample_sphere(*anti, 8, 2).points();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Transversal, Examples) {
  const Eigen::MatrixXd f = transversal_fiber({Eigen::Vector2d(1, 0)}, 2);
  ASSERT_EQ(f.cols(), 1);
  EXPECT_NEAR(f(0, 0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f(1, 0)), 1.0, 1e-14);
  EXPECT_EQ(transversal_fiber({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)}, 2).cols(), 0);
  EXPECT_EQ(transversal_fiber({}, 2).cols(), 2);
}

TEST(Transversal, ClopenVerdicts) {
  const auto torus = detect_clopen_orbits(std::vector<Eigen::MatrixXd>(4, transversal_fiber({Eigen::Vector2d(1, 0)}, 2)));
  EXPECT_EQ(torus.kind, ClopenVerdict::Kind::Empty);
  const auto circle = detect_clopen_orbits(std::vector<Eigen::MatrixXd>(4, transversal_fiber({Eigen::VectorXd::Ones(1)}, 1)));
  EXPECT_EQ(circle.kind, ClopenVerdict::Kind::All);
  // Finite group: no infinitesimal generators, the fiber is all of T*M.
  const auto finite = detect_clopen_orbits(std::vector<Eigen::MatrixXd>(4, transversal_fiber({}, 1)));
  EXPECT_EQ(finite.kind, ClopenVerdict::Kind::Empty);
}

}  // namespace
}  // namespace shiftsym
