#include <cmath>

#include <gtest/gtest.h>

#include "shiftsym/error.hpp"
#include "shiftsym/oracle.hpp"
#include "support.hpp"

namespace shiftsym {
namespace {

using namespace shiftsym::testing;

template <typename F>
void expect_error(ErrorKind kind, F&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

// Unitary DFT on N points: (F s)_m = N^-1/2 sum_j s_j e^{-2 pi i m j / N}.
Matrix dft(std::size_t n) {
  Matrix f(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = 0; j < n; ++j)
      f(m, j) = std::polar(1.0 / std::sqrt(double(n)), -two_pi() * double(m * j) / double(n));
  return f;
}

// Projector onto Fourier modes 0..N/2-1 from an explicit DFT.
Matrix positive_projector(std::size_t n) {
  const Matrix f = dft(n);
  Matrix d = Matrix::Zero(n, n);
  for (std::size_t m = 0; m < n / 2; ++m) d(m, m) = 1.0;
  return f.adjoint() * d * f;
}

GammaSymbolData scalar_trivial(const TrigMatrixSymbol& a) {
  auto g = make_group(cyclic(1));
  return make_data(make_action(g, 1, {}), {{0, a}});
}

TEST(CheckGrid, RejectsBadSizesAndAngles) {
  const GammaSymbolData d = antipodal(2.0, 1.0);
  expect_error(ErrorKind::BadGrid, [&] { check_grid(*d.action, 12); });
  expect_error(ErrorKind::BadGrid, [&] { check_grid(*d.action, 1); });
  EXPECT_NO_THROW(check_grid(*d.action, 8));
  auto g = make_group(cyclic(3));
  auto act = make_action(g, 1, {{named(*g, "g"), uniform_map(1, Turn(1, 3))}});
  expect_error(ErrorKind::IncommensurableAngle, [&] { discretize_shift(*act, named(*g, "g"), 8); });
}

TEST(DiscretizeSymbol, ConstantIsScalarMultiple) {
  const Matrix m = discretize_symbol_op(constant(1, {2.0, -1.0}), 16);
  EXPECT_LT(max_abs_diff(m, cplx(2.0, -1.0) * Matrix::Identity(16, 16)), 1e-14);
}

TEST(DiscretizeSymbol, SignSymbolIsUnitaryInvolution) {
  const std::size_t n = 32;
  const Matrix m = discretize_symbol_op(branches(1, {{0, 1.0}}, {{0, -1.0}}), n);
  const Matrix pp = positive_projector(n);
  const Matrix id = Matrix::Identity(n, n);
  EXPECT_LT(max_abs_diff(m, pp - (id - pp)), 1e-12);
  EXPECT_LT(max_abs_diff(m * m, id), 1e-12);
  EXPECT_LT(max_abs_diff(m.adjoint() * m, id), 1e-12);
}

TEST(DiscretizeSymbol, MultiplierOnEachBranch) {
  const std::size_t n = 16;
  const TrigMatrixSymbol a = branches(1, {{1, 1.0}, {0, 0.5}}, {{-2, 2.0}});
  const Matrix pp = positive_projector(n), id = Matrix::Identity(n, n);
  Matrix mp = Matrix::Zero(n, n), mm = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = two_pi() * double(j) / double(n);
    mp(j, j) = a.eval(0, t, 1)(0, 0);
    mm(j, j) = a.eval(0, t, -1)(0, 0);
  }
  EXPECT_LT(max_abs_diff(discretize_symbol_op(a, n), mp * pp + mm * (id - pp)), 1e-12);
}

TEST(DiscretizeShift, Examples) {
  const GammaSymbolData d = antipodal(2.0, 1.0);
  EXPECT_EQ(max_abs_diff(discretize_shift(*d.action, 0, 8), Matrix::Identity(8, 8)), 0.0);
  const Matrix t = discretize_shift(*d.action, 1, 8);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(t(j, (j + 4) % 8), cplx(1.0));
  EXPECT_NEAR(t.cwiseAbs().sum(), 8.0, 0.0);
}

TEST(DiscretizeShift, IsARepresentation) {
  auto g = make_group(dihedral(4));
  Matrix u(1, 1);
  u(0, 0) = -1.0;
  IsometryDescriptor flip = uniform_map(2, Turn(3, 8), -1);
  flip.copy_perm = {1, 0};
  auto act = make_action(g, 2, {{named(*g, "r"), uniform_map(2, Turn(1, 4))}, {named(*g, "s"), flip}}, 1,
                         {{named(*g, "s"), u}});
  for (Element a = 0; a < g->order(); ++a)
    for (Element b = 0; b < g->order(); ++b)
      EXPECT_LT(max_abs_diff(discretize_shift(*act, a, 8) * discretize_shift(*act, b, 8),
                             discretize_shift(*act, g->mul(a, b), 8)),
                1e-15);
}

TEST(Assemble, KleinIsTwiceIdentity) {
  const Klein k = klein();
  const GammaSymbolData d = make_data(k.action, {{k.e, constant(1, 1.0)}, {k.b, constant(1, 1.0)}});
  for (std::size_t n : {64u, 128u}) {
    const DiscretizedOperator op = assemble_gamma_operator(d, n);
    EXPECT_EQ(op.dimension, n);
    EXPECT_LT(max_abs_diff(op.matrix, 2.0 * Matrix::Identity(n, n)), 1e-14);
  }
}

TEST(Assemble, TrivialConstant) {
  const DiscretizedOperator op = assemble_gamma_operator(scalar_trivial(constant(1, 3.5)), 32);
  EXPECT_LT(max_abs_diff(op.matrix, 3.5 * Matrix::Identity(32, 32)), 1e-14);
}

TEST(Assemble, AntipodalSmallestSingularValue) {
  const DiscretizedOperator op = assemble_gamma_operator(antipodal(2.0, 1.0), 64);
  EXPECT_NEAR(min_singular(op.matrix), 1.0, 1e-10);
}

TEST(MonomialOps, DenseAgreesWithApplyAndAdjoint) {
  const GammaSymbolData d = antipodal(2.0, 1.0);
  const MonomialOp q = q_operator(*d.action, 8);
  const Matrix dense = q.dense();
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd;
  Matrix x(dense.cols(), 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = {nd(gen), nd(gen)};
  EXPECT_LT(max_abs_diff(q.apply(x), dense * x), 1e-14);
  EXPECT_LT(max_abs_diff(q.adjoint().dense(), dense.adjoint()), 1e-15);
  EXPECT_LT(max_abs_diff(times(x.adjoint(), q), x.adjoint() * dense), 1e-14);
}

TEST(MonomialOps, InvariantIsometry) {
  const Klein k = klein();
  const Matrix v = invariant_isometry(*k.action, 16);
  EXPECT_LT(max_abs_diff(v.adjoint() * v, Matrix::Identity(16, 16)), 1e-14);
  for (Element g = 0; g < 4; ++g) EXPECT_LT(max_abs_diff(tl_operator(*k.action, g, 16).dense() * v, v), 1e-14);
}

TEST(Uniformization, TrivialGroupResidualIsZero) {
  std::mt19937_64 gen(9);
  const UniformizedDiscretization u = assemble_uniformized(scalar_trivial(random_symbol(gen, 1, 2)), 32);
  EXPECT_LT(u.residual, 1e-13);
  EXPECT_LT(u.convention_residual, 1e-13);
}

TEST(Uniformization, ConventionPin) {
  auto g = make_group(cyclic(2));
  auto act = make_action(g, 1, {{1, uniform_map(1, Turn(1, 2))}});
  const GammaSymbolData d = make_data(act, {{0, constant(1, 2.0)}, {1, branches(1, {{1, 1.0}}, {{1, 1.0}})}});
  const UniformizedDiscretization u = assemble_uniformized(d, 64);
  EXPECT_LT(u.residual, 1e-10);
  EXPECT_LT(u.convention_residual, 1e-10);
  EXPECT_LT(u.symbol_hat_difference, 1e-10);
  EXPECT_GT(assemble_uniformized(d, 64, EgorovConvention::NoPullback).convention_residual, 0.1);
}

TEST(Uniformization, ReversedEgorovDirectionFails) {
  // A quarter-turn rotation distinguishes h^-1 xi from h xi.
  auto g = make_group(cyclic(4));
  auto act = make_action(g, 1, {{named(*g, "g"), uniform_map(1, Turn(1, 4))}});
  const GammaSymbolData d = make_data(act, {{0, constant(1, 3.0)}, {named(*g, "g"), branches(1, {{1, 1.0}}, {{-1, 1.0}})}});
  const UniformizedDiscretization ok = assemble_uniformized(d, 32);
  EXPECT_LT(ok.residual, 1e-10);
  EXPECT_LT(ok.convention_residual, 1e-10);
  EXPECT_GT(assemble_uniformized(d, 32, EgorovConvention::PullbackForward).convention_residual, 0.1);
}

TEST(SingularSweep, ZeroScenarioIsAllKernel) {
  const GammaSymbolData d = antipodal(0.0, 0.0);
  const auto rows = singular_sweep(d, {16, 32});
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.sigma_min, 0.0);
    EXPECT_EQ(r.count_below, r.dimension);
  }
  EXPECT_EQ(oracle_verdict(rows), Verdict::NotFredholm);
}

TEST(SingularSweep, CsvHeader) {
  const auto rows = singular_sweep(antipodal(2.0, 1.0), {16});
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "N,sigma_min,count_below_eps,residual");
}

TEST(OracleVerdict, Heuristic) {
  auto row = [](std::size_t n, std::size_t count, double gap) {
    SweepRow r;
    r.n = n;
    r.count_below = r.count_below_tight = r.count_below_loose = count;
    r.gap = gap;
    r.sigma_min = count ? 0.0 : gap;
    return r;
  };
  EXPECT_EQ(oracle_verdict({row(64, 0, 1.0), row(512, 0, 0.95)}), Verdict::Fredholm);
  EXPECT_EQ(oracle_verdict({row(64, 0, 1.0), row(512, 0, 0.5)}), Verdict::NotFredholm);
  EXPECT_EQ(oracle_verdict({row(64, 4, 1.0), row(512, 8, 1.0)}), Verdict::NotFredholm);
  EXPECT_EQ(oracle_verdict({row(64, 1, 1.0), row(512, 1, 1.0)}), Verdict::Fredholm);
  EXPECT_EQ(oracle_verdict({row(64, 0, 1.0)}), Verdict::Fredholm);
  EXPECT_EQ(oracle_verdict({row(64, 3, 1.0)}), Verdict::Marginal);
}

TEST(Index, InvertibleSymbolHasIndexZero) {
  const IndexResult r = numerical_index(antipodal(2.0, 1.0), 64);
  EXPECT_EQ(r.index, 0);
}

TEST(Index, ToeplitzPinAndReflection) {
  const IndexResult plus = numerical_index(scalar_trivial(branches(1, {{1, 1.0}}, {{0, 1.0}})), 256);
  EXPECT_EQ(plus.index, -1);
  EXPECT_TRUE(plus.confident);
  const IndexResult minus = numerical_index(scalar_trivial(branches(1, {{-1, 1.0}}, {{0, 1.0}})), 256);
  EXPECT_EQ(minus.index, 1);
}

TEST(Index, NotFredholmRejected) {
  expect_error(ErrorKind::NotFredholmScenario, [] { numerical_index(antipodal(1.0, 1.0), 64); });
}

TEST(Winding, Examples) {
  EXPECT_EQ(winding_number(branches(1, {{1, 1.0}}, {{0, 1.0}})), 1);
  EXPECT_EQ(winding_number(constant(1, 2.0)), 0);
  EXPECT_EQ(winding_number(branches(1, {{0, 1.0}}, {{2, 1.0}})), -2);
  expect_error(ErrorKind::VanishingSymbol, [] { winding_number(branches(1, {{0, 1.0}, {1, 1.0}}, {{0, 1.0}})); });
}

}  // namespace
}  // namespace shiftsym
