#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "shiftsym/kernels.hpp"

namespace shiftsym::kernels {
namespace {

constexpr double kTol = 1e-12;

struct Inputs {
  std::vector<cplx> coeffs, a, b;
  std::vector<double> theta;
};

Inputs random_inputs(std::size_t len, int degree, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Inputs in;
  in.coeffs.resize(2 * degree + 1);
  for (auto& c : in.coeffs) c = {nd(gen), nd(gen)};
  in.a.resize(len);
  in.b.resize(len);
  in.theta.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    in.a[i] = {nd(gen), nd(gen)};
    in.b[i] = {nd(gen), nd(gen)};
    in.theta[i] = 10.0 * nd(gen);
  }
  return in;
}

TEST(ScalarKernels, TrigEvalMatchesDirectSum) {
  const Inputs in = random_inputs(17, 3, 1);
  std::vector<cplx> out(in.theta.size());
  scalar::trig_eval(in.coeffs, in.theta, out);
  for (std::size_t j = 0; j < out.size(); ++j) {
    cplx expect = 0;
    for (int m = -3; m <= 3; ++m) expect += in.coeffs[m + 3] * std::polar(1.0, m * in.theta[j]);
    EXPECT_LT(std::abs(out[j] - expect), 1e-12);
  }
}

TEST(ScalarKernels, CombineAxpyAndDiff) {
  const Inputs in = random_inputs(9, 0, 2);
  std::vector<cplx> out(9), y = in.b;
  scalar::combine({2.0, 1.0}, in.a, {0.0, -1.0}, in.b, out);
  scalar::axpy({0.5, 0.5}, in.a, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_LT(std::abs(out[i] - (cplx(2.0, 1.0) * in.a[i] + cplx(0.0, -1.0) * in.b[i])), kTol);
    EXPECT_LT(std::abs(y[i] - (in.b[i] + cplx(0.5, 0.5) * in.a[i])), kTol);
    worst = std::max(worst, std::abs(in.a[i] - in.b[i]));
  }
  EXPECT_DOUBLE_EQ(scalar::max_abs_diff(in.a, in.b), worst);
  EXPECT_EQ(scalar::max_abs_diff({}, {}), 0.0);
}

class Avx2Equivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    if (!avx2::available()) GTEST_SKIP() << "no AVX2 on this machine";
  }
};

TEST_P(Avx2Equivalence, AllKernelsAgreeWithScalar) {
  const std::size_t len = GetParam();
  for (int degree : {0, 1, 4}) {
    const Inputs in = random_inputs(len, degree, 100 + len);
    std::vector<cplx> s(len), v(len);
    scalar::trig_eval(in.coeffs, in.theta, s);
    avx2::trig_eval(in.coeffs, in.theta, v);
    EXPECT_LT(scalar::max_abs_diff(s, v), kTol) << "trig_eval degree " << degree;
  }
  const Inputs in = random_inputs(len, 0, 200 + len);
  std::vector<cplx> s(len), v(len);
  scalar::combine({1.5, -0.5}, in.a, {0.25, 2.0}, in.b, s);
  avx2::combine({1.5, -0.5}, in.a, {0.25, 2.0}, in.b, v);
  EXPECT_LT(scalar::max_abs_diff(s, v), kTol) << "combine";

  std::vector<cplx> ys = in.b, yv = in.b;
  scalar::axpy({-0.75, 0.5}, in.a, ys);
  avx2::axpy({-0.75, 0.5}, in.a, yv);
  EXPECT_LT(scalar::max_abs_diff(ys, yv), kTol) << "axpy";

  EXPECT_NEAR(scalar::max_abs_diff(in.a, in.b), avx2::max_abs_diff(in.a, in.b), kTol) << "max_abs_diff";
}

INSTANTIATE_TEST_SUITE_P(Lengths, Avx2Equivalence, ::testing::Range<std::size_t>(0, 34));

TEST(Dispatch, ActiveTableIsOneOfTheVariants) {
  const KernelTable& t = active();
  EXPECT_TRUE(t.isa == "scalar" || t.isa == "avx2");
  EXPECT_EQ(scalar_table().isa, "scalar");
  if (avx2::available()) {
    EXPECT_NE(avx2_table(), nullptr);
  }
}

}  // namespace
}  // namespace shiftsym::kernels
