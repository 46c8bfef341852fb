#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "shiftsym/commands.hpp"
#include "shiftsym/error.hpp"
#include "shiftsym/fixtures.hpp"
#include "shiftsym/kernels.hpp"

namespace shiftsym {

namespace {

constexpr std::size_t kCheckGrid = 64;
constexpr double kResidualTolerance = 1e-10;
constexpr double kExactTolerance = 1e-14;
constexpr double kEquivarianceLimit = 1e-10;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

// Q^2 = I and Q (1 (x) R_gamma) = (T_gamma (x) L_gamma) Q on the fiber and on the grid.
double intertwining_defect(const IsometricAction& action, std::size_t n) {
  double worst = 0.0;
  const Matrix fq = fiber_q(action);
  worst = std::max(worst, max_abs_diff(fq * fq, Matrix::Identity(fq.rows(), fq.cols())));
  const MonomialOp q = q_operator(action, n);
  const std::size_t points = action.G().order() * action.copies() * n;
  worst = std::max(worst, distance(compose(q, q), identity_op(points, action.fiber_rank, n)));
  for (Element g = 0; g < action.G().order(); ++g) {
    worst = std::max(worst, max_abs_diff(fq * right_matrix(action, g), tl_matrix(action, g) * fq));
    worst = std::max(worst, distance(compose(q, right_operator(action, g, n)), compose(tl_operator(action, g, n), q)));
  }
  return worst;
}

double equivariance_sweep(const GammaSymbolData& data, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<std::size_t> copy(0, data.action->copies() - 1);
  std::bernoulli_distribution sign(0.5);
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const CotangentPoint p{copy(gen), angle(gen), sign(gen) ? 1 : -1};
    for (Element g = 0; g < data.G().order(); ++g) worst = std::max(worst, equivariance_defect(data, g, p));
  }
  return worst;
}

template <typename F>
CheckResult guarded(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return check(name, false, e.what());
  }
}

std::vector<CheckResult> fixture_checks(const BuiltinFixture& f) {
  std::vector<CheckResult> out;
  const std::string prefix = std::string(f.name) + ": ";
  Scenario s;
  try {
    s = load_builtin(f.name);
  } catch (const std::exception& e) {
    out.push_back(check(prefix + "parse", false, e.what()));
    return out;
  }
  out.push_back(guarded(prefix + "verdict", [&] {
    const FredholmVerdict v = analyze(s.data, s.options.analysis());
    return check(prefix + "verdict", v.overall == f.verdict && v.classification == f.classification,
                 to_string(v.classification) + ", expected " + to_string(f.classification));
  }));
  out.push_back(guarded(prefix + "uniformization", [&] {
    const UniformizedDiscretization u = assemble_uniformized(s.data, kCheckGrid);
    return check(prefix + "uniformization",
                 u.residual < kResidualTolerance && u.convention_residual < kResidualTolerance,
                 "residual " + sci(u.residual) + ", symbol-assembled " + sci(u.convention_residual));
  }));
  out.push_back(guarded(prefix + "intertwining", [&] {
    const double d = intertwining_defect(*s.data.action, kCheckGrid);
    return check(prefix + "intertwining", d <= kExactTolerance, "defect " + sci(d));
  }));
  out.push_back(guarded(prefix + "equivariance", [&] {
    const double d = equivariance_sweep(s.data, 20, s.options.seed);
    return check(prefix + "equivariance", d < kEquivarianceLimit, "defect " + sci(d));
  }));
  out.push_back(guarded(prefix + "oracle agreement", [&] {
    const Report r = cmd_compare(s, OracleFlags{{64, 128, 256}, std::nullopt});
    return check(prefix + "oracle agreement", r.agreement == Agreement::Agree,
                 to_string(r.analysis->overall) + " vs oracle " + to_string(r.oracle->verdict));
  }));
  return out;
}

}  // namespace

TransversalDemo torus_rotation_demo(std::size_t points) {
  // The circle acts on T^2 by rotating the first factor: Y = d/dtheta1 everywhere.
  TransversalDemo d;
  for (std::size_t i = 0; i < points; ++i) d.fibers.push_back(transversal_fiber({Eigen::Vector2d(1.0, 0.0)}, 2));
  d.verdict = detect_clopen_orbits(d.fibers);
  return d;
}

TransversalDemo circle_rotation_demo(std::size_t points) {
  TransversalDemo d;
  for (std::size_t i = 0; i < points; ++i)
    d.fibers.push_back(transversal_fiber({Eigen::VectorXd::Ones(1)}, 1));
  d.verdict = detect_clopen_orbits(d.fibers);
  return d;
}

Report cmd_selftest() {
  Report r;
  r.command = "selftest";
  r.conventions = default_conventions();
  for (const auto& f : builtin_fixtures())
    for (auto& c : fixture_checks(f)) r.checks.push_back(std::move(c));

  r.checks.push_back(guarded("kernels: scalar and avx2 agree", [] {
    const kernels::KernelTable* v = kernels::avx2_table();
    if (v == nullptr) return check("kernels: scalar and avx2 agree", true, "avx2 unavailable, scalar only");
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    std::vector<cplx> coeffs(9), a(37), b(37), out_s(37), out_v(37);
    std::vector<double> theta(37);
    for (auto& c : coeffs) c = {nd(gen), nd(gen)};
    for (std::size_t i = 0; i < theta.size(); ++i) {
      theta[i] = nd(gen);
      a[i] = {nd(gen), nd(gen)};
      b[i] = {nd(gen), nd(gen)};
    }
    kernels::scalar_table().trig_eval(coeffs, theta, out_s);
    v->trig_eval(coeffs, theta, out_v);
    double d = kernels::scalar::max_abs_diff(out_s, out_v);
    kernels::scalar_table().combine({1.5, -0.5}, a, {0.25, 2.0}, b, out_s);
    v->combine({1.5, -0.5}, a, {0.25, 2.0}, b, out_v);
    d = std::max(d, kernels::scalar::max_abs_diff(out_s, out_v));
    d = std::max(d, std::abs(kernels::scalar_table().max_abs_diff(a, b) - v->max_abs_diff(a, b)));
    return check("kernels: scalar and avx2 agree", d < 1e-12, "max difference " + sci(d));
  }));

  r.checks.push_back(guarded("index: toeplitz pin", [] {
    auto group = std::make_shared<const FiniteGroup>(build_group({GroupDescriptor::Cyclic{1}}));
    GammaSymbolData data;
    data.action = std::make_shared<const IsometricAction>(build_action(group, {}, {}, 1));
    TrigMatrixSymbol a(1, 1);
    a.set_coeff(0, 1, 0, 0, 1, 1.0);
    a.set_coeff(0, -1, 0, 0, 0, 1.0);
    data.symbols.emplace(group->identity(), a);
    const IndexResult idx = numerical_index(data, 256);
    const long w = winding_number(a);
    return check("index: toeplitz pin", idx.index == kIndexSign * w && w == 1,
                 "index " + std::to_string(idx.index) + ", winding " + std::to_string(w));
  }));

  r.checks.push_back(guarded("transversal: torus rotation", [] {
    const TransversalDemo d = torus_rotation_demo();
    bool span_ok = true;
    for (const auto& f : d.fibers)
      span_ok = span_ok && f.cols() == 1 && std::abs(f(0, 0)) < 1e-12 && std::abs(std::abs(f(1, 0)) - 1.0) < 1e-12;
    return check("transversal: torus rotation", d.verdict.kind == ClopenVerdict::Kind::Empty && span_ok,
                 "clopen set empty, fiber span{(0,1)}");
  }));
  r.checks.push_back(guarded("transversal: circle on itself", [] {
    const TransversalDemo d = circle_rotation_demo();
    return check("transversal: circle on itself", d.verdict.kind == ClopenVerdict::Kind::All, "clopen set is M");
  }));
  return r;
}

}  // namespace shiftsym
