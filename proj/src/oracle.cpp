#include "shiftsym/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shiftsym/error.hpp"
#include "shiftsym/kernels.hpp"
#include "shiftsym/parallel.hpp"

namespace shiftsym {

namespace {

using Idx = Eigen::Index;
using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Idx ix(std::size_t v) { return static_cast<Idx>(v); }

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

cplx unit(std::int64_t num, std::int64_t den) {
  const std::int64_t r = ((num % den) + den) % den;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

// Grid point (copy, j) under one isometry.
std::pair<std::size_t, std::size_t> grid_image(const IsometryDescriptor& map, std::size_t copy, std::size_t j,
                                               std::size_t n) {
  const CopyMap& m = map.per_copy[copy];
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t offset = m.angle.num() * (nn / m.angle.den());
  const std::int64_t t = (static_cast<std::int64_t>(m.orientation) * static_cast<std::int64_t>(j) + offset) % nn;
  return {map.copy_perm[copy], static_cast<std::size_t>((t + nn) % nn)};
}

// Row-major circulant of the projection onto Fourier modes 0..N/2-1.
RowMajor positive_projection(std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  std::vector<cplx> first(n, 0.0);
  for (std::int64_t d = 0; d < nn; ++d) {
    cplx s = 0.0;
    for (std::int64_t m = 0; m < nn / 2; ++m) s += unit(m * d, nn);
    first[static_cast<std::size_t>(d)] = s / static_cast<double>(n);
  }
  RowMajor p(ix(n), ix(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) p(ix(j), ix(l)) = first[(j + n - l) % n];
  return p;
}

std::vector<double> grid_angles(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
  return t;
}

bool branches_equal(const TrigMatrixSymbol& a, std::size_t copy, std::size_t r, std::size_t c) {
  const auto p = a.entry(copy, 1, r, c);
  const auto m = a.entry(copy, -1, r, c);
  return std::equal(p.begin(), p.end(), m.begin(), m.end());
}

std::size_t dense_index(std::size_t point, std::size_t r, std::size_t k, std::size_t n) {
  return ((point / n) * k + r) * n + point % n;
}

// Points of M x Gamma are (g * copies + copy) * N + j.
struct ProductGrid {
  std::size_t copies;
  std::size_t n;
  std::size_t point(Element g, std::size_t copy, std::size_t j) const { return (g * copies + copy) * n + j; }
};

long count_below(const Eigen::VectorXd& sv, double eps) {
  return static_cast<long>((sv.array() < eps).count());
}

}  // namespace

void check_grid(const IsometricAction& action, std::size_t n) {
  if (!is_power_of_two(n))
    throw Error(ErrorKind::BadGrid, "grid size " + std::to_string(n) + " is not a power of two >= 2");
  for (Element g = 0; g < action.G().order(); ++g)
    for (const CopyMap& m : action.maps[g].per_copy)
      if (static_cast<std::int64_t>(n) % m.angle.den() != 0)
        throw Error(ErrorKind::IncommensurableAngle, "rotation by " + m.angle.str() + " turn of element " +
                                                         action.G().name(g) + " is not a multiple of 1/" +
                                                         std::to_string(n));
}

Matrix discretize_symbol_op(const TrigMatrixSymbol& a, std::size_t n) {
  if (!is_power_of_two(n))
    throw Error(ErrorKind::BadGrid, "grid size " + std::to_string(n) + " is not a power of two >= 2");
  const std::size_t k = a.rank();
  const std::size_t dim = a.copies() * k * n;
  Matrix out = Matrix::Zero(ix(dim), ix(dim));
  const std::vector<double> theta = grid_angles(n);
  std::optional<RowMajor> plus;
  std::optional<RowMajor> minus;
  RowMajor block(ix(n), ix(n));
  std::vector<cplx> ap(n), am(n);
  const auto& kern = kernels::active();

  for (std::size_t c = 0; c < a.copies(); ++c)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t q = 0; q < k; ++q) {
        kern.trig_eval(a.entry(c, 1, r, q), theta, ap);
        const Idx row0 = ix((c * k + r) * n);
        const Idx col0 = ix((c * k + q) * n);
        if (branches_equal(a, c, r, q)) {
          for (std::size_t j = 0; j < n; ++j) out(row0 + ix(j), col0 + ix(j)) = ap[j];
          continue;
        }
        if (!plus) {
          plus = positive_projection(n);
          minus = RowMajor::Identity(ix(n), ix(n)) - *plus;
        }
        kern.trig_eval(a.entry(c, -1, r, q), theta, am);
        for (std::size_t j = 0; j < n; ++j) {
          const std::span<const cplx> pr(plus->row(ix(j)).data(), n);
          const std::span<const cplx> mr(minus->row(ix(j)).data(), n);
          kern.combine(ap[j], pr, am[j], mr, std::span<cplx>(block.row(ix(j)).data(), n));
        }
        out.block(row0, col0, ix(n), ix(n)) = block;
      }
  return out;
}

Matrix MonomialOp::dense() const {
  const auto d = ix(dimension());
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t p = 0; p < target.size(); ++p)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t q = 0; q < k; ++q)
        m(ix(dense_index(target[p], r, k, points_per_block)), ix(dense_index(p, q, k, points_per_block))) =
            block[p](ix(r), ix(q));
  return m;
}

Matrix MonomialOp::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t p = 0; p < target.size(); ++p)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t q = 0; q < k; ++q) {
        const cplx b = block[p](ix(r), ix(q));
        if (b == cplx{0.0, 0.0}) continue;
        out.row(ix(dense_index(target[p], r, k, points_per_block))) +=
            b * x.row(ix(dense_index(p, q, k, points_per_block)));
      }
  return out;
}

MonomialOp MonomialOp::adjoint() const {
  MonomialOp out{k, points_per_block, std::vector<std::size_t>(target.size()), std::vector<Matrix>(target.size())};
  for (std::size_t p = 0; p < target.size(); ++p) {
    out.target[target[p]] = p;
    out.block[target[p]] = block[p].adjoint();
  }
  return out;
}

MonomialOp compose(const MonomialOp& a, const MonomialOp& b) {
  MonomialOp out{b.k, b.points_per_block, std::vector<std::size_t>(b.target.size()),
                 std::vector<Matrix>(b.target.size())};
  for (std::size_t p = 0; p < b.target.size(); ++p) {
    out.target[p] = a.target[b.target[p]];
    out.block[p] = a.block[b.target[p]] * b.block[p];
  }
  return out;
}

Matrix times(const Matrix& x, const MonomialOp& op) {
  const std::size_t k = op.k;
  const std::size_t n = op.points_per_block;
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  // column (p, q) of x * op is sum_r block[p](r, q) * column (target[p], r) of x
  for (std::size_t p = 0; p < op.target.size(); ++p)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t q = 0; q < k; ++q) {
        const cplx b = op.block[p](ix(r), ix(q));
        if (b == cplx{0.0, 0.0}) continue;
        out.col(ix(dense_index(p, q, k, n))) += b * x.col(ix(dense_index(op.target[p], r, k, n)));
      }
  return out;
}

double distance(const MonomialOp& a, const MonomialOp& b) {
  if (a.k != b.k || a.target != b.target) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t p = 0; p < a.target.size(); ++p) d = std::max(d, max_abs_diff(a.block[p], b.block[p]));
  return d;
}

MonomialOp identity_op(std::size_t points, std::size_t k, std::size_t n) {
  MonomialOp out{k, n, std::vector<std::size_t>(points), std::vector<Matrix>(points, Matrix::Identity(ix(k), ix(k)))};
  for (std::size_t p = 0; p < points; ++p) out.target[p] = p;
  return out;
}

namespace {

MonomialOp shift_op(const IsometricAction& action, Element gamma, std::size_t n) {
  check_grid(action, n);
  const std::size_t copies = action.copies();
  MonomialOp op{action.fiber_rank, n, std::vector<std::size_t>(copies * n), std::vector<Matrix>(copies * n)};
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t j = 0; j < n; ++j) {
      const auto [tc, tj] = grid_image(action.maps[gamma], c, j, n);
      op.target[c * n + j] = tc * n + tj;
      op.block[c * n + j] = action.fiber_rep(gamma);
    }
  return op;
}

}  // namespace

Matrix discretize_shift(const IsometricAction& action, Element gamma, std::size_t n) {
  return shift_op(action, gamma, n).dense();
}

DiscretizedOperator assemble_gamma_operator(const GammaSymbolData& data, std::size_t n) {
  data.validate();
  const IsometricAction& action = *data.action;
  check_grid(action, n);
  DiscretizedOperator out;
  out.grid_size = n;
  out.dimension = action.copies() * action.fiber_rank * n;
  out.matrix = Matrix::Zero(ix(out.dimension), ix(out.dimension));
  for (const auto& [gamma, a] : data.symbols)
    out.matrix += times(discretize_symbol_op(a, n), shift_op(action, gamma, n));
  return out;
}

MonomialOp q_operator(const IsometricAction& action, std::size_t n) {
  check_grid(action, n);
  const FiniteGroup& g = action.G();
  const ProductGrid grid{action.copies(), n};
  const std::size_t points = g.order() * action.copies() * n;
  MonomialOp op{action.fiber_rank, n, std::vector<std::size_t>(points), std::vector<Matrix>(points)};
  for (Element h = 0; h < g.order(); ++h) {
    const Element hi = g.inv(h);
    for (std::size_t c = 0; c < action.copies(); ++c)
      for (std::size_t j = 0; j < n; ++j) {
        const auto [tc, tj] = grid_image(action.maps[hi], c, j, n);
        const std::size_t p = grid.point(h, c, j);
        op.target[p] = grid.point(hi, tc, tj);
        op.block[p] = action.fiber_rep(hi);
      }
  }
  return op;
}

MonomialOp right_operator(const IsometricAction& action, Element gamma, std::size_t n) {
  check_grid(action, n);
  const FiniteGroup& g = action.G();
  const ProductGrid grid{action.copies(), n};
  const std::size_t points = g.order() * action.copies() * n;
  MonomialOp op{action.fiber_rank, n, std::vector<std::size_t>(points),
                std::vector<Matrix>(points, Matrix::Identity(ix(action.fiber_rank), ix(action.fiber_rank)))};
  for (Element h = 0; h < g.order(); ++h)
    for (std::size_t c = 0; c < action.copies(); ++c)
      for (std::size_t j = 0; j < n; ++j) op.target[grid.point(h, c, j)] = grid.point(g.mul(h, g.inv(gamma)), c, j);
  return op;
}

MonomialOp tl_operator(const IsometricAction& action, Element gamma, std::size_t n) {
  check_grid(action, n);
  const FiniteGroup& g = action.G();
  const ProductGrid grid{action.copies(), n};
  const std::size_t points = g.order() * action.copies() * n;
  MonomialOp op{action.fiber_rank, n, std::vector<std::size_t>(points), std::vector<Matrix>(points)};
  for (Element h = 0; h < g.order(); ++h)
    for (std::size_t c = 0; c < action.copies(); ++c)
      for (std::size_t j = 0; j < n; ++j) {
        const auto [tc, tj] = grid_image(action.maps[gamma], c, j, n);
        const std::size_t p = grid.point(h, c, j);
        op.target[p] = grid.point(g.mul(gamma, h), tc, tj);
        op.block[p] = action.fiber_rep(gamma);
      }
  return op;
}

namespace {

// X * (s -> s (x) 1_Gamma): sums the column blocks of X over the group index.
Matrix sum_group_columns(const Matrix& x, std::size_t order, std::size_t dim_m) {
  Matrix out = Matrix::Zero(x.rows(), ix(dim_m));
  for (std::size_t g = 0; g < order; ++g) out += x.middleCols(ix(g * dim_m), ix(dim_m));
  return out;
}

Matrix sum_group_rows(const Matrix& x, std::size_t order, std::size_t dim_m) {
  Matrix out = Matrix::Zero(ix(dim_m), x.cols());
  for (std::size_t g = 0; g < order; ++g) out += x.middleRows(ix(g * dim_m), ix(dim_m));
  return out;
}

// V* X V with V = Q (s -> s (x) 1) / sqrt|Gamma|.
Matrix compress_to_invariants(const Matrix& x, const MonomialOp& q, std::size_t order, std::size_t dim_m) {
  const Matrix xv = sum_group_columns(times(x, q), order, dim_m);
  return sum_group_rows(q.adjoint().apply(xv), order, dim_m) / static_cast<double>(order);
}

}  // namespace

Matrix invariant_isometry(const IsometricAction& action, std::size_t n) {
  const std::size_t order = action.G().order();
  const std::size_t dim_m = action.copies() * action.fiber_rank * n;
  Matrix stack(ix(order * dim_m), ix(dim_m));
  for (std::size_t g = 0; g < order; ++g) stack.middleRows(ix(g * dim_m), ix(dim_m)) = Matrix::Identity(ix(dim_m), ix(dim_m));
  return q_operator(action, n).apply(stack) / std::sqrt(static_cast<double>(order));
}

UniformizedDiscretization assemble_uniformized(const GammaSymbolData& data, std::size_t n, EgorovConvention conv) {
  data.validate();
  const IsometricAction& action = *data.action;
  const FiniteGroup& g = action.G();
  check_grid(action, n);
  const std::size_t order = g.order();
  const std::size_t dim_m = action.copies() * action.fiber_rank * n;
  const auto dim = ix(order * dim_m);
  const MonomialOp q = q_operator(action, n);

  UniformizedDiscretization out;
  out.hat = Matrix::Zero(dim, dim);
  for (const auto& [gamma, a] : data.symbols) {
    const Matrix op = discretize_symbol_op(a, n);
    Matrix diag = Matrix::Zero(dim, dim);
    for (std::size_t h = 0; h < order; ++h) diag.block(ix(h * dim_m), ix(h * dim_m), ix(dim_m), ix(dim_m)) = op;
    out.hat += q.apply(times(diag, compose(q, right_operator(action, gamma, n))));
  }

  Matrix from_symbol = Matrix::Zero(dim, dim);
  for (const auto& [gamma, a] : data.symbols)
    for (Element h = 0; h < order; ++h)
      from_symbol.block(ix(h * dim_m), ix(g.mul(h, gamma) * dim_m), ix(dim_m), ix(dim_m)) +=
          discretize_symbol_op(twisted_block(data, gamma, h, conv), n);

  const Matrix direct = assemble_gamma_operator(data, n).matrix;
  out.residual = max_abs_diff(compress_to_invariants(out.hat, q, order, dim_m), direct);
  out.convention_residual = max_abs_diff(compress_to_invariants(from_symbol, q, order, dim_m), direct);
  out.symbol_hat_difference = max_abs_diff(from_symbol, out.hat);
  return out;
}

std::vector<SweepRow> singular_sweep(const GammaSymbolData& data, const std::vector<std::size_t>& sizes,
                                     const SweepOptions& opts) {
  data.validate();
  for (std::size_t n : sizes) check_grid(*data.action, n);
  std::vector<SweepRow> rows(sizes.size());
  parallel_for(sizes.size(), [&](std::size_t i) {
    const std::size_t n = sizes[i];
    const DiscretizedOperator d = assemble_gamma_operator(data, n);
    const Eigen::VectorXd sv = singular_values(d.matrix);
    SweepRow& row = rows[i];
    row.n = n;
    row.dimension = d.dimension;
    row.sigma_min = sv.size() ? sv.minCoeff() : 0.0;
    row.count_below = static_cast<std::size_t>(count_below(sv, opts.eps));
    row.count_below_tight = static_cast<std::size_t>(count_below(sv, opts.eps / 10.0));
    row.count_below_loose = static_cast<std::size_t>(count_below(sv, opts.eps * 10.0));
    row.gap = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (Idx j = 0; j < sv.size(); ++j)
      if (sv(j) >= opts.eps) gap = std::min(gap, sv(j));
    if (std::isfinite(gap)) row.gap = gap;
    if (d.dimension * data.G().order() <= opts.residual_max_dimension)
      row.residual = assemble_uniformized(data, n).residual;
  });
  return rows;
}

Verdict oracle_verdict(const std::vector<SweepRow>& rows) {
  if (rows.empty()) return Verdict::Marginal;
  const SweepRow& first = rows.front();
  const SweepRow& last = rows.back();
  if (rows.size() < 2) return first.count_below == 0 ? Verdict::Fredholm : Verdict::Marginal;
  if (last.count_below > 0 && last.count_below >= 2 * first.count_below) return Verdict::NotFredholm;
  if (last.gap < 0.9 * first.gap) return Verdict::NotFredholm;
  return Verdict::Fredholm;
}

bool sweep_confident(const std::vector<SweepRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) {
    return r.count_below_tight == r.count_below && r.count_below_loose == r.count_below;
  });
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "N,sigma_min,count_below_eps,residual\n";
  for (const SweepRow& r : rows) {
    os << r.n << ',' << r.sigma_min << ',' << r.count_below << ',';
    if (r.residual) os << *r.residual;
    os << '\n';
  }
  return os.str();
}

namespace {

// Matrix of sum_gamma Op(a_gamma) T_gamma in the Fourier basis e^{i m theta},
// m in [-half, half), laid out as (copy * k + r) * width + (m + half).
Matrix modal_operator(const GammaSymbolData& data, long half) {
  const IsometricAction& action = *data.action;
  const std::size_t k = action.fiber_rank;
  const auto width = static_cast<std::size_t>(2 * half);
  const std::size_t dim = action.copies() * k * width;
  Matrix a = Matrix::Zero(ix(dim), ix(dim));
  auto at = [&](std::size_t copy, std::size_t r, long m) { return ix((copy * k + r) * width + static_cast<std::size_t>(m + half)); };

  for (const auto& [gamma, sym] : data.symbols) {
    const IsometryDescriptor& map = action.maps[gamma];
    const Matrix& u = action.fiber_rep(gamma);
    const int deg = sym.degree();
    for (std::size_t c = 0; c < action.copies(); ++c) {
      const CopyMap& cm = map.per_copy[c];
      const std::size_t tc = map.copy_perm[c];
      for (long m = -half; m < half; ++m) {
        // T_gamma e^{i m theta} on copy c = e^{-i m o alpha} e^{i (o m) theta} on copy tc
        const long om = cm.orientation * m;
        const cplx phase = unit(-om * cm.angle.num(), cm.angle.den());
        const int xi = om >= 0 ? 1 : -1;
        for (int j = -deg; j <= deg; ++j) {
          const long out = om + j;
          if (out < -half || out >= half) continue;
          const Matrix blk = sym.mode_matrix(tc, xi, j) * u * phase;
          for (std::size_t r = 0; r < k; ++r)
            for (std::size_t q = 0; q < k; ++q) a(at(tc, r, out), at(c, q, m)) += blk(ix(r), ix(q));
        }
      }
    }
  }
  return a;
}

}  // namespace

IndexResult numerical_index(const GammaSymbolData& data, std::size_t n, double eps, const AnalysisOptions& analysis) {
  data.validate();
  if (!is_power_of_two(n))
    throw Error(ErrorKind::BadGrid, "grid size " + std::to_string(n) + " is not a power of two >= 2");
  const FredholmVerdict v = analyze(data, analysis);
  if (v.overall != Verdict::Fredholm)
    throw Error(ErrorKind::NotFredholmScenario, "index requested for a scenario analyzed as " + to_string(v.overall));

  const IsometricAction& action = *data.action;
  const std::size_t k = action.fiber_rank;
  const long inner = static_cast<long>(n / 2);
  const long margin = 2 * data.max_degree() + 2;
  const long outer = inner + margin;
  const Matrix a = modal_operator(data, outer);

  // Inner window indices inside the outer layout.
  std::vector<Idx> sel;
  const auto width = static_cast<std::size_t>(2 * outer);
  for (std::size_t c = 0; c < action.copies(); ++c)
    for (std::size_t r = 0; r < k; ++r)
      for (long m = -inner; m < inner; ++m) sel.push_back(ix((c * k + r) * width + static_cast<std::size_t>(m + outer)));

  // The inner columns see their whole image; the inner rows see every column
  // that reaches them. Near-null vectors of each are the kernel and cokernel.
  Matrix cols(a.rows(), ix(sel.size()));
  Matrix rows(ix(sel.size()), a.cols());
  for (std::size_t i = 0; i < sel.size(); ++i) {
    cols.col(ix(i)) = a.col(sel[i]);
    rows.row(ix(i)) = a.row(sel[i]);
  }
  const Eigen::VectorXd sk = singular_values(cols);
  const Eigen::VectorXd sc = singular_values(rows);

  IndexResult out;
  out.kernel = static_cast<std::size_t>(count_below(sk, eps));
  out.cokernel = static_cast<std::size_t>(count_below(sc, eps));
  out.index = static_cast<long>(out.kernel) - static_cast<long>(out.cokernel);
  out.confident = count_below(sk, eps / 10) == count_below(sk, eps * 10) &&
                  count_below(sc, eps / 10) == count_below(sc, eps * 10);
  return out;
}

long winding_number(const TrigMatrixSymbol& a, double eps_inv) {
  if (a.rank() != 1 || a.copies() != 1)
    throw Error(ErrorKind::InvalidArgument, "winding number needs a scalar symbol on one circle");
  const std::size_t points = 16 * static_cast<std::size_t>(a.degree() + 1);
  const std::vector<double> theta = grid_angles(points);
  std::vector<cplx> plus(points), minus(points);
  kernels::active().trig_eval(a.entry(0, 1, 0, 0), theta, plus);
  kernels::active().trig_eval(a.entry(0, -1, 0, 0), theta, minus);
  double total = 0.0;
  cplx prev{};
  for (std::size_t j = 0; j <= points; ++j) {
    const std::size_t i = j % points;
    if (std::abs(plus[i]) < eps_inv || std::abs(minus[i]) < eps_inv)
      throw Error(ErrorKind::VanishingSymbol, "symbol vanishes near theta = " + std::to_string(theta[i]));
    const cplx ratio = plus[i] / minus[i];
    if (j > 0) total += std::arg(ratio / prev);
    prev = ratio;
  }
  return std::lround(total / (2.0 * std::numbers::pi));
}

}  // namespace shiftsym
