#include "shiftsym/symbol.hpp"

#include <cmath>
#include <numbers>

#include "shiftsym/error.hpp"
#include "shiftsym/kernels.hpp"

namespace shiftsym {

namespace {

std::size_t branch(int xi) { return xi > 0 ? 0 : 1; }

}  // namespace

TrigMatrixSymbol::TrigMatrixSymbol(std::size_t rank, std::size_t copies, int degree)
    : rank_(rank), copies_(copies), degree_(degree),
      entries_(copies * 2 * rank * rank, std::vector<cplx>(static_cast<std::size_t>(2 * degree + 1), 0.0)) {}

TrigMatrixSymbol TrigMatrixSymbol::constant(std::size_t copies, const Matrix& value) {
  TrigMatrixSymbol s(static_cast<std::size_t>(value.rows()), copies, 0);
  for (std::size_t c = 0; c < copies; ++c)
    for (int xi : {1, -1})
      for (std::size_t r = 0; r < s.rank_; ++r)
        for (std::size_t q = 0; q < s.rank_; ++q)
          s.set_coeff(c, xi, r, q, 0, value(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)));
  return s;
}

std::size_t TrigMatrixSymbol::slot(std::size_t copy, int xi, std::size_t r, std::size_t c) const {
  return ((copy * 2 + branch(xi)) * rank_ + r) * rank_ + c;
}

void TrigMatrixSymbol::grow(int degree) {
  if (degree <= degree_) return;
  const auto pad = static_cast<std::size_t>(degree - degree_);
  for (auto& e : entries_) {
    e.insert(e.begin(), pad, cplx{0.0, 0.0});
    e.insert(e.end(), pad, cplx{0.0, 0.0});
  }
  degree_ = degree;
}

std::span<const cplx> TrigMatrixSymbol::entry(std::size_t copy, int xi, std::size_t r, std::size_t c) const {
  return entries_[slot(copy, xi, r, c)];
}

void TrigMatrixSymbol::set_coeff(std::size_t copy, int xi, std::size_t r, std::size_t c, int mode, cplx value) {
  grow(std::abs(mode));
  entries_[slot(copy, xi, r, c)][static_cast<std::size_t>(mode + degree_)] = value;
}

cplx TrigMatrixSymbol::coeff(std::size_t copy, int xi, std::size_t r, std::size_t c, int mode) const {
  if (std::abs(mode) > degree_) return 0.0;
  return entries_[slot(copy, xi, r, c)][static_cast<std::size_t>(mode + degree_)];
}

Matrix TrigMatrixSymbol::mode_matrix(std::size_t copy, int xi, int mode) const {
  const auto k = static_cast<Eigen::Index>(rank_);
  Matrix m(k, k);
  for (std::size_t r = 0; r < rank_; ++r)
    for (std::size_t c = 0; c < rank_; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = coeff(copy, xi, r, c, mode);
  return m;
}

Matrix TrigMatrixSymbol::eval(std::size_t copy, double theta, int xi) const {
  return eval_batch(copy, xi, std::span<const double>(&theta, 1)).front();
}

std::vector<Matrix> TrigMatrixSymbol::eval_batch(std::size_t copy, int xi, std::span<const double> thetas) const {
  const auto k = static_cast<Eigen::Index>(rank_);
  std::vector<Matrix> out(thetas.size(), Matrix::Zero(k, k));
  std::vector<cplx> buf(thetas.size());
  const auto& trig = kernels::active().trig_eval;
  for (std::size_t r = 0; r < rank_; ++r)
    for (std::size_t c = 0; c < rank_; ++c) {
      trig(entry(copy, xi, r, c), thetas, buf);
      for (std::size_t j = 0; j < thetas.size(); ++j)
        out[j](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = buf[j];
    }
  return out;
}

TrigMatrixSymbol TrigMatrixSymbol::pullback(const IsometryDescriptor& map, const Matrix& left,
                                            const Matrix& right) const {
  TrigMatrixSymbol out(rank_, copies_, degree_);
  for (std::size_t c = 0; c < copies_; ++c) {
    const std::size_t src = map.copy_perm[c];
    const CopyMap& m = map.per_copy[c];
    for (int xi : {1, -1}) {
      // a(o theta + alpha) = sum_m c_m e^{i m alpha} e^{i (o m) theta}
      for (int mode = -degree_; mode <= degree_; ++mode) {
        const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * m.angle.fraction() * mode);
        const Matrix block = left * mode_matrix(src, xi * m.orientation, mode) * right * phase;
        for (std::size_t r = 0; r < rank_; ++r)
          for (std::size_t q = 0; q < rank_; ++q)
            out.set_coeff(c, xi, r, q, m.orientation * mode,
                          block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)));
      }
    }
  }
  return out;
}

TrigMatrixSymbol TrigMatrixSymbol::times(const Matrix& m) const {
  TrigMatrixSymbol out(rank_, copies_, degree_);
  for (std::size_t c = 0; c < copies_; ++c)
    for (int xi : {1, -1})
      for (int mode = -degree_; mode <= degree_; ++mode) {
        const Matrix block = mode_matrix(c, xi, mode) * m;
        for (std::size_t r = 0; r < rank_; ++r)
          for (std::size_t q = 0; q < rank_; ++q)
            out.set_coeff(c, xi, r, q, mode, block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)));
      }
  return out;
}

TrigMatrixSymbol& TrigMatrixSymbol::operator+=(const TrigMatrixSymbol& o) {
  if (o.rank_ != rank_ || o.copies_ != copies_)
    throw Error(ErrorKind::InvalidArgument, "adding symbols of different shape");
  grow(o.degree_);
  const auto shift = static_cast<std::size_t>(degree_ - o.degree_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    for (std::size_t m = 0; m < o.entries_[i].size(); ++m) entries_[i][m + shift] += o.entries_[i][m];
  return *this;
}

TrigMatrixSymbol TrigMatrixSymbol::scaled(cplx s) const {
  TrigMatrixSymbol out = *this;
  for (auto& e : out.entries_)
    for (auto& v : e) v *= s;
  return out;
}

bool TrigMatrixSymbol::is_finite() const {
  for (const auto& e : entries_)
    for (const auto& v : e)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void GammaSymbolData::validate() const {
  if (!action) throw Error(ErrorKind::ValidationError, "symbol data without an action");
  for (const auto& [g, s] : symbols) {
    if (g >= G().order()) throw Error(ErrorKind::ValidationError, "symbol for unknown element");
    if (s.rank() != rank())
      throw Error(ErrorKind::ValidationError, "symbols/" + G().name(g) + ": rank " + std::to_string(s.rank()) +
                                                  " does not match fiber rank " + std::to_string(rank()));
    if (s.copies() != action->copies())
      throw Error(ErrorKind::ValidationError, "symbols/" + G().name(g) + ": covers " + std::to_string(s.copies()) +
                                                  " copies, manifold has " + std::to_string(action->copies()));
    if (!s.is_finite()) throw Error(ErrorKind::ValidationError, "symbols/" + G().name(g) + ": non-finite coefficient");
  }
}

int GammaSymbolData::max_degree() const {
  int d = 0;
  for (const auto& [g, s] : symbols) d = std::max(d, s.degree());
  return d;
}

Matrix eval_symbol(const GammaSymbolData& data, Element gamma, const CotangentPoint& p) {
  auto it = data.symbols.find(gamma);
  const auto k = static_cast<Eigen::Index>(data.rank());
  if (it == data.symbols.end()) return Matrix::Zero(k, k);
  return it->second.eval(p);
}

TrigMatrixSymbol twisted_block(const GammaSymbolData& data, Element gamma, Element h, EgorovConvention conv) {
  const TrigMatrixSymbol& a = data.symbols.at(gamma);
  const IsometricAction& act = *data.action;
  const FiniteGroup& g = act.G();
  switch (conv) {
    case EgorovConvention::PullbackInverse:
      return a.pullback(act.maps[g.inv(h)], act.fiber_rep(h), act.fiber_rep(g.inv(h)));
    case EgorovConvention::PullbackForward:
      return a.pullback(act.maps[h], act.fiber_rep(g.inv(h)), act.fiber_rep(h));
    case EgorovConvention::NoPullback:
      return a;
  }
  return a;
}

UniformizedSymbol::UniformizedSymbol(const GammaSymbolData& data, EgorovConvention conv)
    : k_(data.rank()), dim_(data.rank() * data.G().order()) {
  const FiniteGroup& g = data.G();
  for (const auto& [gamma, a] : data.symbols)
    for (Element h = 0; h < g.order(); ++h)
      blocks_.push_back(Block{h, g.mul(h, gamma), twisted_block(data, gamma, h, conv)});
}

std::vector<Matrix> UniformizedSymbol::eval_batch(std::size_t copy, int xi, std::span<const double> thetas) const {
  const auto d = static_cast<Eigen::Index>(dim_);
  const auto k = static_cast<Eigen::Index>(k_);
  std::vector<Matrix> out(thetas.size(), Matrix::Zero(d, d));
  for (const Block& b : blocks_) {
    const std::vector<Matrix> vals = b.symbol.eval_batch(copy, xi, thetas);
    for (std::size_t j = 0; j < thetas.size(); ++j)
      out[j].block(static_cast<Eigen::Index>(b.row) * k, static_cast<Eigen::Index>(b.col) * k, k, k) += vals[j];
  }
  return out;
}

Matrix UniformizedSymbol::operator()(const CotangentPoint& p) const {
  return eval_batch(p.copy, p.xi, std::span<const double>(&p.theta, 1)).front();
}

Matrix uniformized_symbol(const GammaSymbolData& data, const CotangentPoint& p, EgorovConvention conv) {
  return UniformizedSymbol(data, conv)(p);
}

Matrix tl_matrix(const IsometricAction& action, Element h) {
  const FiniteGroup& g = action.G();
  const auto k = static_cast<Eigen::Index>(action.fiber_rank);
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix m = Matrix::Zero(n * k, n * k);
  for (Element x = 0; x < g.order(); ++x)
    m.block(static_cast<Eigen::Index>(g.mul(h, x)) * k, static_cast<Eigen::Index>(x) * k, k, k) = action.fiber_rep(h);
  return m;
}

Matrix right_matrix(const IsometricAction& action, Element gamma) {
  const FiniteGroup& g = action.G();
  const auto k = static_cast<Eigen::Index>(action.fiber_rank);
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix m = Matrix::Zero(n * k, n * k);
  for (Element x = 0; x < g.order(); ++x)
    m.block(static_cast<Eigen::Index>(g.mul(x, g.inv(gamma))) * k, static_cast<Eigen::Index>(x) * k, k, k) =
        Matrix::Identity(k, k);
  return m;
}

Matrix fiber_q(const IsometricAction& action) {
  const FiniteGroup& g = action.G();
  const auto k = static_cast<Eigen::Index>(action.fiber_rank);
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix m = Matrix::Zero(n * k, n * k);
  for (Element x = 0; x < g.order(); ++x)
    m.block(static_cast<Eigen::Index>(g.inv(x)) * k, static_cast<Eigen::Index>(x) * k, k, k) =
        action.fiber_rep(g.inv(x));
  return m;
}

Matrix tl_rep_fiber(const IsometricAction& action, Element h, const CotangentPoint& p) {
  if (!same_point(cotangent_action(action, h, p), p))
    throw Error(ErrorKind::NotFixed, "element " + action.G().name(h) + " does not fix the covector");
  return tl_matrix(action, h);
}

InvariantProjector invariant_projector(const IsometricAction& action, const Subgroup& gamma0,
                                       const CotangentPoint& p) {
  const auto d = static_cast<Eigen::Index>(action.fiber_rank * action.G().order());
  Matrix proj = Matrix::Zero(d, d);
  for (Element h : gamma0.members()) proj += tl_rep_fiber(action, h, p);
  proj /= static_cast<double>(gamma0.size());
  Matrix basis = projector_range(proj);
  return {std::move(proj), std::move(basis)};
}

Matrix restricted_symbol(const Matrix& sigma, const Matrix& basis, std::span<const Matrix> reps) {
  for (const Matrix& rho : reps) {
    const double defect = max_abs_diff(sigma * rho, rho * sigma);
    if (defect > kEquivarianceTolerance)
      throw Error(ErrorKind::NotEquivariant,
                  "symbol does not commute with the isotropy action (defect " + std::to_string(defect) + ")");
  }
  return basis.adjoint() * sigma * basis;
}

double equivariance_defect(const GammaSymbolData& data, Element gamma, const CotangentPoint& p,
                           EgorovConvention conv) {
  const UniformizedSymbol sigma(data, conv);
  const Matrix rho = tl_matrix(*data.action, gamma);
  const CotangentPoint moved = cotangent_action(*data.action, gamma, p);
  return max_abs_diff(sigma(moved) * rho, rho * sigma(p));
}

}  // namespace shiftsym
