#include "shiftsym/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <set>

#include "shiftsym/error.hpp"

namespace shiftsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

double angle_distance(double a, double b) {
  const double d = wrap(a - b);
  return std::min(d, kTwoPi - d);
}

void check_descriptor(const IsometryDescriptor& d, std::size_t copies) {
  if (d.copy_perm.size() != copies || d.per_copy.size() != copies)
    throw Error(ErrorKind::BadPermutation, "descriptor size does not match copy count " + std::to_string(copies));
  std::vector<bool> seen(copies, false);
  for (std::size_t t : d.copy_perm) {
    if (t >= copies || seen[t]) throw Error(ErrorKind::BadPermutation, "copy permutation is not a bijection");
    seen[t] = true;
  }
  for (const CopyMap& m : d.per_copy)
    if (m.orientation != 1 && m.orientation != -1)
      throw Error(ErrorKind::BadPermutation, "orientation must be +1 or -1");
}

// Portable seeded offset in [0, 1).
double seeded_offset(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> resolve_copies(const IsometricAction& action, std::span<const std::size_t> copies) {
  if (!copies.empty()) return {copies.begin(), copies.end()};
  std::vector<std::size_t> all(action.copies());
  for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
  return all;
}

std::vector<double> grid(std::size_t count, double offset) {
  std::vector<double> t(count);
  for (std::size_t j = 0; j < count; ++j)
    t[j] = kTwoPi * (static_cast<double>(j) + offset) / static_cast<double>(count);
  return t;
}

}  // namespace

IsometryDescriptor IsometryDescriptor::identity(std::size_t copies) {
  IsometryDescriptor d;
  d.copy_perm.resize(copies);
  d.per_copy.assign(copies, CopyMap{});
  for (std::size_t c = 0; c < copies; ++c) d.copy_perm[c] = c;
  return d;
}

bool IsometryDescriptor::is_identity() const {
  for (std::size_t c = 0; c < copies(); ++c)
    if (!is_identity_on(c)) return false;
  return true;
}

bool IsometryDescriptor::is_identity_on(std::size_t c) const {
  return copy_perm[c] == c && per_copy[c].orientation == 1 && per_copy[c].angle.is_zero();
}

std::pair<std::size_t, double> IsometryDescriptor::apply(std::size_t copy, double theta) const {
  const CopyMap& m = per_copy[copy];
  return {copy_perm[copy], wrap(m.orientation * theta + m.angle.radians())};
}

std::pair<std::size_t, Turn> IsometryDescriptor::apply(std::size_t copy, Turn theta) const {
  const CopyMap& m = per_copy[copy];
  return {copy_perm[copy], theta.signed_by(m.orientation) + m.angle};
}

IsometryDescriptor compose(const IsometryDescriptor& a, const IsometryDescriptor& b) {
  if (a.copies() != b.copies()) throw Error(ErrorKind::BadPermutation, "composing descriptors of different size");
  IsometryDescriptor out;
  out.copy_perm.resize(a.copies());
  out.per_copy.resize(a.copies());
  for (std::size_t c = 0; c < a.copies(); ++c) {
    const std::size_t mid = b.copy_perm[c];
    const CopyMap& mb = b.per_copy[c];
    const CopyMap& ma = a.per_copy[mid];
    out.copy_perm[c] = a.copy_perm[mid];
    out.per_copy[c] = CopyMap{mb.angle.signed_by(ma.orientation) + ma.angle, ma.orientation * mb.orientation};
  }
  return out;
}

IsometryDescriptor inverse(const IsometryDescriptor& a) {
  IsometryDescriptor out;
  out.copy_perm.resize(a.copies());
  out.per_copy.resize(a.copies());
  for (std::size_t c = 0; c < a.copies(); ++c) {
    const std::size_t t = a.copy_perm[c];
    const CopyMap& m = a.per_copy[c];
    out.copy_perm[t] = c;
    out.per_copy[t] = CopyMap{(-m.angle).signed_by(m.orientation), m.orientation};
  }
  return out;
}

bool IsometricAction::is_trivial() const {
  for (const auto& m : maps)
    if (!m.is_identity()) return false;
  return fiber_rep.is_trivial();
}

IsometricAction build_action(GroupPtr group, ModelManifold manifold,
                             const std::map<Element, IsometryDescriptor>& generator_maps, std::size_t fiber_rank,
                             const std::map<Element, Matrix>& generator_fiber) {
  const FiniteGroup& g = *group;
  const std::size_t copies = manifold.copies;
  if (copies == 0) throw Error(ErrorKind::InvalidArgument, "manifold needs at least one copy");
  if (fiber_rank == 0) throw Error(ErrorKind::InvalidArgument, "fiber rank must be positive");
  const auto k = static_cast<Eigen::Index>(fiber_rank);

  std::vector<Element> gens;
  for (const auto& [s, d] : generator_maps) {
    if (s >= g.order()) throw Error(ErrorKind::InvalidArgument, "generator out of range");
    check_descriptor(d, copies);
    gens.push_back(s);
  }
  for (const auto& [s, m] : generator_fiber) {
    if (s >= g.order()) throw Error(ErrorKind::InvalidArgument, "fiber generator out of range");
    if (m.rows() != k || m.cols() != k)
      throw Error(ErrorKind::InvalidArgument, "fiber matrix of element " + g.name(s) + " has wrong size");
    if (!generator_maps.contains(s)) gens.push_back(s);
  }
  auto gen_map = [&](Element s) {
    auto it = generator_maps.find(s);
    return it != generator_maps.end() ? it->second : IsometryDescriptor::identity(copies);
  };
  auto gen_fiber = [&](Element s) -> Matrix {
    auto it = generator_fiber.find(s);
    return it != generator_fiber.end() ? it->second : Matrix::Identity(k, k);
  };

  std::vector<std::optional<IsometryDescriptor>> maps(g.order());
  std::vector<std::optional<Matrix>> fiber(g.order());
  maps[g.identity()] = IsometryDescriptor::identity(copies);
  fiber[g.identity()] = Matrix::Identity(k, k);
  std::queue<Element> todo;
  todo.push(g.identity());
  while (!todo.empty()) {
    const Element x = todo.front();
    todo.pop();
    for (Element s : gens) {
      const Element y = g.mul(x, s);
      IsometryDescriptor dy = compose(*maps[x], gen_map(s));
      Matrix fy = *fiber[x] * gen_fiber(s);
      if (!maps[y]) {
        maps[y] = std::move(dy);
        fiber[y] = std::move(fy);
        todo.push(y);
      } else if (!(*maps[y] == dy) || max_abs_diff(*fiber[y], fy) > kAngleTolerance) {
        throw Error(ErrorKind::NotAHomomorphism,
                    "generator relations are not respected at element " + g.name(y));
      }
    }
  }
  IsometricAction a;
  a.group = std::move(group);
  a.manifold = manifold;
  a.fiber_rank = fiber_rank;
  a.fiber_rep.dim = fiber_rank;
  for (Element x = 0; x < g.order(); ++x) {
    if (!maps[x]) throw Error(ErrorKind::NotAHomomorphism, "generators do not reach element " + g.name(x));
    a.maps.push_back(std::move(*maps[x]));
    a.fiber_rep.matrices.push_back(std::move(*fiber[x]));
  }
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y)
      if (!(a.maps[g.mul(x, y)] == compose(a.maps[x], a.maps[y])))
        throw Error(ErrorKind::NotAHomomorphism, "map of " + g.name(g.mul(x, y)) + " is not the composite");
  if (a.fiber_rep.homomorphism_defect(g) > kAngleTolerance)
    throw Error(ErrorKind::NotAHomomorphism, "fiber representation is not a homomorphism");
  if (a.fiber_rep.unitarity_defect() > kAngleTolerance)
    throw Error(ErrorKind::NotAHomomorphism, "fiber representation is not unitary");
  return a;
}

CotangentPoint cotangent_action(const IsometricAction& action, Element gamma, const CotangentPoint& p) {
  const IsometryDescriptor& d = action.maps[gamma];
  auto [copy, theta] = d.apply(p.copy, p.theta);
  return CotangentPoint{copy, theta, p.xi * d.per_copy[p.copy].orientation};
}

bool same_point(const CotangentPoint& a, const CotangentPoint& b, double tol) {
  return a.copy == b.copy && a.xi == b.xi && angle_distance(a.theta, b.theta) <= tol;
}

Subgroup isotropy_group(const IsometricAction& action, std::size_t copy, double theta) {
  std::vector<Element> members;
  for (Element x = 0; x < action.G().order(); ++x) {
    auto [c, t] = action.maps[x].apply(copy, theta);
    if (c == copy && angle_distance(t, theta) <= kAngleTolerance) members.push_back(x);
  }
  return Subgroup::make(action.G(), std::move(members));
}

Subgroup isotropy_group(const IsometricAction& action, std::size_t copy, Turn theta) {
  std::vector<Element> members;
  for (Element x = 0; x < action.G().order(); ++x)
    if (action.maps[x].apply(copy, theta) == std::pair{copy, theta}) members.push_back(x);
  return Subgroup::make(action.G(), std::move(members));
}

FixedSet fixed_set(const IsometricAction& action, Element gamma, std::size_t copy) {
  const IsometryDescriptor& d = action.maps[gamma];
  if (d.copy_perm[copy] != copy) return {};
  const CopyMap& m = d.per_copy[copy];
  if (m.orientation == 1) return m.angle.is_zero() ? FixedSet{FixedSet::Kind::Whole, {}} : FixedSet{};
  // -theta + a = theta  <=>  2 theta = a
  auto [p, q] = m.angle.halves();
  return FixedSet{FixedSet::Kind::Points, {p, q}};
}

std::vector<std::vector<std::size_t>> quotient_components(const IsometricAction& action) {
  const std::size_t n = action.copies();
  std::vector<bool> used(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < n; ++c) {
    if (used[c]) continue;
    std::set<std::size_t> orbit;
    for (const auto& m : action.maps) orbit.insert(m.copy_perm[c]);
    for (std::size_t x : orbit) used[x] = true;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

IsotropyReport minimal_isotropy(const IsometricAction& action, const std::vector<std::size_t>& component,
                                std::size_t component_id) {
  if (component.empty()) throw Error(ErrorKind::InvalidArgument, "empty component");
  const FiniteGroup& g = action.G();
  IsotropyReport report;
  report.component_id = component_id;
  report.copies = component;

  for (std::size_t c : component) {
    std::set<Turn> pts;
    for (Element x = 0; x < g.order(); ++x) {
      if (x == g.identity()) continue;
      FixedSet f = fixed_set(action, x, c);
      if (f.kind == FixedSet::Kind::Points) pts.insert(f.points.begin(), f.points.end());
    }
    report.special_points[c] = {pts.begin(), pts.end()};
  }

  auto generic_on = [&](std::size_t c) {
    const auto& special = report.special_points[c];
    for (std::int64_t m = 3;; m += 2) {
      Turn t(1, m);
      if (std::find(special.begin(), special.end(), t) == special.end()) return t;
    }
  };
  report.generic_point = generic_on(component.front());
  report.gamma0 = isotropy_group(action, component.front(), report.generic_point);

  const std::vector<Subgroup> conjugates = conjugacy_class(g, report.gamma0);
  auto contains_conjugate = [&](const Subgroup& iso) {
    return std::any_of(conjugates.begin(), conjugates.end(), [&](const Subgroup& h) { return iso.contains(h); });
  };
  for (std::size_t c : component) {
    std::vector<Turn> probes = report.special_points[c];
    probes.push_back(generic_on(c));
    for (Turn t : probes)
      if (!contains_conjugate(isotropy_group(action, c, t)))
        throw Error(ErrorKind::InconsistentOrbitTypes,
                    "isotropy at copy " + std::to_string(c) + ", turn " + t.str() +
                        " contains no conjugate of the minimal isotropy subgroup");
  }
  report.verified = true;
  return report;
}

std::size_t SphereSample::size() const {
  std::size_t n = 0;
  for (const auto& r : runs) n += r.thetas.size();
  return n;
}

std::vector<CotangentPoint> SphereSample::points() const {
  std::vector<CotangentPoint> out;
  out.reserve(size());
  for (const auto& r : runs)
    for (double t : r.thetas) out.push_back(CotangentPoint{r.copy, t, r.xi});
  return out;
}

SphereSample sample_fixed_sphere(const IsometricAction& action, const Subgroup& gamma0, std::size_t count,
                                 std::uint64_t seed, std::span<const std::size_t> copies) {
  SphereSample out;
  const double offset = seeded_offset(seed);
  std::size_t base_points = 0;
  for (std::size_t c : resolve_copies(action, copies)) {
    const bool pointwise = std::all_of(gamma0.members().begin(), gamma0.members().end(),
                                       [&](Element h) { return action.maps[h].is_identity_on(c); });
    if (pointwise) {
      ++base_points;
      for (int xi : {1, -1}) out.runs.push_back({c, xi, grid(count, offset)});
      continue;
    }
    // Finite common fixed set: start from any element with isolated fixed points.
    std::optional<std::vector<Turn>> candidates;
    bool empty = false;
    for (Element h : gamma0.members()) {
      FixedSet f = fixed_set(action, h, c);
      if (f.kind == FixedSet::Kind::Empty) empty = true;
      if (f.kind == FixedSet::Kind::Points && !candidates) candidates = f.points;
    }
    if (empty || !candidates) continue;
    for (Turn t : *candidates) {
      const bool fixed = std::all_of(gamma0.members().begin(), gamma0.members().end(), [&](Element h) {
        return action.maps[h].apply(c, t) == std::pair{c, t};
      });
      if (!fixed) continue;
      ++base_points;
      for (int xi : {1, -1}) {
        CotangentPoint p{c, t.radians(), xi};
        const bool cofixed = std::all_of(gamma0.members().begin(), gamma0.members().end(),
                                         [&](Element h) { return same_point(cotangent_action(action, h, p), p); });
        if (cofixed) out.runs.push_back({c, xi, {p.theta}});
      }
    }
  }
  if (base_points == 0) throw Error(ErrorKind::EmptyFixedSet, "the fixed set of the given subgroup is empty");
  return out;
}

SphereSample sample_sphere(const IsometricAction& action, std::size_t count, std::uint64_t seed,
                           std::span<const std::size_t> copies) {
  SphereSample out;
  const double offset = seeded_offset(seed);
  for (std::size_t c : resolve_copies(action, copies))
    for (int xi : {1, -1}) out.runs.push_back({c, xi, grid(count, offset)});
  return out;
}

Eigen::MatrixXd transversal_fiber(const std::vector<Eigen::VectorXd>& vector_fields, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (vector_fields.empty()) return Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(vector_fields.size()), d);
  for (std::size_t i = 0; i < vector_fields.size(); ++i) {
    if (vector_fields[i].size() != d) throw Error(ErrorKind::InvalidArgument, "vector field dimension mismatch");
    a.row(static_cast<Eigen::Index>(i)) = vector_fields[i].transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = 1e-12 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

ClopenVerdict detect_clopen_orbits(const std::vector<Eigen::MatrixXd>& fibers) {
  ClopenVerdict v;
  v.in_set.reserve(fibers.size());
  std::size_t hits = 0;
  for (const auto& f : fibers) {
    const bool zero = f.cols() == 0;
    v.in_set.push_back(zero);
    hits += zero ? 1 : 0;
  }
  v.kind = hits == 0 ? ClopenVerdict::Kind::Empty
           : hits == fibers.size() ? ClopenVerdict::Kind::All
                                   : ClopenVerdict::Kind::Partial;
  return v;
}

}  // namespace shiftsym
