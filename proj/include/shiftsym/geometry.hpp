#pragma once

// Model manifolds (disjoint unions of unit circles), isometric finite-group
// actions on them, isotropy analysis and the induced action on unit covectors.
// Angles of the action are exact rational turns, so stabilizers and fixed
// sets are computed exactly.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "shiftsym/group.hpp"
#include "shiftsym/turn.hpp"

namespace shiftsym {

struct ModelManifold {
  enum class Kind { CircleUnion, Torus2 };
  Kind kind = Kind::CircleUnion;
  std::size_t copies = 1;
};

/// theta -> orientation * theta + angle, landing on the target copy.
struct CopyMap {
  Turn angle;
  int orientation = 1;

  friend bool operator==(const CopyMap&, const CopyMap&) = default;
};

struct IsometryDescriptor {
  std::vector<std::size_t> copy_perm;  // source copy -> target copy
  std::vector<CopyMap> per_copy;       // indexed by source copy

  static IsometryDescriptor identity(std::size_t copies);
  std::size_t copies() const { return copy_perm.size(); }
  bool is_identity() const;
  /// True if this map fixes every point of copy c.
  bool is_identity_on(std::size_t c) const;
  /// Image of a point; theta in radians, result reduced to [0, 2pi).
  std::pair<std::size_t, double> apply(std::size_t copy, double theta) const;
  std::pair<std::size_t, Turn> apply(std::size_t copy, Turn theta) const;

  friend bool operator==(const IsometryDescriptor&, const IsometryDescriptor&) = default;
};

/// a o b (apply b first). Throws Error(BadPermutation) on size mismatch.
IsometryDescriptor compose(const IsometryDescriptor& a, const IsometryDescriptor& b);
IsometryDescriptor inverse(const IsometryDescriptor& a);

struct IsometricAction {
  GroupPtr group;
  ModelManifold manifold;
  std::vector<IsometryDescriptor> maps;  // per element
  std::size_t fiber_rank = 1;
  UnitaryRep fiber_rep;                  // constant unitary action U on C^k

  const FiniteGroup& G() const { return *group; }
  std::size_t copies() const { return manifold.copies; }
  /// Geometric part and U both trivial.
  bool is_trivial() const;
};

inline constexpr double kAngleTolerance = 1e-10;

/// Completes the action from generator data along the Cayley graph and checks
/// the homomorphism law. Generators must generate the group.
/// Throws NotAHomomorphism or BadPermutation.
IsometricAction build_action(GroupPtr group, ModelManifold manifold,
                             const std::map<Element, IsometryDescriptor>& generator_maps,
                             std::size_t fiber_rank,
                             const std::map<Element, Matrix>& generator_fiber = {});

/// Unit covector on a circle copy: xi = +1 or -1.
struct CotangentPoint {
  std::size_t copy = 0;
  double theta = 0.0;  // radians in [0, 2pi)
  int xi = 1;

  friend bool operator==(const CotangentPoint&, const CotangentPoint&) = default;
};

/// Isometries act on unit covectors of a circle through their orientation sign.
CotangentPoint cotangent_action(const IsometricAction& action, Element gamma, const CotangentPoint& p);

bool same_point(const CotangentPoint& a, const CotangentPoint& b, double tol = kAngleTolerance);

Subgroup isotropy_group(const IsometricAction& action, std::size_t copy, double theta);
Subgroup isotropy_group(const IsometricAction& action, std::size_t copy, Turn theta);

/// Fixed set of one element on one copy.
struct FixedSet {
  enum class Kind { Empty, Points, Whole };
  Kind kind = Kind::Empty;
  std::vector<Turn> points;  // when kind == Points
};

FixedSet fixed_set(const IsometricAction& action, Element gamma, std::size_t copy);

/// Orbits of the copy-permutation action, each sorted, in order of least member.
std::vector<std::vector<std::size_t>> quotient_components(const IsometricAction& action);

struct IsotropyReport {
  std::size_t component_id = 0;
  std::vector<std::size_t> copies;
  Subgroup gamma0;
  std::map<std::size_t, std::vector<Turn>> special_points;  // copy -> points with extra isotropy
  Turn generic_point;                                       // on copies.front()
  bool verified = false;
};

/// Throws InconsistentOrbitTypes if some isotropy group fails to contain a
/// conjugate of the minimal one.
IsotropyReport minimal_isotropy(const IsometricAction& action, const std::vector<std::size_t>& component,
                                std::size_t component_id = 0);

/// Sample of S*M^{Gamma0} as runs of base angles sharing a copy and covector sign.
struct SphereSample {
  struct Run {
    std::size_t copy;
    int xi;
    std::vector<double> thetas;
  };
  std::vector<Run> runs;

  std::size_t size() const;
  std::vector<CotangentPoint> points() const;
};

/// Covectors over M^{Gamma0} fixed by the induced Gamma0 action. On copies that
/// Gamma0 fixes pointwise this is a grid of `count` angles (offset drawn from
/// `seed`) for both signs; elsewhere it is the finite set of fixed covectors.
/// Restricted to `copies` when non-empty. Throws EmptyFixedSet if M^{Gamma0} is empty.
SphereSample sample_fixed_sphere(const IsometricAction& action, const Subgroup& gamma0, std::size_t count,
                                 std::uint64_t seed, std::span<const std::size_t> copies = {});

/// Uniform seeded grid over all of S*M restricted to `copies` (all when empty).
SphereSample sample_sphere(const IsometricAction& action, std::size_t count, std::uint64_t seed,
                           std::span<const std::size_t> copies = {});

/// Annihilator {xi : xi . Y = 0 for all Y} of the given tangent vectors in R^dim,
/// as orthonormal columns.
Eigen::MatrixXd transversal_fiber(const std::vector<Eigen::VectorXd>& vector_fields, std::size_t dim);

/// Points whose transversal cotangent fiber vanishes; their orbits are clopen.
struct ClopenVerdict {
  enum class Kind { Empty, All, Partial };
  Kind kind = Kind::Empty;
  std::vector<bool> in_set;
};

ClopenVerdict detect_clopen_orbits(const std::vector<Eigen::MatrixXd>& fibers);

}  // namespace shiftsym
