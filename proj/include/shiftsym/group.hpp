#pragma once

// Finite groups as multiplication tables, subgroups, the group algebra and
// the regular representations.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftsym/linalg.hpp"

namespace shiftsym {

/// Index of a group element into its group's table.
using Element = std::size_t;

class FiniteGroup {
 public:
  /// Validates the table (Latin square, identity, inverses, associativity).
  /// Throws Error(NonGroupTable). Names default to "#i" with "e" for the identity.
  static FiniteGroup from_table(std::vector<std::vector<Element>> table,
                                std::vector<std::string> names = {});

  std::size_t order() const { return table_.size(); }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element identity() const { return identity_; }
  Element conj(Element g, Element h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1

  const std::vector<std::vector<Element>>& table() const { return table_; }
  const std::vector<Element>& inverses() const { return inverse_; }

  const std::string& name(Element a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Element> find(const std::string& name) const;

  /// Subgroup generated by the given elements.
  std::vector<Element> generate(const std::vector<Element>& gens) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct GroupDescriptor {
  struct Cyclic { std::size_t n; };
  struct Dihedral { std::size_t n; };  // order 2n
  struct Product {
    std::shared_ptr<const GroupDescriptor> left;
    std::shared_ptr<const GroupDescriptor> right;
  };
  struct Table { std::vector<std::vector<Element>> table; };

  std::variant<Cyclic, Dihedral, Product, Table> kind;
};

/// cyclic n: "e", "g", "g^2", ...; dihedral n: rotations "r^k", reflections "s", "sr^k"
/// (s r = r^-1 s); product: "(x,y)" with the identity also named "e".
FiniteGroup build_group(const GroupDescriptor& desc);

/// Sorted, validated set of element indices closed under products and inverses.
class Subgroup {
 public:
  /// Throws Error(InvalidArgument) if the set is not a subgroup of g.
  static Subgroup make(const FiniteGroup& g, std::vector<Element> members);
  static Subgroup trivial(const FiniteGroup& g) { return make(g, {g.identity()}); }
  static Subgroup whole(const FiniteGroup& g);
  /// Sorted copy of the members without any group check, for deserialization.
  static Subgroup from_members(std::vector<Element> members);

  const std::vector<Element>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Element a) const;
  bool contains(const Subgroup& other) const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  std::vector<Element> members_;
};

Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, Element gamma);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
/// All distinct conjugates of h.
std::vector<Subgroup> conjugacy_class(const FiniteGroup& g, const Subgroup& h);
/// Left cosets gamma H, each sorted; the coset containing the identity comes first.
std::vector<std::vector<Element>> left_cosets(const FiniteGroup& g, const Subgroup& h);

/// Element of C[Gamma]: coefficient of delta_gamma per element.
struct GroupAlgebraVector {
  std::vector<cplx> coeffs;

  static GroupAlgebraVector delta(const FiniteGroup& g, Element a);
  static GroupAlgebraVector ones(const FiniteGroup& g);  // 1_Gamma
};

/// Unitary representation: one dim x dim matrix per element.
struct UnitaryRep {
  std::size_t dim = 0;
  std::vector<Matrix> matrices;

  const Matrix& operator()(Element a) const { return matrices[a]; }
  /// Max deviation from the homomorphism law and from unitarity.
  double homomorphism_defect(const FiniteGroup& g) const;
  double unitarity_defect() const;
  /// True if every matrix is the identity.
  bool is_trivial(double tol = 1e-12) const;

  static UnitaryRep trivial(const FiniteGroup& g, std::size_t dim);
};

inline constexpr double kRepTolerance = 1e-12;

enum class Side { Left, Right };

/// Left: L_g delta_h = delta_{gh}. Right: R_g delta_h = delta_{h g^-1}, so that
/// (R_g f)(h) = f(hg).
UnitaryRep regular_rep(const FiniteGroup& g, Side side);

/// (1/|H|) sum_{h in H} rep(h).
Matrix averaging_projector(const UnitaryRep& rep, const Subgroup& h);

}  // namespace shiftsym
