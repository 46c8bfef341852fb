#include "shiftsym/group.hpp"

#include <algorithm>
#include <set>

#include "shiftsym/error.hpp"

namespace shiftsym {

namespace {

[[noreturn]] void non_group(const std::string& why) { throw Error(ErrorKind::NonGroupTable, why); }

std::string power_name(const std::string& base, std::size_t k) {
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Element>> table,
                                    std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) non_group("empty table");
  for (const auto& row : table) {
    if (row.size() != n) non_group("table is not square");
    for (Element x : row)
      if (x >= n) non_group("entry out of range");
  }
  // Latin square.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen_row[table[i][j]]) non_group("row " + std::to_string(i) + " is not a permutation");
      if (seen_col[table[j][i]]) non_group("column " + std::to_string(i) + " is not a permutation");
      seen_row[table[i][j]] = true;
      seen_col[table[j][i]] = true;
    }
  }
  std::optional<Element> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = table[e][i] == i && table[i][e] == i;
    if (ok) id = e;
  }
  if (!id) non_group("no identity element");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          non_group("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ")");

  FiniteGroup g;
  g.table_ = std::move(table);
  g.identity_ = *id;
  g.inverse_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.table_[i][j] == *id) g.inverse_[i] = j;
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(i == *id ? "e" : "#" + std::to_string(i));
  }
  if (names.size() != n) non_group("name count does not match order");
  g.names_ = std::move(names);
  return g;
}

std::optional<Element> FiniteGroup::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  if (name == "e") return identity_;
  if (name.size() > 1 && name[0] == '#') {
    try {
      const std::size_t idx = std::stoul(name.substr(1));
      if (idx < order()) return idx;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

std::vector<Element> FiniteGroup::generate(const std::vector<Element>& gens) const {
  std::set<Element> members{identity_};
  std::vector<Element> frontier{identity_};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (Element x : frontier)
      for (Element s : gens) {
        const Element y = mul(x, s);
        if (members.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {members.begin(), members.end()};
}

FiniteGroup build_group(const GroupDescriptor& desc) {
  return std::visit(
      [](const auto& d) -> FiniteGroup {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GroupDescriptor::Cyclic>) {
          if (d.n == 0) throw Error(ErrorKind::NonGroupTable, "cyclic group of order 0");
          std::vector<std::vector<Element>> t(d.n, std::vector<Element>(d.n));
          std::vector<std::string> names(d.n);
          for (std::size_t i = 0; i < d.n; ++i) {
            names[i] = i == 0 ? "e" : power_name("g", i);
            for (std::size_t j = 0; j < d.n; ++j) t[i][j] = (i + j) % d.n;
          }
          return FiniteGroup::from_table(std::move(t), std::move(names));
        } else if constexpr (std::is_same_v<T, GroupDescriptor::Dihedral>) {
          if (d.n == 0) throw Error(ErrorKind::NonGroupTable, "dihedral group of order 0");
          const std::size_t n = d.n;
          // index k: r^k; index n+k: s r^k.
          std::vector<std::vector<Element>> t(2 * n, std::vector<Element>(2 * n));
          std::vector<std::string> names(2 * n);
          for (std::size_t a = 0; a < 2 * n; ++a) {
            const bool sa = a >= n;
            const std::size_t ka = a % n;
            names[a] = sa ? (ka == 0 ? "s" : "s" + power_name("r", ka))
                          : (ka == 0 ? "e" : power_name("r", ka));
            for (std::size_t b = 0; b < 2 * n; ++b) {
              const bool sb = b >= n;
              const std::size_t kb = b % n;
              // (s^sa r^ka)(s^sb r^kb) = s^(sa+sb) r^(kb + (sb ? -ka : ka))
              const std::size_t k = sb ? (kb + n - ka) % n : (ka + kb) % n;
              t[a][b] = (sa != sb ? n : 0) + k;
            }
          }
          return FiniteGroup::from_table(std::move(t), std::move(names));
        } else if constexpr (std::is_same_v<T, GroupDescriptor::Product>) {
          const FiniteGroup a = build_group(*d.left);
          const FiniteGroup b = build_group(*d.right);
          const std::size_t na = a.order(), nb = b.order();
          std::vector<std::vector<Element>> t(na * nb, std::vector<Element>(na * nb));
          std::vector<std::string> names(na * nb);
          for (std::size_t i = 0; i < na * nb; ++i) {
            names[i] = "(" + a.name(i / nb) + "," + b.name(i % nb) + ")";
            for (std::size_t j = 0; j < na * nb; ++j)
              t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
          }
          return FiniteGroup::from_table(std::move(t), std::move(names));
        } else {
          return FiniteGroup::from_table(d.table);
        }
      },
      desc.kind);
}

Subgroup Subgroup::from_members(std::vector<Element> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup h;
  h.members_ = std::move(members);
  return h;
}

Subgroup Subgroup::make(const FiniteGroup& g, std::vector<Element> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup h;
  h.members_ = std::move(members);
  for (Element a : h.members_)
    if (a >= g.order()) throw Error(ErrorKind::InvalidArgument, "subgroup element out of range");
  if (!h.contains(g.identity())) throw Error(ErrorKind::InvalidArgument, "subgroup lacks identity");
  for (Element a : h.members_) {
    if (!h.contains(g.inv(a))) throw Error(ErrorKind::InvalidArgument, "subgroup not closed under inverse");
    for (Element b : h.members_)
      if (!h.contains(g.mul(a, b))) throw Error(ErrorKind::InvalidArgument, "subgroup not closed under product");
  }
  return h;
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return make(g, std::move(all));
}

bool Subgroup::contains(Element a) const { return std::binary_search(members_.begin(), members_.end(), a); }

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(members_.begin(), members_.end(), other.members_.begin(), other.members_.end());
}

Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, Element gamma) {
  std::vector<Element> out;
  out.reserve(h.size());
  for (Element x : h.members()) out.push_back(g.conj(gamma, x));
  return Subgroup::make(g, std::move(out));
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Element gamma = 0; gamma < g.order(); ++gamma)
    if (!(conjugate_subgroup(g, h, gamma) == h)) return false;
  return true;
}

std::vector<Subgroup> conjugacy_class(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Subgroup> out;
  for (Element gamma = 0; gamma < g.order(); ++gamma) {
    Subgroup c = conjugate_subgroup(g, h, gamma);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<Element>> left_cosets(const FiniteGroup& g, const Subgroup& h) {
  std::vector<std::vector<Element>> out;
  std::vector<bool> used(g.order(), false);
  auto add = [&](Element gamma) {
    std::vector<Element> c;
    for (Element x : h.members()) c.push_back(g.mul(gamma, x));
    std::sort(c.begin(), c.end());
    for (Element x : c) used[x] = true;
    out.push_back(std::move(c));
  };
  add(g.identity());
  for (Element gamma = 0; gamma < g.order(); ++gamma)
    if (!used[gamma]) add(gamma);
  return out;
}

GroupAlgebraVector GroupAlgebraVector::delta(const FiniteGroup& g, Element a) {
  GroupAlgebraVector v{std::vector<cplx>(g.order(), 0.0)};
  v.coeffs[a] = 1.0;
  return v;
}

GroupAlgebraVector GroupAlgebraVector::ones(const FiniteGroup& g) {
  return GroupAlgebraVector{std::vector<cplx>(g.order(), 1.0)};
}

double UnitaryRep::homomorphism_defect(const FiniteGroup& g) const {
  double d = 0.0;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      d = std::max(d, max_abs_diff(matrices[g.mul(a, b)], matrices[a] * matrices[b]));
  return d;
}

double UnitaryRep::unitarity_defect() const {
  double d = 0.0;
  for (const Matrix& m : matrices)
    d = std::max(d, max_abs_diff(m * m.adjoint(), Matrix::Identity(m.rows(), m.cols())));
  return d;
}

bool UnitaryRep::is_trivial(double tol) const {
  for (const Matrix& m : matrices)
    if (max_abs_diff(m, Matrix::Identity(m.rows(), m.cols())) > tol) return false;
  return true;
}

UnitaryRep UnitaryRep::trivial(const FiniteGroup& g, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return UnitaryRep{dim, std::vector<Matrix>(g.order(), Matrix::Identity(d, d))};
}

UnitaryRep regular_rep(const FiniteGroup& g, Side side) {
  const std::size_t n = g.order();
  const auto ni = static_cast<Eigen::Index>(n);
  UnitaryRep rep{n, {}};
  rep.matrices.reserve(n);
  for (Element a = 0; a < n; ++a) {
    Matrix m = Matrix::Zero(ni, ni);
    for (Element h = 0; h < n; ++h) {
      const Element target = side == Side::Left ? g.mul(a, h) : g.mul(h, g.inv(a));
      m(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(h)) = 1.0;
    }
    rep.matrices.push_back(std::move(m));
  }
  return rep;
}

Matrix averaging_projector(const UnitaryRep& rep, const Subgroup& h) {
  const auto d = static_cast<Eigen::Index>(rep.dim);
  Matrix p = Matrix::Zero(d, d);
  for (Element x : h.members()) p += rep(x);
  return p / static_cast<double>(h.size());
}

}  // namespace shiftsym
