#pragma once

// Order-0 principal symbols on the cosphere bundle of a circle union, the
// family {gamma -> a_gamma} of a shift operator sum_gamma D_gamma T_gamma and
// its uniformized block symbol on E (x) C[Gamma].
//
// Fiber layout of E (x) C[Gamma]: index = gamma * k + r (group-major).

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "shiftsym/geometry.hpp"
#include "shiftsym/linalg.hpp"

namespace shiftsym {

/// k x k matrix of trigonometric polynomials per copy and per covector sign.
class TrigMatrixSymbol {
 public:
  TrigMatrixSymbol() = default;
  TrigMatrixSymbol(std::size_t rank, std::size_t copies, int degree = 0);

  static TrigMatrixSymbol constant(std::size_t copies, const Matrix& value);

  std::size_t rank() const { return rank_; }
  std::size_t copies() const { return copies_; }
  int degree() const { return degree_; }

  /// Fourier coefficients c_m, m in [-degree, degree], of one entry.
  std::span<const cplx> entry(std::size_t copy, int xi, std::size_t r, std::size_t c) const;
  /// Sets c_m for one entry, growing the degree if needed.
  void set_coeff(std::size_t copy, int xi, std::size_t r, std::size_t c, int mode, cplx value);
  cplx coeff(std::size_t copy, int xi, std::size_t r, std::size_t c, int mode) const;
  /// Coefficient matrix of Fourier mode m.
  Matrix mode_matrix(std::size_t copy, int xi, int mode) const;

  Matrix eval(std::size_t copy, double theta, int xi) const;
  Matrix eval(const CotangentPoint& p) const { return eval(p.copy, p.theta, p.xi); }
  /// One k x k matrix per angle, through the active trig kernel.
  std::vector<Matrix> eval_batch(std::size_t copy, int xi, std::span<const double> thetas) const;

  /// b(copy, theta, xi) = left * a(map(copy, theta, xi)) * right, where map acts on
  /// covectors through its orientation.
  TrigMatrixSymbol pullback(const IsometryDescriptor& map, const Matrix& left, const Matrix& right) const;
  /// Pointwise a * m for a constant k x k matrix.
  TrigMatrixSymbol times(const Matrix& m) const;

  TrigMatrixSymbol& operator+=(const TrigMatrixSymbol& o);
  friend TrigMatrixSymbol operator+(TrigMatrixSymbol a, const TrigMatrixSymbol& b) { return a += b; }
  TrigMatrixSymbol scaled(cplx s) const;

  bool is_finite() const;
  friend bool operator==(const TrigMatrixSymbol&, const TrigMatrixSymbol&) = default;

 private:
  std::size_t slot(std::size_t copy, int xi, std::size_t r, std::size_t c) const;
  void grow(int degree);

  std::size_t rank_ = 0;
  std::size_t copies_ = 0;
  int degree_ = 0;
  std::vector<std::vector<cplx>> entries_;  // [((copy*2 + branch)*k + r)*k + c]
};

struct GammaSymbolData {
  std::shared_ptr<const IsometricAction> action;
  std::map<Element, TrigMatrixSymbol> symbols;  // absent gamma means a_gamma = 0

  /// Throws ValidationError naming the element and the mismatch.
  void validate() const;
  const FiniteGroup& G() const { return action->G(); }
  std::size_t rank() const { return action->fiber_rank; }
  int max_degree() const;
};

/// Zero matrix when gamma carries no symbol.
Matrix eval_symbol(const GammaSymbolData& data, Element gamma, const CotangentPoint& p);

/// Direction of the Egorov twist inside the uniformized symbol. Only
/// PullbackInverse matches the operator; the others exist as negative controls.
enum class EgorovConvention {
  PullbackInverse,  // U(h) a_gamma(h^-1 xi) U(h)^-1
  PullbackForward,  // U(h)^-1 a_gamma(h xi) U(h)
  NoPullback,       // a_gamma(xi)
};

/// Block (h, h*gamma) of the uniformized symbol as a symbol in its own right.
TrigMatrixSymbol twisted_block(const GammaSymbolData& data, Element gamma, Element h,
                               EgorovConvention conv = EgorovConvention::PullbackInverse);

/// Precomputes the twisted blocks and evaluates the (k|Gamma|)-square symbol.
class UniformizedSymbol {
 public:
  explicit UniformizedSymbol(const GammaSymbolData& data,
                             EgorovConvention conv = EgorovConvention::PullbackInverse);

  std::size_t dim() const { return dim_; }
  Matrix operator()(const CotangentPoint& p) const;
  std::vector<Matrix> eval_batch(std::size_t copy, int xi, std::span<const double> thetas) const;

 private:
  struct Block {
    Element row;
    Element col;
    TrigMatrixSymbol symbol;
  };
  std::size_t k_;
  std::size_t dim_;
  std::vector<Block> blocks_;
};

Matrix uniformized_symbol(const GammaSymbolData& data, const CotangentPoint& p,
                          EgorovConvention conv = EgorovConvention::PullbackInverse);

/// U(h) (x) L_h on E (x) C[Gamma]: v (x) delta_g -> U(h)v (x) delta_{hg}.
Matrix tl_matrix(const IsometricAction& action, Element h);
/// I (x) R_gamma: v (x) delta_g -> v (x) delta_{g gamma^-1}.
Matrix right_matrix(const IsometricAction& action, Element gamma);
/// Fiber form of the intertwiner: v (x) delta_g -> U(g^-1)v (x) delta_{g^-1}.
Matrix fiber_q(const IsometricAction& action);

/// tl_matrix(h), after checking that h fixes the covector. Throws NotFixed.
Matrix tl_rep_fiber(const IsometricAction& action, Element h, const CotangentPoint& p);

struct InvariantProjector {
  Matrix projector;
  Matrix basis;  // orthonormal columns spanning the range
};

/// Average of the (T (x) L)-fiber action over Gamma0. Throws NotFixed.
InvariantProjector invariant_projector(const IsometricAction& action, const Subgroup& gamma0,
                                       const CotangentPoint& p);

inline constexpr double kEquivarianceTolerance = 1e-8;

/// B* sigma B, after checking that sigma commutes with each matrix in `reps`.
/// Throws NotEquivariant.
Matrix restricted_symbol(const Matrix& sigma, const Matrix& basis, std::span<const Matrix> reps = {});

/// || sigma(gamma xi) rho(gamma) - rho(gamma) sigma(xi) ||_max with rho = U (x) L.
double equivariance_defect(const GammaSymbolData& data, Element gamma, const CotangentPoint& p,
                           EgorovConvention conv = EgorovConvention::PullbackInverse);

}  // namespace shiftsym
