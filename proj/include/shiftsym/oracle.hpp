#pragma once

// Finite-dimensional ground truth for the symbol pipeline. Sections on each
// circle copy are sampled on an N-point grid; order-0 symbols are quantized as
//
//   Op(a) = M_{a(., +1)} P_+ + M_{a(., -1)} P_-
//
// with P_+ keeping Fourier modes 0..N/2-1 and P_- keeping -N/2..-1. Grid
// layout on M: index = (copy * k + r) * N + j; on M x Gamma the group index
// is outermost.

#include <optional>
#include <string>
#include <vector>

#include "shiftsym/analyzer.hpp"

namespace shiftsym {

inline constexpr const char* kQuantizationTag = "op(a)=M[a+]P+ + M[a-]P-; P+ = modes 0..N/2-1";

/// Throws BadGrid (N not a power of two >= 2) or IncommensurableAngle.
void check_grid(const IsometricAction& action, std::size_t n);

struct DiscretizedOperator {
  std::size_t grid_size = 0;
  std::size_t dimension = 0;
  Matrix matrix;
  std::string scenario_hash;
  std::string quantization = kQuantizationTag;
};

/// Op(a) on all copies, size copies * k * N. Throws BadGrid.
Matrix discretize_symbol_op(const TrigMatrixSymbol& a, std::size_t n);

/// (T_gamma s)(x) = U(gamma) s(gamma^-1 x) as a permutation-unitary matrix.
Matrix discretize_shift(const IsometricAction& action, Element gamma, std::size_t n);

/// sum_gamma Op(a_gamma) T_gamma.
DiscretizedOperator assemble_gamma_operator(const GammaSymbolData& data, std::size_t n);

/// Sparse operator on the grid of M x Gamma (or M) with one k x k block per
/// grid point: basis (p, q) goes to sum_r block[p](r, q) (target[p], r).
struct MonomialOp {
  std::size_t k = 1;
  std::size_t points_per_block = 0;  // N
  std::vector<std::size_t> target;   // per point
  std::vector<Matrix> block;         // per point

  std::size_t dimension() const { return target.size() * k; }
  Matrix dense() const;
  /// this * x
  Matrix apply(const Matrix& x) const;
  MonomialOp adjoint() const;
};

MonomialOp compose(const MonomialOp& a, const MonomialOp& b);  // a * b
/// x * op
Matrix times(const Matrix& x, const MonomialOp& op);
/// Max entry difference, infinite when the point maps differ.
double distance(const MonomialOp& a, const MonomialOp& b);
MonomialOp identity_op(std::size_t points, std::size_t k, std::size_t n);

/// Qs(x, g) = U(g) s(g^-1 x, g^-1)
MonomialOp q_operator(const IsometricAction& action, std::size_t n);
/// (1 (x) R_gamma)s(x, g) = s(x, g gamma)
MonomialOp right_operator(const IsometricAction& action, Element gamma, std::size_t n);
/// (T_gamma (x) L_gamma)s(x, g) = U(gamma) s(gamma^-1 x, gamma^-1 g)
MonomialOp tl_operator(const IsometricAction& action, Element gamma, std::size_t n);

/// Isometry L^2(M, E) -> invariants of T (x) L: s -> Q(s (x) 1_Gamma) / sqrt|Gamma|.
Matrix invariant_isometry(const IsometricAction& action, std::size_t n);

struct UniformizedDiscretization {
  Matrix hat;                           // sum_gamma Q (D_gamma (x) Id) Q (1 (x) R_gamma)
  double residual = 0.0;                // || V* hat V - D_N ||_max
  double convention_residual = 0.0;     // same with hat assembled from the twisted symbol blocks
  double symbol_hat_difference = 0.0;   // || hat_from_symbol - hat ||_max
};

/// Builds the uniformized operator from explicit Q, R and D_gamma (x) Id and
/// checks it against D_N. The second assembly quantizes the blocks of the
/// uniformized symbol under `conv`; it pins the Egorov convention.
UniformizedDiscretization assemble_uniformized(const GammaSymbolData& data, std::size_t n,
                                               EgorovConvention conv = EgorovConvention::PullbackInverse);

struct SweepRow {
  std::size_t n = 0;
  std::size_t dimension = 0;
  double sigma_min = 0.0;
  std::size_t count_below = 0;
  std::size_t count_below_tight = 0;  // at eps / 10
  std::size_t count_below_loose = 0;  // at eps * 10
  double gap = 0.0;                   // smallest singular value >= eps
  std::optional<double> residual;     // uniformization residual, when computed

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepOptions {
  double eps = 1e-6;
  std::size_t residual_max_dimension = 2048;  // skip the residual above this size of M x Gamma
};

std::vector<SweepRow> singular_sweep(const GammaSymbolData& data, const std::vector<std::size_t>& sizes,
                                     const SweepOptions& opts = {});

/// Fredholm proxy read off a sweep: not_fredholm when the near-kernel count at
/// least doubles between the smallest and largest size, or the gap above it
/// drops by more than 10%.
Verdict oracle_verdict(const std::vector<SweepRow>& rows);

/// Counts agree at eps/10, eps and 10 eps for every size.
bool sweep_confident(const std::vector<SweepRow>& rows);

std::string sweep_csv(const std::vector<SweepRow>& rows);

struct IndexResult {
  long index = 0;
  std::size_t kernel = 0;
  std::size_t cokernel = 0;
  bool confident = false;  // identical at eps/10 and 10 eps
};

/// dim ker - dim coker of the Fourier-mode section with input modes [-N/2, N/2)
/// and an output window wide enough that no column is truncated. Throws
/// NotFredholmScenario unless analyze() returns fredholm.
IndexResult numerical_index(const GammaSymbolData& data, std::size_t n, double eps = 1e-6,
                            const AnalysisOptions& analysis = {});

/// Winding number of theta -> a(theta, +1) / a(theta, -1) for a scalar
/// trivial-group symbol on one copy. Throws VanishingSymbol, InvalidArgument.
long winding_number(const TrigMatrixSymbol& a, double eps_inv = 1e-8);

/// numerical_index = kIndexSign * winding_number, frozen by the Toeplitz pin
/// (a_+ = e^{i theta}, a_- = 1 has index -1).
inline constexpr long kIndexSign = -1;

}  // namespace shiftsym
