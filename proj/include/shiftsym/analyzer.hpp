#pragma once

// Fredholm decision procedure for shift operators sum_gamma D_gamma T_gamma:
// per quotient component, restrict the uniformized symbol to the
// Gamma0-invariant part of E (x) C[Gamma] over the fixed cosphere bundle and
// test invertibility on a seeded sample. Also the full-symbol (ellipticity)
// check and the rewriters for trivial, normal-isotropy and coset-bundle actions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftsym/symbol.hpp"

namespace shiftsym {

struct AnalysisOptions {
  std::size_t samples = 256;  // per copy per covector sign
  std::uint64_t seed = 0;
  double eps_inv = 1e-8;
  double marginal_upper = 1e-6;
  std::size_t refine_factor = 4;
};

/// Effective grid size: at least 8 (deg + 1) points.
std::size_t sample_count(const GammaSymbolData& data, const AnalysisOptions& opts);

enum class Verdict { Fredholm, NotFredholm, Marginal };
enum class Classification { Elliptic, FredholmNonElliptic, NotFredholm, Marginal };

std::string to_string(Verdict v);
std::string to_string(Classification c);

/// Minimum of a singular-value sweep and where it was attained.
struct SweepMin {
  double min_sv = 0.0;
  std::optional<CotangentPoint> witness;
  std::size_t samples_used = 0;
  bool refined = false;

  friend bool operator==(const SweepMin&, const SweepMin&) = default;
};

/// Thresholds a sweep minimum: below eps_inv -> NotFredholm, inside
/// [eps_inv, marginal_upper) -> Marginal, otherwise Fredholm.
Verdict classify_min(double min_sv, const AnalysisOptions& opts);

struct ComponentRecord {
  std::size_t component_id = 0;
  std::vector<std::size_t> copies;
  Subgroup gamma0;
  std::size_t restricted_dim = 0;
  std::size_t samples_used = 0;
  double min_restricted_sv = 0.0;
  Verdict verdict = Verdict::NotFredholm;
  std::optional<CotangentPoint> witness;
  std::string note;

  friend bool operator==(const ComponentRecord&, const ComponentRecord&) = default;
};

struct EllipticityResult {
  bool elliptic = false;
  SweepMin sweep;

  friend bool operator==(const EllipticityResult&, const EllipticityResult&) = default;
};

struct FredholmVerdict {
  std::vector<ComponentRecord> components;
  Verdict overall = Verdict::NotFredholm;
  Classification classification = Classification::NotFredholm;
  EllipticityResult ellipticity;

  friend bool operator==(const FredholmVerdict&, const FredholmVerdict&) = default;
};

FredholmVerdict analyze(const GammaSymbolData& data, const AnalysisOptions& opts = {});

/// Full uniformized symbol over all of S*M.
EllipticityResult ellipticity_check(const GammaSymbolData& data, const AnalysisOptions& opts = {});

struct ReductionResult {
  Verdict verdict = Verdict::NotFredholm;
  SweepMin sweep;
};

/// Invertibility of sum_gamma a_gamma over S*M. Throws NotTrivialAction.
ReductionResult trivial_action_reduce(const GammaSymbolData& data, const AnalysisOptions& opts = {});

/// Rewrites over Gamma/Gamma0 with coset-summed symbols. Returns the input
/// unchanged when Gamma0 is trivial. Throws NotNormal, NotTriviallyActing.
GammaSymbolData quotient_rewrite(const GammaSymbolData& data);

/// For M = X x (Gamma/H) with Gamma permuting the copies of X: the trivial-group
/// matrix scenario on one circle with fiber E (x) C[Gamma/H]. Throws NotCosetAction.
GammaSymbolData homogeneous_rewrite(const GammaSymbolData& data);

}  // namespace shiftsym
