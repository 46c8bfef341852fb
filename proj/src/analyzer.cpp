#include "shiftsym/analyzer.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "shiftsym/error.hpp"
#include "shiftsym/parallel.hpp"

namespace shiftsym {

namespace {

using RunMins = std::function<std::vector<double>(const SphereSample::Run&)>;

SweepMin sweep_runs(const SphereSample& sample, const RunMins& per_run) {
  std::vector<std::vector<double>> mins(sample.runs.size());
  parallel_for(sample.runs.size(), [&](std::size_t i) { mins[i] = per_run(sample.runs[i]); });
  SweepMin out;
  out.min_sv = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sample.runs.size(); ++i) {
    const auto& run = sample.runs[i];
    for (std::size_t j = 0; j < run.thetas.size(); ++j) {
      if (mins[i][j] < out.min_sv) {
        out.min_sv = mins[i][j];
        out.witness = CotangentPoint{run.copy, run.thetas[j], run.xi};
      }
    }
  }
  out.samples_used = sample.size();
  return out;
}

// One pass at the base density, and a denser pass when the minimum lands in the
// marginal band.
SweepMin refined_sweep(const std::function<SphereSample(std::size_t)>& sampler, const RunMins& per_run,
                       std::size_t count, const AnalysisOptions& opts) {
  SweepMin first = sweep_runs(sampler(count), per_run);
  if (classify_min(first.min_sv, opts) != Verdict::Marginal) return first;
  SweepMin second = sweep_runs(sampler(count * opts.refine_factor), per_run);
  second.refined = true;
  if (first.min_sv < second.min_sv) {
    second.min_sv = first.min_sv;
    second.witness = first.witness;
  }
  return second;
}

std::vector<double> min_singulars(const std::vector<Matrix>& ms) {
  std::vector<double> out;
  out.reserve(ms.size());
  for (const Matrix& m : ms) out.push_back(min_singular(m));
  return out;
}

bool zero_on_copies(const GammaSymbolData& data, const std::vector<std::size_t>& copies) {
  for (const auto& [g, s] : data.symbols)
    for (std::size_t c : copies)
      for (int xi : {1, -1})
        for (std::size_t r = 0; r < s.rank(); ++r)
          for (std::size_t q = 0; q < s.rank(); ++q)
            for (const cplx& v : s.entry(c, xi, r, q))
              if (v != cplx{0.0, 0.0}) return false;
  return true;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Fredholm: return "fredholm";
    case Verdict::NotFredholm: return "not_fredholm";
    case Verdict::Marginal: return "marginal";
  }
  return "?";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Elliptic: return "elliptic";
    case Classification::FredholmNonElliptic: return "fredholm_non_elliptic";
    case Classification::NotFredholm: return "not_fredholm";
    case Classification::Marginal: return "marginal";
  }
  return "?";
}

std::size_t sample_count(const GammaSymbolData& data, const AnalysisOptions& opts) {
  return std::max(opts.samples, static_cast<std::size_t>(8 * (data.max_degree() + 1)));
}

Verdict classify_min(double min_sv, const AnalysisOptions& opts) {
  if (min_sv < opts.eps_inv) return Verdict::NotFredholm;
  if (min_sv < opts.marginal_upper) return Verdict::Marginal;
  return Verdict::Fredholm;
}

EllipticityResult ellipticity_check(const GammaSymbolData& data, const AnalysisOptions& opts) {
  data.validate();
  const UniformizedSymbol sigma(data);
  const IsometricAction& action = *data.action;
  EllipticityResult r;
  r.sweep = refined_sweep([&](std::size_t n) { return sample_sphere(action, n, opts.seed); },
                          [&](const SphereSample::Run& run) {
                            return min_singulars(sigma.eval_batch(run.copy, run.xi, run.thetas));
                          },
                          sample_count(data, opts), opts);
  r.elliptic = r.sweep.min_sv >= opts.eps_inv;
  return r;
}

FredholmVerdict analyze(const GammaSymbolData& data, const AnalysisOptions& opts) {
  data.validate();
  const IsometricAction& action = *data.action;
  const UniformizedSymbol sigma(data);
  const std::size_t count = sample_count(data, opts);

  FredholmVerdict out;
  const auto components = quotient_components(action);
  for (std::size_t id = 0; id < components.size(); ++id) {
    const auto& comp = components[id];
    const IsotropyReport iso = minimal_isotropy(action, comp, id);

    std::vector<Matrix> reps;
    for (Element h : iso.gamma0.members()) reps.push_back(tl_matrix(action, h));

    auto sampler = [&](std::size_t n) { return sample_fixed_sphere(action, iso.gamma0, n, opts.seed, comp); };
    const SphereSample first = sampler(count);
    // The fiber action U (x) L does not depend on the base point, so one
    // projector serves the whole component once fixedness is checked.
    const CotangentPoint probe{first.runs.front().copy, first.runs.front().thetas.front(), first.runs.front().xi};
    const InvariantProjector proj = invariant_projector(action, iso.gamma0, probe);

    // Symbols are local: cross-component blocks never enter the restriction.
    auto per_run = [&](const SphereSample::Run& run) {
      for (Element h : iso.gamma0.members())
        (void)tl_rep_fiber(action, h, CotangentPoint{run.copy, run.thetas.front(), run.xi});
      std::vector<double> mins;
      for (const Matrix& s : sigma.eval_batch(run.copy, run.xi, run.thetas))
        mins.push_back(min_singular(restricted_symbol(s, proj.basis, reps)));
      return mins;
    };
    const SweepMin sweep = refined_sweep(sampler, per_run, count, opts);

    ComponentRecord rec;
    rec.component_id = id;
    rec.copies = comp;
    rec.gamma0 = iso.gamma0;
    rec.restricted_dim = static_cast<std::size_t>(proj.basis.cols());
    rec.samples_used = sweep.samples_used;
    rec.min_restricted_sv = sweep.min_sv;
    rec.verdict = classify_min(sweep.min_sv, opts);
    rec.witness = sweep.witness;
    if (zero_on_copies(data, comp)) {
      rec.verdict = Verdict::NotFredholm;
      rec.note = "zero operator";
    } else if (sweep.refined) {
      rec.note = "marginal band resampled at " + std::to_string(opts.refine_factor) + "x density";
    }
    out.components.push_back(std::move(rec));
  }

  const bool any_not = std::any_of(out.components.begin(), out.components.end(),
                                   [](const ComponentRecord& c) { return c.verdict == Verdict::NotFredholm; });
  const bool all_fred = std::all_of(out.components.begin(), out.components.end(),
                                    [](const ComponentRecord& c) { return c.verdict == Verdict::Fredholm; });
  out.overall = all_fred ? Verdict::Fredholm : any_not ? Verdict::NotFredholm : Verdict::Marginal;
  out.ellipticity = ellipticity_check(data, opts);
  if (out.overall == Verdict::Fredholm)
    out.classification = out.ellipticity.elliptic ? Classification::Elliptic : Classification::FredholmNonElliptic;
  else
    out.classification = out.overall == Verdict::Marginal ? Classification::Marginal : Classification::NotFredholm;
  return out;
}

ReductionResult trivial_action_reduce(const GammaSymbolData& data, const AnalysisOptions& opts) {
  data.validate();
  const IsometricAction& action = *data.action;
  if (!action.is_trivial()) throw Error(ErrorKind::NotTrivialAction, "the action on M or on the fiber is not trivial");
  TrigMatrixSymbol total(data.rank(), action.copies());
  for (const auto& [g, s] : data.symbols) total += s;
  ReductionResult r;
  r.sweep = refined_sweep([&](std::size_t n) { return sample_sphere(action, n, opts.seed); },
                          [&](const SphereSample::Run& run) {
                            return min_singulars(total.eval_batch(run.copy, run.xi, run.thetas));
                          },
                          sample_count(data, opts), opts);
  r.verdict = classify_min(r.sweep.min_sv, opts);
  return r;
}

GammaSymbolData quotient_rewrite(const GammaSymbolData& data) {
  data.validate();
  const IsometricAction& action = *data.action;
  const FiniteGroup& g = action.G();
  const auto components = quotient_components(action);
  std::optional<Subgroup> gamma0;
  for (std::size_t id = 0; id < components.size(); ++id) {
    Subgroup h = minimal_isotropy(action, components[id], id).gamma0;
    if (gamma0 && !(*gamma0 == h))
      throw Error(ErrorKind::NotTriviallyActing, "components have different minimal isotropy subgroups");
    gamma0 = std::move(h);
  }
  if (!is_normal(g, *gamma0)) throw Error(ErrorKind::NotNormal, "minimal isotropy subgroup is not normal");
  for (Element h : gamma0->members())
    if (!action.maps[h].is_identity() || !action.fiber_rep(h).isIdentity(kRepTolerance))
      throw Error(ErrorKind::NotTriviallyActing, "element " + g.name(h) + " of the minimal isotropy subgroup acts");
  if (gamma0->size() == 1) return data;

  const auto cosets = left_cosets(g, *gamma0);
  std::vector<std::size_t> coset_of(g.order());
  for (std::size_t i = 0; i < cosets.size(); ++i)
    for (Element x : cosets[i]) coset_of[x] = i;
  const std::size_t q = cosets.size();
  std::vector<std::vector<Element>> table(q, std::vector<Element>(q));
  std::vector<std::string> names(q);
  for (std::size_t i = 0; i < q; ++i) {
    names[i] = i == 0 ? "e" : "[" + g.name(cosets[i].front()) + "]";
    for (std::size_t j = 0; j < q; ++j) table[i][j] = coset_of[g.mul(cosets[i].front(), cosets[j].front())];
  }
  auto quotient = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(table), std::move(names)));

  std::map<Element, IsometryDescriptor> maps;
  std::map<Element, Matrix> fiber;
  for (std::size_t i = 0; i < q; ++i) {
    maps[i] = action.maps[cosets[i].front()];
    fiber[i] = action.fiber_rep(cosets[i].front());
  }
  GammaSymbolData out;
  out.action = std::make_shared<const IsometricAction>(
      build_action(quotient, action.manifold, maps, action.fiber_rank, fiber));
  for (const auto& [x, s] : data.symbols) {
    auto [it, inserted] = out.symbols.try_emplace(coset_of[x], s);
    if (!inserted) it->second += s;
  }
  return out;
}

GammaSymbolData homogeneous_rewrite(const GammaSymbolData& data) {
  data.validate();
  const IsometricAction& action = *data.action;
  if (action.manifold.kind != ModelManifold::Kind::CircleUnion)
    throw Error(ErrorKind::NotCosetAction, "manifold is not a union of circles");
  for (const auto& m : action.maps)
    for (const CopyMap& cm : m.per_copy)
      if (!cm.angle.is_zero() || cm.orientation != 1)
        throw Error(ErrorKind::NotCosetAction, "the action moves points within a copy");
  if (quotient_components(action).size() != 1)
    throw Error(ErrorKind::NotCosetAction, "the group does not permute the copies transitively");

  const std::size_t copies = action.copies();
  const std::size_t k = action.fiber_rank;
  const auto ki = static_cast<Eigen::Index>(k);
  const int deg = data.max_degree();
  TrigMatrixSymbol out_sym(k * copies, 1, deg);
  for (const auto& [gamma, a] : data.symbols) {
    const Matrix& u = action.fiber_rep(gamma);
    for (std::size_t src = 0; src < copies; ++src) {
      // (D s)(r) gets a_gamma^{(r)} U(gamma) s(src) where r = gamma . src.
      const std::size_t r = action.maps[gamma].copy_perm[src];
      for (int xi : {1, -1})
        for (int mode = -a.degree(); mode <= a.degree(); ++mode) {
          const Matrix block = a.mode_matrix(r, xi, mode) * u;
          for (Eigen::Index i = 0; i < ki; ++i)
            for (Eigen::Index j = 0; j < ki; ++j) {
              const std::size_t row = r * k + static_cast<std::size_t>(i);
              const std::size_t col = src * k + static_cast<std::size_t>(j);
              out_sym.set_coeff(0, xi, row, col, mode, out_sym.coeff(0, xi, row, col, mode) + block(i, j));
            }
        }
    }
  }
  auto trivial = std::make_shared<const FiniteGroup>(build_group(GroupDescriptor{GroupDescriptor::Cyclic{1}}));
  GammaSymbolData out;
  out.action = std::make_shared<const IsometricAction>(
      build_action(trivial, ModelManifold{ModelManifold::Kind::CircleUnion, 1}, {}, k * copies));
  out.symbols.emplace(trivial->identity(), std::move(out_sym));
  return out;
}

}  // namespace shiftsym
