#include "shiftsym/commands.hpp"

#include <filesystem>

#include "shiftsym/error.hpp"
#include "shiftsym/fixtures.hpp"

namespace shiftsym {

namespace {

Report base_report(const Scenario& s, std::string command) {
  Report r;
  r.command = std::move(command);
  r.scenario_name = s.name;
  r.scenario_hash = s.hash;
  r.element_names = s.data.G().names();
  for (const auto& [alias, e] : s.aliases) r.element_names[e] = alias;
  r.conventions = default_conventions();
  return r;
}

OracleRecord run_oracle(const Scenario& s, const OracleFlags& flags) {
  OracleRecord o;
  o.eps = flags.eps.value_or(s.options.oracle_eps);
  const auto& sizes = flags.sizes.empty() ? s.options.oracle_sizes : flags.sizes;
  o.rows = singular_sweep(s.data, sizes, SweepOptions{o.eps});
  o.verdict = oracle_verdict(o.rows);
  o.confident = sweep_confident(o.rows);
  return o;
}

}  // namespace

Agreement agreement(Verdict analysis, Verdict oracle) {
  return analysis == oracle ? Agreement::Agree : Agreement::Disagree;
}

Report cmd_analyze(const Scenario& s, const AnalyzeFlags& flags) {
  AnalysisOptions opts = s.options.analysis();
  if (flags.samples) opts.samples = *flags.samples;
  if (flags.seed) opts.seed = *flags.seed;
  Report r = base_report(s, "analyze");
  r.analysis = analyze(s.data, opts);
  return r;
}

Report cmd_oracle(const Scenario& s, const OracleFlags& flags) {
  Report r = base_report(s, "oracle");
  r.oracle = run_oracle(s, flags);
  return r;
}

Report cmd_compare(const Scenario& s, const OracleFlags& flags) {
  Report r = base_report(s, "compare");
  r.analysis = analyze(s.data, s.options.analysis());
  r.oracle = run_oracle(s, flags);
  r.agreement = agreement(r.analysis->overall, r.oracle->verdict);
  return r;
}

Scenario resolve_scenario(const std::string& path_or_name) {
  if (std::filesystem::exists(path_or_name)) return load_scenario(path_or_name);
  for (const auto& f : builtin_fixtures())
    if (f.name == path_or_name) return load_builtin(f.name);
  throw Error(ErrorKind::ParseError, path_or_name + ": no such file or built-in fixture");
}

}  // namespace shiftsym
