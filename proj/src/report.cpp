#include "shiftsym/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "shiftsym/error.hpp"

namespace shiftsym {

using json = nlohmann::json;

namespace {

// JSON has no infinities; they travel as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number(const json& v) {
  if (v.is_number()) return v.get<double>();
  const auto s = v.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorKind::ParseError, "bad number \"" + s + "\"");
}

Verdict verdict_from(const std::string& s) {
  if (s == "fredholm") return Verdict::Fredholm;
  if (s == "not_fredholm") return Verdict::NotFredholm;
  if (s == "marginal") return Verdict::Marginal;
  throw Error(ErrorKind::ParseError, "unknown verdict \"" + s + "\"");
}

Classification classification_from(const std::string& s) {
  if (s == "elliptic") return Classification::Elliptic;
  if (s == "fredholm_non_elliptic") return Classification::FredholmNonElliptic;
  if (s == "not_fredholm") return Classification::NotFredholm;
  if (s == "marginal") return Classification::Marginal;
  throw Error(ErrorKind::ParseError, "unknown classification \"" + s + "\"");
}

Agreement agreement_from(const std::string& s) {
  if (s == "agree") return Agreement::Agree;
  if (s == "disagree") return Agreement::Disagree;
  if (s == "not_run") return Agreement::NotRun;
  throw Error(ErrorKind::ParseError, "unknown oracle agreement \"" + s + "\"");
}

json point_json(const std::optional<CotangentPoint>& p) {
  if (!p) return nullptr;
  return {{"copy", p->copy}, {"theta", number(p->theta)}, {"xi", p->xi}};
}

std::optional<CotangentPoint> point_from(const json& v) {
  if (v.is_null()) return std::nullopt;
  return CotangentPoint{v.at("copy").get<std::size_t>(), number(v.at("theta")), v.at("xi").get<int>()};
}

json sweep_json(const SweepMin& s) {
  return {{"min_sv", number(s.min_sv)}, {"witness", point_json(s.witness)}, {"samples_used", s.samples_used},
          {"refined", s.refined}};
}

SweepMin sweep_from(const json& v) {
  return SweepMin{number(v.at("min_sv")), point_from(v.at("witness")), v.at("samples_used").get<std::size_t>(),
                  v.at("refined").get<bool>()};
}

json analysis_json(const FredholmVerdict& f) {
  json comps = json::array();
  for (const auto& c : f.components)
    comps.push_back({{"component_id", c.component_id},
                     {"copies", c.copies},
                     {"gamma0", c.gamma0.members()},
                     {"restricted_dim", c.restricted_dim},
                     {"samples_used", c.samples_used},
                     {"min_restricted_sv", number(c.min_restricted_sv)},
                     {"verdict", to_string(c.verdict)},
                     {"witness", point_json(c.witness)},
                     {"note", c.note}});
  return {{"components", comps},
          {"overall", to_string(f.overall)},
          {"classification", to_string(f.classification)},
          {"ellipticity", {{"elliptic", f.ellipticity.elliptic}, {"sweep", sweep_json(f.ellipticity.sweep)}}}};
}

FredholmVerdict analysis_from(const json& v) {
  FredholmVerdict f;
  for (const auto& c : v.at("components")) {
    ComponentRecord r;
    r.component_id = c.at("component_id").get<std::size_t>();
    r.copies = c.at("copies").get<std::vector<std::size_t>>();
    r.gamma0 = Subgroup::from_members(c.at("gamma0").get<std::vector<Element>>());
    r.restricted_dim = c.at("restricted_dim").get<std::size_t>();
    r.samples_used = c.at("samples_used").get<std::size_t>();
    r.min_restricted_sv = number(c.at("min_restricted_sv"));
    r.verdict = verdict_from(c.at("verdict").get<std::string>());
    r.witness = point_from(c.at("witness"));
    r.note = c.at("note").get<std::string>();
    f.components.push_back(std::move(r));
  }
  f.overall = verdict_from(v.at("overall").get<std::string>());
  f.classification = classification_from(v.at("classification").get<std::string>());
  f.ellipticity.elliptic = v.at("ellipticity").at("elliptic").get<bool>();
  f.ellipticity.sweep = sweep_from(v.at("ellipticity").at("sweep"));
  return f;
}

json oracle_json(const OracleRecord& o) {
  json rows = json::array();
  for (const auto& r : o.rows)
    rows.push_back({{"n", r.n},
                    {"dimension", r.dimension},
                    {"sigma_min", number(r.sigma_min)},
                    {"count_below", r.count_below},
                    {"count_below_tight", r.count_below_tight},
                    {"count_below_loose", r.count_below_loose},
                    {"gap", number(r.gap)},
                    {"residual", r.residual ? number(*r.residual) : json(nullptr)}});
  return {{"eps", number(o.eps)}, {"rows", rows}, {"verdict", to_string(o.verdict)}, {"confident", o.confident}};
}

OracleRecord oracle_from(const json& v) {
  OracleRecord o;
  o.eps = number(v.at("eps"));
  for (const auto& r : v.at("rows")) {
    SweepRow row;
    row.n = r.at("n").get<std::size_t>();
    row.dimension = r.at("dimension").get<std::size_t>();
    row.sigma_min = number(r.at("sigma_min"));
    row.count_below = r.at("count_below").get<std::size_t>();
    row.count_below_tight = r.at("count_below_tight").get<std::size_t>();
    row.count_below_loose = r.at("count_below_loose").get<std::size_t>();
    row.gap = number(r.at("gap"));
    if (!r.at("residual").is_null()) row.residual = number(r.at("residual"));
    o.rows.push_back(row);
  }
  o.verdict = verdict_from(v.at("verdict").get<std::string>());
  o.confident = v.at("confident").get<bool>();
  return o;
}

std::string upper(std::string s) {
  for (char& c : s) c = c == '_' ? ' ' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << v;
  return os.str();
}

std::string witness_line(const CotangentPoint& p) {
  std::ostringstream os;
  os << "(copy " << p.copy << ", theta/2pi " << std::fixed << std::setprecision(9)
     << p.theta / (2.0 * std::numbers::pi) << ", xi " << (p.xi > 0 ? "+1" : "-1") << ")";
  return os.str();
}

std::string subgroup_names(const Subgroup& h, const std::vector<std::string>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.members().size(); ++i) {
    const Element e = h.members()[i];
    s += (i ? ", " : "") + (e < names.size() ? names[e] : "#" + std::to_string(e));
  }
  return s + "}";
}

std::string text(const Report& r) {
  std::ostringstream os;
  os << "shiftsym " << r.tool_version << "  " << r.command;
  if (!r.scenario_name.empty()) os << "  " << r.scenario_name << "  [" << r.scenario_hash << "]";
  os << "\n";
  if (r.analysis) {
    const FredholmVerdict& f = *r.analysis;
    os << "verdict: " << upper(to_string(f.overall)) << "  (" << to_string(f.classification) << ")\n";
    for (const auto& c : f.components) {
      os << "component " << c.component_id << "  copies {";
      for (std::size_t i = 0; i < c.copies.size(); ++i) os << (i ? ", " : "") << c.copies[i];
      os << "}  gamma0 " << subgroup_names(c.gamma0, r.element_names) << "  restricted dim " << c.restricted_dim
         << "  samples " << c.samples_used << "\n";
      os << "  min singular value " << sci(c.min_restricted_sv) << "  -> " << to_string(c.verdict) << "\n";
      if (c.witness) os << "  witness " << witness_line(*c.witness) << "\n";
      if (!c.note.empty()) os << "  note: " << c.note << "\n";
    }
    os << "full symbol: min singular value " << sci(f.ellipticity.sweep.min_sv) << "  ("
       << (f.ellipticity.elliptic ? "elliptic" : "not elliptic") << ")\n";
  }
  if (r.oracle) {
    const OracleRecord& o = *r.oracle;
    os << "oracle (eps " << sci(o.eps) << "): " << to_string(o.verdict) << (o.confident ? "" : "  (counts eps-sensitive)")
       << "\n";
    os << "  " << std::setw(6) << "N" << std::setw(8) << "dim" << std::setw(16) << "sigma_min" << std::setw(8)
       << "count" << std::setw(16) << "residual" << "\n";
    for (const auto& row : o.rows)
      os << "  " << std::setw(6) << row.n << std::setw(8) << row.dimension << std::setw(16) << sci(row.sigma_min)
         << std::setw(8) << row.count_below << std::setw(16) << (row.residual ? sci(*row.residual) : "-") << "\n";
  }
  if (r.agreement != Agreement::NotRun) os << "oracle agreement: " << to_string(r.agreement) << "\n";
  for (const auto& c : r.checks)
    os << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
  return os.str();
}

}  // namespace

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "agree";
    case Agreement::Disagree: return "disagree";
    case Agreement::NotRun: return "not_run";
  }
  return "?";
}

std::optional<Verdict> Report::verdict() const {
  if (analysis) return analysis->overall;
  if (oracle) return oracle->verdict;
  return std::nullopt;
}

int Report::exit_code() const {
  if (agreement == Agreement::Disagree) return 3;
  for (const auto& c : checks)
    if (!c.passed) return 4;
  return 0;
}

std::map<std::string, std::string> default_conventions() {
  return {{"quantization", kQuantizationTag},
          {"egorov", "block(h, h*gamma) = U(h) a_gamma(h^-1 xi) U(h)^-1"},
          {"fixed_sphere", "covectors fixed by the induced Gamma0 action"},
          {"index_sign", std::to_string(kIndexSign) + " * winding(a+/a-)"},
          {"angles", "fractions of a full turn"}};
}

std::string emit_report(const Report& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Text:
      return text(r);
    case ReportFormat::Csv:
      return r.oracle ? sweep_csv(r.oracle->rows) : std::string("N,sigma_min,count_below_eps,residual\n");
    case ReportFormat::Json: {
      json checks = json::array();
      for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      const auto v = r.verdict();
      json doc = {{"schema", kReportSchema},
                  {"tool_version", r.tool_version},
                  {"command", r.command},
                  {"scenario", {{"name", r.scenario_name}, {"hash", r.scenario_hash}}},
                  {"element_names", r.element_names},
                  {"verdict", v ? json(to_string(*v)) : json(nullptr)},
                  {"analysis", r.analysis ? analysis_json(*r.analysis) : json(nullptr)},
                  {"oracle", r.oracle ? oracle_json(*r.oracle) : json(nullptr)},
                  {"oracle_agreement", to_string(r.agreement)},
                  {"checks", checks},
                  {"conventions", r.conventions}};
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

Report parse_report(const std::string& json_text) {
  try {
    const json doc = json::parse(json_text);
    if (doc.at("schema") != kReportSchema) throw Error(ErrorKind::ParseError, "unsupported report schema");
    Report r;
    r.tool_version = doc.at("tool_version").get<std::string>();
    r.command = doc.at("command").get<std::string>();
    r.scenario_name = doc.at("scenario").at("name").get<std::string>();
    r.scenario_hash = doc.at("scenario").at("hash").get<std::string>();
    r.element_names = doc.at("element_names").get<std::vector<std::string>>();
    if (!doc.at("analysis").is_null()) r.analysis = analysis_from(doc.at("analysis"));
    if (!doc.at("oracle").is_null()) r.oracle = oracle_from(doc.at("oracle"));
    r.agreement = agreement_from(doc.at("oracle_agreement").get<std::string>());
    for (const auto& c : doc.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
    r.conventions = doc.at("conventions").get<std::map<std::string, std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("report: ") + e.what());
  }
}

}  // namespace shiftsym
