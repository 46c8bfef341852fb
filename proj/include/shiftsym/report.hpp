#pragma once

// Reports produced by the CLI commands and their text / JSON / CSV forms. The
// JSON form is versioned (kReportSchema) and parses back to an equal Report.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftsym/analyzer.hpp"
#include "shiftsym/oracle.hpp"

namespace shiftsym {

inline constexpr const char* kReportSchema = "shiftsym-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Agreement { Agree, Disagree, NotRun };
std::string to_string(Agreement a);

struct OracleRecord {
  double eps = 1e-6;
  std::vector<SweepRow> rows;
  Verdict verdict = Verdict::Marginal;
  bool confident = false;

  friend bool operator==(const OracleRecord&, const OracleRecord&) = default;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct Report {
  std::string command;
  std::string scenario_name;
  std::string scenario_hash;
  std::vector<std::string> element_names;
  std::optional<FredholmVerdict> analysis;
  std::optional<OracleRecord> oracle;
  Agreement agreement = Agreement::NotRun;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> conventions;
  std::string tool_version = kToolVersion;

  /// Overall verdict: the analysis when present, the oracle otherwise.
  std::optional<Verdict> verdict() const;
  /// 0 only if no check failed and the oracle does not disagree.
  int exit_code() const;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Convention tags stamped on every report.
std::map<std::string, std::string> default_conventions();

enum class ReportFormat { Text, Json, Csv };

std::string emit_report(const Report& r, ReportFormat format);
/// Inverse of emit_report(r, Json). Throws ParseError.
Report parse_report(const std::string& json_text);

}  // namespace shiftsym
