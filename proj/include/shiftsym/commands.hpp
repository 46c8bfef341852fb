#pragma once

// The four CLI commands as library calls returning Reports.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shiftsym/report.hpp"
#include "shiftsym/scenario.hpp"

namespace shiftsym {

struct AnalyzeFlags {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};

struct OracleFlags {
  std::vector<std::size_t> sizes;  // scenario sizes when empty
  std::optional<double> eps;
};

Report cmd_analyze(const Scenario& s, const AnalyzeFlags& flags = {});
Report cmd_oracle(const Scenario& s, const OracleFlags& flags = {});
/// Both, plus the agreement record.
Report cmd_compare(const Scenario& s, const OracleFlags& flags = {});
/// Invariant suite over the built-in fixtures.
Report cmd_selftest();

/// Agree only when both sides reach the same verdict.
Agreement agreement(Verdict analysis, Verdict oracle);

/// A file path, or the name of a built-in fixture.
Scenario resolve_scenario(const std::string& path_or_name);

/// Per-point transversal cotangent fibers and the clopen verdict for the two
/// reference actions: a circle rotating one factor of the flat torus, and a
/// circle rotating itself.
struct TransversalDemo {
  std::vector<Eigen::MatrixXd> fibers;
  ClopenVerdict verdict;
};

TransversalDemo torus_rotation_demo(std::size_t points = 16);
TransversalDemo circle_rotation_demo(std::size_t points = 16);

}  // namespace shiftsym
