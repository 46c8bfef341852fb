// shiftsym: Fredholm analysis of finite-group shift operators on circle unions.
//
//   shiftsym analyze <file> [--samples N] [--seed S]
//   shiftsym oracle  <file> [--sizes 64,128,256,512] [--eps 1e-6]
//   shiftsym compare <file>
//   shiftsym selftest
//
// <file> may also name a built-in fixture. Exit codes: 0 success, 1 usage,
// 2 parse or validation error, 3 oracle disagreement, 4 failed self-test check.

#include <iostream>

#include <CLI11.hpp>

#include "shiftsym/commands.hpp"
#include "shiftsym/error.hpp"
#include "shiftsym/fixtures.hpp"

namespace {

shiftsym::ReportFormat parse_format(const std::string& f) {
  if (f == "json") return shiftsym::ReportFormat::Json;
  if (f == "csv") return shiftsym::ReportFormat::Csv;
  return shiftsym::ReportFormat::Text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fredholm analysis of finite-group shift operators"};
  app.require_subcommand(0, 1);
  std::string format = "text";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json", "csv"}));
  bool list = false;
  app.add_flag("--list-fixtures", list, "print the built-in fixture names and exit");

  std::string path;
  shiftsym::AnalyzeFlags aflags;
  shiftsym::OracleFlags oflags;

  auto* analyze = app.add_subcommand("analyze", "run the symbol pipeline");
  analyze->add_option("file", path, "scenario file or built-in fixture name")->required();
  analyze->add_option("--samples", aflags.samples, "covectors per copy per sign");
  analyze->add_option("--seed", aflags.seed, "sampling seed");

  auto* oracle = app.add_subcommand("oracle", "singular-value sweeps of the discretized operator");
  oracle->add_option("file", path, "scenario file or built-in fixture name")->required();
  oracle->add_option("--sizes", oflags.sizes, "grid sizes per copy")->delimiter(',');
  oracle->add_option("--eps", oflags.eps, "kernel-count threshold");

  auto* compare = app.add_subcommand("compare", "analyze and oracle, with an agreement record");
  compare->add_option("file", path, "scenario file or built-in fixture name")->required();

  auto* selftest = app.add_subcommand("selftest", "invariant suite on the built-in fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (list) {
    for (const auto& f : shiftsym::builtin_fixtures()) std::cout << f.name << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    shiftsym::Report report;
    if (analyze->parsed()) {
      report = shiftsym::cmd_analyze(shiftsym::resolve_scenario(path), aflags);
    } else if (oracle->parsed()) {
      report = shiftsym::cmd_oracle(shiftsym::resolve_scenario(path), oflags);
    } else if (compare->parsed()) {
      report = shiftsym::cmd_compare(shiftsym::resolve_scenario(path));
    } else if (selftest->parsed()) {
      report = shiftsym::cmd_selftest();
    }
    std::cout << shiftsym::emit_report(report, parse_format(format));
    return report.exit_code();
  } catch (const shiftsym::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
