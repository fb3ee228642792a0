#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relcheck/errors.hpp"
#include "relcheck/geometry.hpp"
#include "relcheck/parse.hpp"
#include "relcheck/suites.hpp"

using namespace relcheck;

namespace {

ChartPtr resolve_chart(const std::string& name, const std::string& file) {
  if (file.empty()) return builtin_chart(name);
  std::ifstream in(file);
  if (!in) throw DomainError("cannot read chart file '" + file + "'");
  std::stringstream text;
  text << in.rdbuf();
  return load_chart(text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic checks for relativistic point-particle dynamics"};
  app.require_subcommand(1);

  SuiteOptions options;
  std::string suite;
  bool json = false;
  auto* verify = app.add_subcommand("verify", "Run a check suite; exit code 0 iff every non-info check passes");
  verify->add_option("suite", suite, "instant-form, jacobi, frozen, lagrangian, algebra or all")->required();
  verify->add_option("--f", options.f, "interaction function f(xd^2) for the instant form");
  verify->add_option("--lagrangian", options.lagrangian, "Lagrangian for the instant-form chain");
  verify->add_option("--mass", options.mass, "rational mass for the mass shell");
  verify->add_option("--seed", options.seed, "seed for sampled checks");
  verify->add_option("--signature", options.signature, "metric signature, e.g. +---; informational");
  verify->add_flag("--json", json, "JSON output");
  verify->add_flag("--timing", options.timing, "add elapsed-time lines");

  std::string chart_name = "TR4", chart_file, lhs, rhs;
  auto* bracket = app.add_subcommand("bracket", "Lie bracket of two vector fields, e.g. 'x1*@xd2'");
  bracket->add_option("X", lhs)->required();
  bracket->add_option("Y", rhs)->required();
  bracket->add_option("--chart", chart_name, "TR3, TR4, offshell or massshell");
  bracket->add_option("--chart-file", chart_file, "chart description file");

  std::string expr_text;
  auto* expr = app.add_subcommand("expr", "Expression utilities");
  expr->require_subcommand(1);
  auto* normalize_cmd = expr->add_subcommand("normalize", "Print the canonical form");
  normalize_cmd->add_option("EXPR", expr_text)->required();
  normalize_cmd->add_option("--chart", chart_name, "TR3, TR4, offshell or massshell");
  normalize_cmd->add_option("--chart-file", chart_file, "chart description file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      Report report = run_suite(suite, options);
      std::cout << (json ? render_json(report, options.timing) : render_text(report));
      return report.passed() ? 0 : 1;
    }
    ChartPtr chart = resolve_chart(chart_name, chart_file);
    if (*bracket) {
      VectorField result = lie_bracket(parse_vector_field(lhs, chart), parse_vector_field(rhs, chart));
      std::cout << (result.is_zero() ? "0" : result.str()) << "\n";
      return 0;
    }
    std::cout << normalize(parse(expr_text, *chart), *chart).str() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
