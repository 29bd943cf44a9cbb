#include <charconv>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "optiquad/cli.hpp"

namespace {

using optiquad::cli::CliRequest;

std::vector<std::size_t> parse_panel_list(const std::string& text,
                                          bool allow_list) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    unsigned long long v = 0;
    const auto [next, ec] =
        std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || next != item.data() + item.size() || v == 0)
      throw CLI::ValidationError("--n", "'" + item + "' is not a panel count");
    out.push_back(static_cast<std::size_t>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--n", "empty panel list");
  if (!allow_list && out.size() != 1)
    throw CLI::ValidationError("--n", "this command takes a single panel count");
  return out;
}

void add_common_options(CLI::App* cmd, CliRequest& req, std::string& n_text,
                        bool needs_expr) {
  if (needs_expr)
    cmd->add_option("--expr", req.expr, "integrand, a function of t")
        ->required();
  cmd->add_option("--a", req.a, "left endpoint (default 0)");
  cmd->add_option("--b", req.b, "right endpoint (default 1)");
  cmd->add_option("--n", n_text,
                  "panel count (study: comma-separated list, e.g. 1,2,4,8)");
  cmd->add_option("--gamma1", req.overrides.gamma1, "analytic inf of f'");
  cmd->add_option("--Gamma1", req.overrides.Gamma1, "analytic sup of f'");
  cmd->add_option("--gamma2", req.overrides.gamma2, "analytic inf of f''");
  cmd->add_option("--Gamma2", req.overrides.Gamma2, "analytic sup of f''");
  cmd->add_option("--l2-fprime", req.overrides.l2_fprime,
                  "analytic L2 norm of f'");
  cmd->add_option("--l2-fsecond", req.overrides.l2_fsecond,
                  "analytic L2 norm of f''");
  cmd->add_option("--output", req.output, "write the report to this file");
  cmd->add_option("--format", req.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CliRequest::Format>{
              {"human", CliRequest::Format::human},
              {"csv", CliRequest::Format::csv},
              {"json-lines", CliRequest::Format::json_lines}},
          CLI::ignore_case));
  cmd->add_option("--reference", req.reference,
                  "trusted value of the integral (otherwise a 2^20-panel "
                  "composite evaluation is used)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal 3-point closed quadrature with certified error bounds"};
  app.require_subcommand(1);

  CliRequest req;
  std::string n_text;

  CLI::App* integrate = app.add_subcommand(
      "integrate", "estimate an integral and every applicable error bound");
  add_common_options(integrate, req, n_text, /*needs_expr=*/true);

  CLI::App* derive = app.add_subcommand(
      "derive", "re-derive the optimal rule and compare with Simpson's");
  derive->add_option("--format", req.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CliRequest::Format>{
              {"human", CliRequest::Format::human},
              {"csv", CliRequest::Format::csv},
              {"json-lines", CliRequest::Format::json_lines}},
          CLI::ignore_case));
  derive->add_option("--output", req.output, "write the report to this file");

  CLI::App* compare = app.add_subcommand(
      "compare", "optimal rule vs Simpson's rule on one integrand");
  add_common_options(compare, req, n_text, /*needs_expr=*/true);

  CLI::App* study = app.add_subcommand(
      "study", "convergence study over a list of panel counts (CSV)");
  add_common_options(study, req, n_text, /*needs_expr=*/true);

  try {
    app.parse(argc, argv);

    if (integrate->parsed()) req.command = CliRequest::Command::integrate;
    if (derive->parsed()) req.command = CliRequest::Command::derive;
    if (compare->parsed()) req.command = CliRequest::Command::compare;
    if (study->parsed()) req.command = CliRequest::Command::study;

    if (!n_text.empty())
      req.n_values = parse_panel_list(
          n_text, req.command == CliRequest::Command::study);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return optiquad::cli::exit_parse;
  }

  if (const char* grid = std::getenv("OPTIQUAD_GRID")) {
    const std::string text(grid);
    unsigned long long v = 0;
    const auto [next, ec] =
        std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && next == text.data() + text.size() && v > 0 &&
        v <= (1ull << 31))
      req.grid_points = static_cast<std::size_t>(v);
    else
      std::cerr << "warning: ignoring malformed OPTIQUAD_GRID\n";
  }

  return optiquad::cli::run(req, std::cout, std::cerr);
}
