#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "optiquad/analysis.hpp"

namespace optiquad::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_parse = 2;
inline constexpr int exit_eval = 3;
inline constexpr int exit_no_bound = 4;

struct CliRequest {
  enum class Command { integrate, derive, compare, study };
  enum class Format { human, csv, json_lines };

  Command command = Command::integrate;
  std::string expr;
  double a = 0.0;
  double b = 1.0;
  std::vector<std::size_t> n_values = {1};  // one entry except for study
  analysis::Overrides overrides;
  std::string output;  // empty: write to the stream passed to run()
  Format format = Format::human;
  std::optional<double> reference;         // study: trusted integral value
  std::optional<std::size_t> grid_points;  // OPTIQUAD_GRID override
};

// Executes the request, writing the report to `out` (or to the file named in
// the request) and diagnostics to `diag`. Returns the process exit code:
// 0 ok, 2 parse error, 3 evaluation error, 4 no applicable bound,
// 1 anything else.
int run(const CliRequest& req, std::ostream& out, std::ostream& diag);

// Shortest representation that parses back to the same double.
std::string format_shortest(double v);
// 10 significant digits, for the human-readable format.
std::string format_human(double v);

}  // namespace optiquad::cli
