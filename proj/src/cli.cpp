#include "optiquad/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "optiquad/composite.hpp"
#include "optiquad/constants.hpp"
#include "optiquad/errors.hpp"
#include "optiquad/optimizer.hpp"
#include "optiquad/rules.hpp"

namespace optiquad::cli {

namespace {

namespace c = optiquad::constants;
using bounds::BoundForm;
using bounds::ErrorBound;
using bounds::TheoremTag;
using json = nlohmann::json;

// Bound row identifiers used in the machine-readable formats. The composite
// theorem codes double as column names of the study CSV.
std::string bound_code(const ErrorBound& b) {
  switch (b.tag) {
    case TheoremTag::second_sup: return "T4ab";
    case TheoremTag::first_range: return "T1p_range";
    case TheoremTag::first_lower: return "T1p_lower";
    case TheoremTag::first_upper: return "T1p_upper";
    case TheoremTag::gruss_first:
      return b.form == BoundForm::primary ? "T2p_sigma" : "T2p_omega";
    case TheoremTag::second_range: return "T3p_range";
    case TheoremTag::second_lower: return "T3p_lower";
    case TheoremTag::second_upper: return "T3p_upper";
    case TheoremTag::gruss_second:
      return b.form == BoundForm::primary ? "T4p_sigma" : "T4p_omega";
  }
  return "?";
}

struct Request {
  expr::NodePtr ast;
  Interval iv;
  analysis::SamplingConfig sampling;
};

Request prepare(const CliRequest& req) {
  Request r{expr::parse(req.expr), Interval(req.a, req.b), {}};
  if (req.grid_points) r.sampling.points_per_unit = *req.grid_points;
  return r;
}

JetFn jet_fn(const expr::NodePtr& ast) {
  return [ast](double t) { return expr::eval_jet(ast, t); };
}

RealFn value_fn(const expr::NodePtr& ast) {
  return [ast](double t) { return expr::eval_jet(ast, t).v; };
}

// Reference integral: the composite rule itself on a 2^20-panel partition.
double reference_integral(const expr::NodePtr& ast, const Interval& iv) {
  return composite::composite_estimate(
      value_fn(ast), composite::CompositeConfig(iv, std::size_t{1} << 20));
}

std::string csv_opt(const std::optional<double>& v) {
  return v ? format_shortest(*v) : std::string{};
}

json json_opt(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

void emit_warnings(const bounds::DerivativeInfo& info, std::ostream& diag) {
  for (const std::string& w : info.warnings) diag << "warning: " << w << "\n";
}

// ---- integrate ------------------------------------------------------------

void print_integrate_human(const CliRequest& req,
                           const bounds::DerivativeInfo& info,
                           const composite::CompositeReport& rep,
                           std::ostream& out) {
  out << "expression:      " << req.expr << "\n";
  out << "interval:        [" << format_human(req.a) << ", "
      << format_human(req.b) << "]\n";
  out << "panels:          " << rep.n << "\n";
  out << "estimate:        " << format_human(rep.estimate) << "\n";
  if (rep.correction) {
    out << "correction P_n:  " << format_human(*rep.correction) << "\n";
    out << "corrected:       " << format_human(rep.estimate + *rep.correction)
        << "\n";
  } else {
    out << "correction P_n:  unavailable (f' not finite at an endpoint)\n";
  }
  if (info.l2_fprime)
    out << "||f'||_2:        " << format_human(info.l2_fprime->value)
        << (info.l2_fprime->rigorous() ? "" : "  (sampled)") << "\n";
  if (info.l2_fsecond)
    out << "||f''||_2:       " << format_human(info.l2_fsecond->value)
        << (info.l2_fsecond->rigorous() ? "" : "  (sampled)") << "\n";

  const auto print_class = [&](bounds::BoundTarget target, const char* title) {
    bool any = false;
    for (const ErrorBound& b : rep.bounds)
      if (b.applies_to == target) any = true;
    if (!any) return;
    out << title << "\n";
    for (const ErrorBound& b : rep.bounds) {
      if (b.applies_to != target) continue;
      std::ostringstream label;
      label << bounds::tag_name(b.tag);
      if (b.form == BoundForm::omega_weakened) label << " (omega)";
      out << "  " << std::left << std::setw(20) << label.str()
          << format_human(b.value) << (b.rigorous ? "  rigorous" : "  sampled")
          << "  [" << bound_code(b) << "]\n";
    }
  };
  print_class(bounds::BoundTarget::q, "bounds on |integral - estimate|:");
  print_class(bounds::BoundTarget::q_minus_p,
              "bounds on |integral - corrected|:");
}

void print_integrate_rows(const CliRequest& req,
                          const composite::CompositeReport& rep,
                          std::ostream& out) {
  struct Row {
    std::string field;
    double value;
    std::string applies_to;
    std::string rigorous;
  };
  std::vector<Row> rows;
  rows.push_back({"estimate", rep.estimate, "", ""});
  if (rep.correction) {
    rows.push_back({"correction", *rep.correction, "", ""});
    rows.push_back({"corrected", rep.estimate + *rep.correction, "", ""});
  }
  for (const ErrorBound& b : rep.bounds)
    rows.push_back({"bound_" + bound_code(b), b.value,
                    b.applies_to == bounds::BoundTarget::q ? "Q" : "Q-P",
                    b.rigorous ? "true" : "false"});

  if (req.format == CliRequest::Format::csv) {
    out << "field,value,applies_to,rigorous\n";
    for (const Row& r : rows)
      out << r.field << ',' << format_shortest(r.value) << ',' << r.applies_to
          << ',' << r.rigorous << "\n";
  } else {
    for (const Row& r : rows) {
      json j;
      j["field"] = r.field;
      j["value"] = r.value;
      j["applies_to"] = r.applies_to.empty() ? json(nullptr) : json(r.applies_to);
      j["rigorous"] = r.rigorous.empty() ? json(nullptr)
                                         : json(r.rigorous == "true");
      out << j.dump() << "\n";
    }
  }
}

int run_integrate(const CliRequest& req, std::ostream& out,
                  std::ostream& diag) {
  const Request r = prepare(req);
  const bounds::DerivativeInfo info =
      analysis::build_info(r.ast, r.iv, req.overrides, r.sampling);
  emit_warnings(info, diag);

  const composite::CompositeConfig cfg(r.iv, req.n_values.at(0));
  const composite::CompositeReport rep =
      composite::analyze(jet_fn(r.ast), info, cfg);
  if (rep.bounds.empty())
    throw NoApplicableBound(
        "no derivative information supports any error inequality");

  if (req.format == CliRequest::Format::human)
    print_integrate_human(req, info, rep, out);
  else
    print_integrate_rows(req, rep, out);
  return exit_ok;
}

// ---- derive ---------------------------------------------------------------

int run_derive(const CliRequest& req, std::ostream& out, std::ostream&) {
  const optimizer::MinimizerResult res = optimizer::minimize_g();
  const auto [g_opt, g_simpson] = optimizer::compare_simpson();

  if (req.format == CliRequest::Format::human) {
    out << "optimal knot beta*:        " << format_human(res.beta_star) << "\n";
    out << "minimal kernel L1 norm:    " << format_human(res.g_star) << "\n";
    out << "case analysis:             minimizer in case (ii), 0 <= beta <= 1/2\n";
    out << "  case (i) lower bound:    "
        << format_human(res.case_trace.case_i_lower_bound) << "\n";
    out << "  case (iii) lower bound:  "
        << format_human(res.case_trace.case_iii_lower_bound) << "\n";
    out << "  stationary point:        "
        << format_human(res.case_trace.stationary_beta)
        << "  (g'' = " << format_human(res.case_trace.second_derivative)
        << " > 0)\n";
    out << "oracle estimate:           " << format_human(res.oracle_beta)
        << "\n";
    out << "oracle gap:                " << format_human(res.oracle_gap)
        << "\n";
    out << "Simpson kernel L1 norm:    " << format_human(g_simpson) << "\n";
    out << "improvement factor:        " << format_human(g_opt / g_simpson)
        << "\n";
  } else if (req.format == CliRequest::Format::csv) {
    out << "field,value\n";
    out << "beta_star," << format_shortest(res.beta_star) << "\n";
    out << "g_star," << format_shortest(res.g_star) << "\n";
    out << "selected_case," << res.case_trace.selected_case << "\n";
    out << "case_i_lower_bound,"
        << format_shortest(res.case_trace.case_i_lower_bound) << "\n";
    out << "case_iii_lower_bound,"
        << format_shortest(res.case_trace.case_iii_lower_bound) << "\n";
    out << "oracle_beta," << format_shortest(res.oracle_beta) << "\n";
    out << "oracle_gap," << format_shortest(res.oracle_gap) << "\n";
    out << "g_simpson," << format_shortest(g_simpson) << "\n";
  } else {
    json j;
    j["beta_star"] = res.beta_star;
    j["g_star"] = res.g_star;
    j["selected_case"] = res.case_trace.selected_case;
    j["case_i_lower_bound"] = res.case_trace.case_i_lower_bound;
    j["case_iii_lower_bound"] = res.case_trace.case_iii_lower_bound;
    j["oracle_beta"] = res.oracle_beta;
    j["oracle_gap"] = res.oracle_gap;
    j["g_simpson"] = g_simpson;
    out << j.dump() << "\n";
  }
  return exit_ok;
}

// ---- compare --------------------------------------------------------------

int run_compare(const CliRequest& req, std::ostream& out, std::ostream& diag) {
  const Request r = prepare(req);
  const bounds::DerivativeInfo info =
      analysis::build_info(r.ast, r.iv, req.overrides, r.sampling);
  emit_warnings(info, diag);
  if (!info.sup_fsecond)
    throw NoApplicableBound(
        "comparison needs ||f''||inf; the sampled range is unavailable");

  const std::size_t n = req.n_values.at(0);
  const composite::CompositeConfig cfg(r.iv, n);
  const double reference =
      req.reference ? *req.reference : reference_integral(r.ast, r.iv);
  const double len = r.iv.length();
  const double n_d = static_cast<double>(n);
  const double m2 = info.sup_fsecond->value;

  const RealFn f = value_fn(r.ast);
  const double est_opt = composite::composite_estimate(f, cfg);
  KahanSum simpson_sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = cfg.node(i);
    const double hi = i + 1 == n ? r.iv.b : cfg.node(i + 1);
    simpson_sum.add(rules::simpson_estimate(f, Interval(lo, hi)));
  }
  const double est_simpson = simpson_sum.value();

  const double bound_opt =
      c::kernel_l1_min / (n_d * n_d) * m2 * len * len * len;
  const double bound_simpson =
      c::kernel_l1_simpson / (n_d * n_d) * m2 * len * len * len;

  struct Row {
    const char* rule;
    double estimate, abs_error, bound;
  };
  const std::array<Row, 2> rows = {{
      {"optimal", est_opt, std::abs(reference - est_opt), bound_opt},
      {"simpson", est_simpson, std::abs(reference - est_simpson),
       bound_simpson},
  }};

  if (req.format == CliRequest::Format::human) {
    out << "reference integral: " << format_human(reference) << "  (panels: "
        << n << ")\n";
    out << std::left << std::setw(10) << "rule" << std::setw(18) << "estimate"
        << std::setw(18) << "abs_error" << "fpp_bound\n";
    for (const Row& row : rows)
      out << std::left << std::setw(10) << row.rule << std::setw(18)
          << format_human(row.estimate) << std::setw(18)
          << format_human(row.abs_error) << format_human(row.bound) << "\n";
  } else if (req.format == CliRequest::Format::csv) {
    out << "rule,estimate,abs_error,bound\n";
    for (const Row& row : rows)
      out << row.rule << ',' << format_shortest(row.estimate) << ','
          << format_shortest(row.abs_error) << ','
          << format_shortest(row.bound) << "\n";
  } else {
    for (const Row& row : rows) {
      json j;
      j["rule"] = row.rule;
      j["estimate"] = row.estimate;
      j["abs_error"] = row.abs_error;
      j["bound"] = row.bound;
      out << j.dump() << "\n";
    }
  }
  return exit_ok;
}

// ---- study ----------------------------------------------------------------

constexpr const char* k_study_header =
    "n,h,estimate,corrected,abs_error,abs_corrected_error,bound_T4ab,"
    "bound_T1p_range,bound_T2p_sigma,bound_T2p_omega,bound_T3p_range,"
    "bound_T4p_sigma,slope_error,slope_corrected";

int run_study(const CliRequest& req, std::ostream& out, std::ostream& diag) {
  if (req.n_values.empty())
    throw std::invalid_argument("study requires a panel-count list");
  const Request r = prepare(req);
  const bounds::DerivativeInfo info =
      analysis::build_info(r.ast, r.iv, req.overrides, r.sampling);
  emit_warnings(info, diag);

  const double reference =
      req.reference ? *req.reference : reference_integral(r.ast, r.iv);
  const composite::StudyTable table = composite::convergence_study(
      jet_fn(r.ast), r.iv, req.n_values, reference, info);

  const auto row_fields = [&](const composite::StudyRow& row, bool last) {
    std::array<std::string, 14> f;
    f[0] = std::to_string(row.n);
    f[1] = format_shortest(row.h);
    f[2] = format_shortest(row.estimate);
    f[3] = csv_opt(row.corrected);
    f[4] = format_shortest(row.abs_error);
    f[5] = csv_opt(row.abs_corrected_error);
    f[6] = csv_opt(row.bound_t4ab);
    f[7] = csv_opt(row.bound_t1p_range);
    f[8] = csv_opt(row.bound_t2p_sigma);
    f[9] = csv_opt(row.bound_t2p_omega);
    f[10] = csv_opt(row.bound_t3p_range);
    f[11] = csv_opt(row.bound_t4p_sigma);
    f[12] = last ? csv_opt(table.slope_error) : std::string{};
    f[13] = last ? csv_opt(table.slope_corrected) : std::string{};
    return f;
  };

  if (req.format == CliRequest::Format::json_lines) {
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      const composite::StudyRow& row = table.rows[k];
      const bool last = k + 1 == table.rows.size();
      json j;
      j["n"] = row.n;
      j["h"] = row.h;
      j["estimate"] = row.estimate;
      j["corrected"] = json_opt(row.corrected);
      j["abs_error"] = row.abs_error;
      j["abs_corrected_error"] = json_opt(row.abs_corrected_error);
      j["bound_T4ab"] = json_opt(row.bound_t4ab);
      j["bound_T1p_range"] = json_opt(row.bound_t1p_range);
      j["bound_T2p_sigma"] = json_opt(row.bound_t2p_sigma);
      j["bound_T2p_omega"] = json_opt(row.bound_t2p_omega);
      j["bound_T3p_range"] = json_opt(row.bound_t3p_range);
      j["bound_T4p_sigma"] = json_opt(row.bound_t4p_sigma);
      j["slope_error"] = last ? json_opt(table.slope_error) : json(nullptr);
      j["slope_corrected"] =
          last ? json_opt(table.slope_corrected) : json(nullptr);
      out << j.dump() << "\n";
    }
    return exit_ok;
  }

  // The CSV schema is the primary interface; the human format renders the
  // same fields as an aligned table.
  if (req.format == CliRequest::Format::csv) {
    out << k_study_header << "\n";
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      const auto f = row_fields(table.rows[k], k + 1 == table.rows.size());
      for (std::size_t j = 0; j < f.size(); ++j)
        out << f[j] << (j + 1 == f.size() ? '\n' : ',');
    }
  } else {
    std::istringstream header(k_study_header);
    std::string col;
    while (std::getline(header, col, ','))
      out << std::left << std::setw(22) << col;
    out << "\n";
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      const auto f = row_fields(table.rows[k], k + 1 == table.rows.size());
      for (const std::string& field : f)
        out << std::left << std::setw(22) << (field.empty() ? "-" : field);
      out << "\n";
    }
  }
  return exit_ok;
}

int dispatch(const CliRequest& req, std::ostream& out, std::ostream& diag) {
  switch (req.command) {
    case CliRequest::Command::integrate: return run_integrate(req, out, diag);
    case CliRequest::Command::derive: return run_derive(req, out, diag);
    case CliRequest::Command::compare: return run_compare(req, out, diag);
    case CliRequest::Command::study: return run_study(req, out, diag);
  }
  return exit_internal;
}

}  // namespace

std::string format_shortest(double v) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

std::string format_human(double v) {
  std::array<char, 40> buf;
  std::snprintf(buf.data(), buf.size(), "%.10g", v);
  return std::string(buf.data());
}

int run(const CliRequest& req, std::ostream& out, std::ostream& diag) {
  try {
    if (!req.output.empty()) {
      std::ofstream file(req.output);
      if (!file)
        throw std::runtime_error("cannot open output file: " + req.output);
      return dispatch(req, file, diag);
    }
    return dispatch(req, out, diag);
  } catch (const ParseError& e) {
    diag << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const EvalError& e) {
    diag << "error: " << e.what() << "\n";
    return exit_eval;
  } catch (const NoApplicableBound& e) {
    diag << "error: " << e.what() << "\n";
    return exit_no_bound;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const std::exception& e) {
    diag << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace optiquad::cli
