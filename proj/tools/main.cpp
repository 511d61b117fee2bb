// Command-line front end: every library capability behind one binary.
//
// Exit codes: 0 success, 2 input/validation error, 3 inconsistent ratio
// assignment, 4 no solutions found.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oddsgeom/core_tables.hpp"
#include "oddsgeom/geometry.hpp"
#include "oddsgeom/io.hpp"
#include "oddsgeom/locus_explorer.hpp"
#include "oddsgeom/twoway_relations.hpp"

namespace {

using namespace oddsgeom;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitNoSolutions = 4;

struct TableInput {
  std::string inline_text;
  std::string file_path;
  bool counts = false;
  bool normalize = false;
  double tol = kDefaultNormalizationTol;

  void attach(CLI::App* cmd) {
    cmd->add_option("--table", inline_text,
                    "Inline table: rows separated by ';', entries by ','");
    cmd->add_option("--file", file_path, "Table file (.json or CSV)");
    cmd->add_flag("--counts", counts,
                  "Entries are counts, not probabilities (needs --normalize)");
    cmd->add_flag("--normalize", normalize,
                  "Divide entries by their total before use");
    cmd->add_option("--tol", tol, "Normalization check tolerance");
  }

  ParsedTable parse() const {
    if (inline_text.empty() == file_path.empty()) {
      throw ParseError("provide exactly one of --table or --file");
    }
    if (counts && !normalize) {
      throw ParseError("--counts input requires --normalize");
    }
    return inline_text.empty() ? load_table_file(file_path)
                               : parse_table_inline(inline_text);
  }

  ProbTable2x2 table_2x2() const {
    const ParsedTable p = parse();
    if (!p.is_2x2()) throw ParseError("expected a 2x2 table");
    const std::array<double, 4> e{p.values[0], p.values[1], p.values[2],
                                  p.values[3]};
    return normalize ? normalize_counts(e) : validate_table(e, tol);
  }

  ProbTable2x3 table_2x3() const {
    const ParsedTable p = parse();
    if (p.is_2x2()) throw ParseError("expected a 2x3 table");
    return normalize ? normalize_counts_2x3(p.values)
                     : validate_table_2x3(p.values, tol);
  }

  // Either shape, normalized, as a ParsedTable of probabilities.
  ParsedTable any_table() const {
    ParsedTable p = parse();
    if (p.is_2x2()) {
      const auto t = table_2x2();
      for (int i = 0; i < 4; ++i) p.values[i] = t.entries()[i];
    } else {
      const auto t = table_2x3();
      p.values = t.entries();
    }
    return p;
  }
};

void write_rows(JsonWriter& w, const double* e, int cols) {
  w.begin_array();
  for (int i = 0; i < 2; ++i) {
    w.begin_array();
    for (int j = 0; j < cols; ++j) w.value(e[i * cols + j]);
    w.end_array();
  }
  w.end_array();
}

void write_rows(JsonWriter& w, const ProbTable2x2& t) {
  write_rows(w, t.entries().data(), 2);
}

void emit(const std::string& text) { std::cout << text << "\n"; }

// "name,value" lines at full precision; the CSV twin of a flat JSON object.
class CsvKv {
 public:
  void add(const std::string& name, double v) {
    out_ += name + "," + format_double17(v) + "\n";
  }
  void add(const std::string& name, const std::string& v) {
    out_ += name + "," + v + "\n";
  }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

int cmd_ratios(const TableInput& input, const std::string& format) {
  const ParsedTable p = input.any_table();
  if (p.is_2x2()) {
    const ProbTable2x2 t(p.values[0], p.values[1], p.values[2], p.values[3]);
    const OddsTriple o = odds_triple(t);
    if (format == "csv") {
      CsvKv kv;
      kv.add("r_cross", o.r_cross());
      kv.add("r_parallel", o.r_parallel());
      kv.add("r_equal", o.r_equal());
      kv.add("alpha", o.alpha());
      kv.add("beta", o.beta());
      kv.add("gamma", o.gamma());
      std::cout << kv.str();
      return kExitOk;
    }
    JsonWriter w;
    w.begin_object();
    w.key("rows");
    write_rows(w, t);
    w.key("r_cross").value(o.r_cross());
    w.key("r_parallel").value(o.r_parallel());
    w.key("r_equal").value(o.r_equal());
    w.key("alpha").value(o.alpha());
    w.key("beta").value(o.beta());
    w.key("gamma").value(o.gamma());
    w.end_object();
    emit(w.str());
    return kExitOk;
  }

  const ProbTable2x3 t(p.values);
  const ConsistencyReport report = check_relations(t);
  if (format == "csv") {
    CsvKv kv;
    for (int k = 0; k < 3; ++k) {
      for (int col = 0; col < 3; ++col) {
        const auto kind = static_cast<RatioKind>(k);
        kv.add(std::string("r_") + ratio_kind_name(kind) + "_" +
                   std::to_string(col),
               ratio_2x3(t, kind, col));
      }
    }
    kv.add("consistent", report.consistent() ? "true" : "false");
    std::cout << kv.str();
    return kExitOk;
  }
  JsonWriter w;
  w.begin_object();
  w.key("rows");
  write_rows(w, t.entries().data(), 3);
  w.key("ratios").begin_object();
  for (int k = 0; k < 3; ++k) {
    const auto kind = static_cast<RatioKind>(k);
    w.key(ratio_kind_name(kind)).begin_array();
    for (int col = 0; col < 3; ++col) w.value(ratio_2x3(t, kind, col));
    w.end_array();
  }
  w.end_object();
  w.key("consistent").value(report.consistent());
  w.key("violations").begin_array();
  for (const auto& v : report.violations) {
    w.begin_object();
    w.key("relation").value(v.relation);
    w.key("lhs").value(v.lhs);
    w.key("rhs").value(v.rhs);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(w.str());
  return kExitOk;
}

int cmd_reconstruct(double r_cross, double r_parallel, double r_equal,
                    const std::string& format) {
  const OddsTriple o(r_cross, r_parallel, r_equal);
  const ProbTable2x2 t = table_from_triple(o);
  const OddsTriple check = odds_triple(t);
  const double err = std::fmax(
      std::fmax(std::fabs(check.r_cross() - r_cross) / r_cross,
                std::fabs(check.r_parallel() - r_parallel) / r_parallel),
      std::fabs(check.r_equal() - r_equal) / r_equal);
  if (format == "csv") {
    CsvKv kv;
    kv.add("p00", t.p00());
    kv.add("p01", t.p01());
    kv.add("p10", t.p10());
    kv.add("p11", t.p11());
    kv.add("max_relative_error", err);
    std::cout << kv.str();
    return kExitOk;
  }
  JsonWriter w;
  w.begin_object();
  w.key("input").begin_object();
  w.key("r_cross").value(r_cross);
  w.key("r_parallel").value(r_parallel);
  w.key("r_equal").value(r_equal);
  w.end_object();
  w.key("rows");
  write_rows(w, t);
  w.key("verification").begin_object();
  w.key("r_cross").value(check.r_cross());
  w.key("r_parallel").value(check.r_parallel());
  w.key("r_equal").value(check.r_equal());
  w.key("max_relative_error").value(err);
  w.end_object();
  w.end_object();
  emit(w.str());
  return kExitOk;
}

void write_sample_json(JsonWriter& w, const ProbTable2x2& t, double v) {
  const OddsTriple o = odds_triple(t);
  w.begin_object();
  w.key("v").value(v);
  w.key("rows");
  write_rows(w, t);
  w.key("r_cross").value(o.r_cross());
  w.key("r_parallel").value(o.r_parallel());
  w.key("r_equal").value(o.r_equal());
  w.end_object();
}

std::string sample_csv_line(const ProbTable2x2& t, double v) {
  const OddsTriple o = odds_triple(t);
  std::string line = format_double17(v);
  for (const double e : t.entries()) line += "," + format_double17(e);
  line += "," + format_double17(o.r_cross());
  line += "," + format_double17(o.r_parallel());
  line += "," + format_double17(o.r_equal());
  return line;
}

int cmd_segment(std::optional<double> r_cross, std::optional<double> r_parallel,
                std::optional<double> alpha, std::optional<double> beta, int n,
                const std::string& format) {
  if (alpha.has_value() != beta.has_value()) {
    throw ParseError("--alpha and --beta must be given together");
  }
  if (alpha.has_value() == r_cross.has_value()) {
    throw ParseError(
        "give either --rcross/--rparallel or their roots --alpha/--beta");
  }
  if (r_cross.has_value() != r_parallel.has_value()) {
    throw ParseError("--rcross and --rparallel must be given together");
  }
  if (n < 1) throw OutOfRangeParameter("-n must be at least 1");
  const double a = alpha ? *alpha : std::sqrt(*r_cross);
  const double b = beta ? *beta : std::sqrt(*r_parallel);
  if (!(a > 0.0) || !(b > 0.0)) {
    throw OutOfRangeParameter("segment parameters must be positive");
  }
  const SegmentChartXP chart{a, b};

  if (format == "csv") {
    std::cout << "v,p00,p01,p10,p11,r_cross,r_parallel,r_equal\n";
    for (int k = 1; k <= n; ++k) {
      const double v = k / (n + 1.0) * chart.v_max();
      std::cout << sample_csv_line(chart_xp_table(a, b, v), v) << "\n";
    }
    return kExitOk;
  }
  JsonWriter w;
  w.begin_object();
  w.key("alpha").value(a);
  w.key("beta").value(b);
  w.key("r_cross").value(a * a);
  w.key("r_parallel").value(b * b);
  w.key("v_max").value(chart.v_max());
  w.key("n").value(n);
  w.key("tables").begin_array();
  for (int k = 1; k <= n; ++k) {
    const double v = k / (n + 1.0) * chart.v_max();
    write_sample_json(w, chart_xp_table(a, b, v), v);
  }
  w.end_array();
  w.end_object();
  emit(w.str());
  return kExitOk;
}

int cmd_surface(double r_cross, const std::string& grid_text, int n,
                const std::string& format) {
  if (!(r_cross > 0.0)) {
    throw OutOfRangeParameter("--rcross must be positive");
  }
  if (n < 1) throw OutOfRangeParameter("-n must be at least 1");
  std::vector<double> grid;
  {
    std::string cell;
    std::string text = grid_text;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto next = text.find(',', pos);
      cell = text.substr(pos, next == std::string::npos ? std::string::npos
                                                        : next - pos);
      char* endp = nullptr;
      const double v = std::strtod(cell.c_str(), &endp);
      if (endp == cell.c_str() || *endp != '\0' || !(v > 0.0)) {
        throw ParseError("bad --rparallel-grid entry: '" + cell + "'");
      }
      grid.push_back(v);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  if (grid.empty()) throw ParseError("--rparallel-grid must be nonempty");

  const double a = std::sqrt(r_cross);
  if (format == "csv") {
    std::cout << "r_parallel_target,v,p00,p01,p10,p11,r_cross,r_parallel,r_equal\n";
    for (const double rp : grid) {
      const SegmentChartXP chart{a, std::sqrt(rp)};
      for (int k = 1; k <= n; ++k) {
        const double v = k / (n + 1.0) * chart.v_max();
        std::cout << format_double17(rp) << ","
                  << sample_csv_line(chart_xp_table(a, chart.beta, v), v)
                  << "\n";
      }
    }
    return kExitOk;
  }
  JsonWriter w;
  w.begin_object();
  w.key("r_cross").value(r_cross);
  w.key("parallel_grid").begin_array();
  for (const double rp : grid) w.value(rp);
  w.end_array();
  w.key("n").value(n);
  w.key("sheets").begin_array();
  for (const double rp : grid) {
    const SegmentChartXP chart{a, std::sqrt(rp)};
    w.begin_object();
    w.key("r_parallel").value(rp);
    w.key("tables").begin_array();
    for (int k = 1; k <= n; ++k) {
      const double v = k / (n + 1.0) * chart.v_max();
      write_sample_json(w, chart_xp_table(a, chart.beta, v), v);
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(w.str());
  return kExitOk;
}

int cmd_casecontrol(const TableInput& input, const std::string& format) {
  const ProbTable2x2 t = input.table_2x2();
  const CaseControlSummary s = case_control_summary(t);
  const OddsTriple o = odds_triple(t);
  const double dor_residual = std::fabs(s.dor - o.r_cross());
  const double eor_residual = std::fabs(s.eor * o.r_parallel() - 1.0);
  if (format == "csv") {
    CsvKv kv;
    kv.add("specificity", s.specificity);
    kv.add("sensitivity", s.sensitivity);
    kv.add("dor", s.dor);
    kv.add("eor", s.eor);
    kv.add("dor_vs_cross_residual", dor_residual);
    kv.add("eor_times_parallel_residual", eor_residual);
    std::cout << kv.str();
    return kExitOk;
  }
  JsonWriter w;
  w.begin_object();
  w.key("rows");
  write_rows(w, t);
  w.key("specificity").value(s.specificity);
  w.key("sensitivity").value(s.sensitivity);
  w.key("dor").value(s.dor);
  w.key("eor").value(s.eor);
  w.key("identity_residuals").begin_object();
  w.key("dor_vs_cross").value(dor_residual);
  w.key("eor_times_parallel_minus_1").value(eor_residual);
  w.end_object();
  w.end_object();
  emit(w.str());
  return kExitOk;
}

void write_report(JsonWriter& w, const ConsistencyReport& report) {
  w.key("consistent").value(report.consistent());
  w.key("violations").begin_array();
  for (const auto& v : report.violations) {
    w.begin_object();
    w.key("relation").value(v.relation);
    w.key("lhs").value(v.lhs);
    w.key("rhs").value(v.rhs);
    w.end_object();
  }
  w.end_array();
  w.key("derived").begin_array();
  for (const auto& c : report.derived) {
    w.begin_object();
    w.key("kind").value(ratio_kind_name(c.kind));
    w.key("deleted_col").value(c.deleted_col);
    w.key("value").value(c.value);
    w.end_object();
  }
  w.end_array();
}

int cmd_relations(const TableInput& input, const std::string& assignment_path,
                  double check_tol) {
  if (!assignment_path.empty()) {
    const RatioAssignment a = load_assignment_file(assignment_path);
    const ConsistencyReport report = closure(a);
    JsonWriter w;
    w.begin_object();
    w.key("input");
    write_assignment(w, a);
    write_report(w, report);
    w.end_object();
    emit(w.str());
    return report.consistent() ? kExitOk : kExitInconsistent;
  }

  const ProbTable2x3 t = input.table_2x3();
  const ConsistencyReport report = check_relations(t, check_tol);
  JsonWriter w;
  w.begin_object();
  w.key("rows");
  write_rows(w, t.entries().data(), 3);
  write_report(w, report);
  w.end_object();
  emit(w.str());
  return report.consistent() ? kExitOk : kExitInconsistent;
}

int cmd_explore(const std::string& assignment_path, int n_starts,
                std::uint64_t seed) {
  const RatioAssignment a = load_assignment_file(assignment_path);
  const ConsistencyReport report = closure(a);
  if (!report.consistent()) {
    // Surface the full violation list, not just the first conflict.
    JsonWriter w;
    w.begin_object();
    w.key("input");
    write_assignment(w, a);
    write_report(w, report);
    w.end_object();
    emit(w.str());
    return kExitInconsistent;
  }
  const LocusSample sample = explore(a, n_starts, seed);
  emit(locus_sample_to_json(sample));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odds-ratio geometry of 2x2 and 2x3 probability tables"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand too

  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  TableInput ratios_input;
  auto* ratios = app.add_subcommand(
      "ratios", "Odds ratios of a 2x2 table or all nine of a 2x3 table");
  ratios_input.attach(ratios);

  auto* reconstruct = app.add_subcommand(
      "reconstruct", "The unique 2x2 table with three given odds ratios");
  double rc = 0, rp = 0, re = 0;
  reconstruct->add_option("--rcross", rc, "Cross ratio")->required();
  reconstruct->add_option("--rparallel", rp, "Parallel ratio")->required();
  reconstruct->add_option("--requal", re, "Equal ratio")->required();

  auto* segment = app.add_subcommand(
      "segment", "Sample the segment of tables with two fixed ratios");
  std::optional<double> seg_rc, seg_rp, seg_alpha, seg_beta;
  int seg_n = 11;
  segment->add_option("--rcross", seg_rc, "Fixed cross ratio (alpha^2)");
  segment->add_option("--rparallel", seg_rp, "Fixed parallel ratio (beta^2)");
  segment->add_option("--alpha", seg_alpha, "Root parametrization: alpha");
  segment->add_option("--beta", seg_beta, "Root parametrization: beta");
  segment->add_option("-n", seg_n, "Number of interior sample points")
      ->capture_default_str();

  auto* surface = app.add_subcommand(
      "surface",
      "Sample the ruled surface of tables with one fixed cross ratio");
  double surf_rc = 0;
  std::string surf_grid;
  int surf_n = 11;
  surface->add_option("--rcross", surf_rc, "Fixed cross ratio")->required();
  surface
      ->add_option("--rparallel-grid", surf_grid,
                   "Comma-separated parallel-ratio grid")
      ->required();
  surface->add_option("-n", surf_n, "Sample points per segment")
      ->capture_default_str();

  TableInput cc_input;
  auto* casecontrol = app.add_subcommand(
      "casecontrol",
      "Specificity, sensitivity, diagnostic and error odds ratios");
  cc_input.attach(casecontrol);

  TableInput rel_input;
  auto* relations = app.add_subcommand(
      "relations",
      "Check the product relations of a 2x3 table, or close a partial "
      "ratio assignment under them");
  rel_input.attach(relations);
  std::string rel_assignment;
  relations->add_option("--assignment", rel_assignment,
                        "Ratio-assignment JSON file (instead of a table)");
  double rel_tol = 1e-10;
  relations->add_option("--check-tol", rel_tol, "Relation check tolerance")
      ->capture_default_str();

  auto* explore_cmd = app.add_subcommand(
      "explore", "Sample the solution locus of a ratio assignment");
  std::string exp_assignment;
  explore_cmd
      ->add_option("--file,--assignment", exp_assignment,
                   "Ratio-assignment JSON file")
      ->required();
  int exp_starts = 400;
  explore_cmd->add_option("--starts", exp_starts, "Number of Newton starts")
      ->capture_default_str();
  std::uint64_t exp_seed = oddsgeom::kDefaultSeed;
  explore_cmd->add_option("--seed", exp_seed, "Random seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (ratios->parsed()) return cmd_ratios(ratios_input, format);
    if (reconstruct->parsed()) return cmd_reconstruct(rc, rp, re, format);
    if (segment->parsed()) {
      return cmd_segment(seg_rc, seg_rp, seg_alpha, seg_beta, seg_n, format);
    }
    if (surface->parsed()) return cmd_surface(surf_rc, surf_grid, surf_n, format);
    if (casecontrol->parsed()) return cmd_casecontrol(cc_input, format);
    if (relations->parsed()) {
      return cmd_relations(rel_input, rel_assignment, rel_tol);
    }
    if (explore_cmd->parsed()) {
      return cmd_explore(exp_assignment, exp_starts, exp_seed);
    }
  } catch (const InconsistentAssignment& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const NoSolutionsFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoSolutions;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
