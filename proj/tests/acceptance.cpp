// Shipping gate: one line per criterion, nonzero exit iff any fails.
//
// Criteria (all numeric bounds are part of the contract):
//   1. segment chart reproduces its two fixed ratios
//   2. a table is recovered from its three ratios
//   3. closed-form third ratio / inversion agree with the direct oracle and
//      the recorded misprint witnesses stay refuted
//   4. the sign-flipped branch never yields a probability table
//   5. independence chart round trip, cross ratio pinned to 1
//   6. DOR / EOR identities
//   7. the five 2x3 product relations
//   8. locus dimensions via sliced sampling (3 and 2), enough clusters,
//      clean SVD gaps, bounded runtime
//   9. cluster counts never exceed the claimed degrees; the contested
//      four-constraint condition's dimension is logged, not asserted
//  10. byte-identical exploration for a fixed seed

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddsgeom/core_tables.hpp"
#include "oddsgeom/geometry.hpp"
#include "oddsgeom/io.hpp"
#include "oddsgeom/locus_explorer.hpp"
#include "oddsgeom/rng.hpp"
#include "oddsgeom/twoway_relations.hpp"

using namespace oddsgeom;

namespace {

int g_failures = 0;

void report(int index, bool ok, const std::string& text) {
  std::printf("%s %2d: %s\n", ok ? "PASS" : "FAIL", index, text.c_str());
  if (!ok) ++g_failures;
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

void criterion_1_segment_chart() {
  Stopwatch timer;
  SeededRng rng(101);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double alpha = rng.log_uniform(0.05, 20.0);
    const double beta = rng.log_uniform(0.05, 20.0);
    const double v = rng.uniform01() / (alpha + beta);
    const OddsTriple o = odds_triple(chart_xp_table(alpha, beta, v));
    worst = std::fmax(worst, rel_err(o.r_cross(), alpha * alpha));
    worst = std::fmax(worst, rel_err(o.r_parallel(), beta * beta));
  }
  const double elapsed = timer.seconds();
  report(1, worst <= 1e-12 && elapsed < 1.0,
         "segment chart reproduces its two fixed ratios on 10^4 draws" +
             fmt(" (max rel err %.2e, %.2fs)", worst, elapsed));
}

void criterion_2_reconstruction() {
  Stopwatch timer;
  SeededRng rng(102);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto e = rng.simplex_point<4>();
    const ProbTable2x2 t(e[0], e[1], e[2], e[3]);
    const ProbTable2x2 back = table_from_triple(odds_triple(t));
    for (int k = 0; k < 4; ++k) {
      worst = std::fmax(worst, rel_err(back.entries()[k], t.entries()[k]));
    }
  }
  const double elapsed = timer.seconds();
  report(2, worst <= 1e-10 && elapsed < 1.0,
         "tables are recovered from their three ratios on 10^4 draws" +
             fmt(" (max rel err %.2e, %.2fs)", worst, elapsed));
}

void criterion_3_errata() {
  SeededRng rng(103);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.log_uniform(0.05, 20.0);
    const double b = rng.log_uniform(0.05, 20.0);
    const double v = rng.uniform01() / (a + b);
    worst = std::fmax(worst, rel_err(third_ratio_xp(a, b, v),
                                     odds_triple(chart_xp_table(a, b, v))
                                         .r_equal()));
    worst = std::fmax(worst, rel_err(third_ratio_pe(a, b, v),
                                     odds_triple(chart_pe_table(a, b, v))
                                         .r_cross()));
    const double r_equal = rng.log_uniform(1e-6, 1e6);
    const double v_inv = invert_third_ratio_xp(a, b, r_equal);
    worst = std::fmax(worst, rel_err(third_ratio_xp(a, b, v_inv), r_equal));
  }

  bool witnesses_ok = true;
  try {
    const auto ws = nlohmann::json::parse(read_file(
        std::string(ODDSGEOM_FIXTURE_DIR) + "/errata_witnesses.json"));
    witnesses_ok = ws.is_array() && ws.size() == 4;
    for (const auto& w : ws) {
      const std::string which = w["case"].get<std::string>();
      double got = 0.0;
      if (which == "third_ratio_xp") {
        got = third_ratio_xp(w["alpha"].get<double>(), w["beta"].get<double>(),
                             w["v"].get<double>());
        witnesses_ok = witnesses_ok &&
                       rel_err(got, w["direct"].get<double>()) < 1e-12;
      } else if (which == "third_ratio_pe") {
        got = third_ratio_pe(w["beta"].get<double>(), w["gamma"].get<double>(),
                             w["v"].get<double>());
        witnesses_ok = witnesses_ok &&
                       rel_err(got, w["direct"].get<double>()) < 1e-12;
      } else if (which == "invert_third_ratio_xp") {
        got = invert_third_ratio_xp(w["alpha"].get<double>(),
                                    w["beta"].get<double>(),
                                    w["r_equal"].get<double>());
        witnesses_ok =
            witnesses_ok && got == w["expected_v"].get<double>();
      } else {
        witnesses_ok = false;
        continue;
      }
      // the misprinted variant must stay visibly wrong at the witness
      witnesses_ok =
          witnesses_ok && rel_err(got, w["printed"].get<double>()) > 0.1;
    }
    // the canonical witness, spelled out
    witnesses_ok =
        witnesses_ok && invert_third_ratio_xp(1.0, 1.0, 1.0) == 0.25 &&
        rel_err(0.25, 1.0 / (2.0 + std::sqrt(2.0))) > 0.1;
  } catch (const Error&) {
    witnesses_ok = false;
  }

  report(3, worst <= 1e-12 && witnesses_ok,
         "closed-form third ratios and inversion match the direct oracle; "
         "misprint witnesses stay refuted" +
             fmt(" (max rel err %.2e)", worst));
}

void criterion_4_negative_branch() {
  SeededRng rng(104);
  int counterexamples = 0;
  for (int i = 0; i < 100000; ++i) {
    const double alpha = rng.log_uniform(0.05, 20.0);
    const double beta = rng.log_uniform(0.05, 20.0);
    const double u =
        (rng.uniform01() < 0.5 ? -1.0 : 1.0) * rng.log_uniform(1e-3, 1e3);
    const double v =
        (rng.uniform01() < 0.5 ? -1.0 : 1.0) * rng.log_uniform(1e-3, 1e3);
    const RealMatrix2x2 m = negative_branch_matrix(alpha, beta, u, v);
    const double least =
        std::fmin(std::fmin(m.p00, m.p01), std::fmin(m.p10, m.p11));
    if (!(least <= 0.0)) ++counterexamples;
  }
  report(4, counterexamples == 0,
         "sign-flipped branch keeps a non-positive entry on 10^5 draws" +
             fmt(" (%.0f counterexamples)", counterexamples));
}

void criterion_5_independence() {
  SeededRng rng(105);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double s = rng.uniform01();
    const double t = rng.uniform01();
    const ProbTable2x2 table = independence_table(s, t);
    worst = std::fmax(worst, std::fabs(odds_triple(table).r_cross() - 1.0));
    const IndependenceParams p = independence_params(table);
    worst = std::fmax(worst, std::fabs(p.s - s));
    worst = std::fmax(worst, std::fabs(p.t - t));
    const ProbTable2x2 back = independence_table(p.s, p.t);
    for (int k = 0; k < 4; ++k) {
      worst = std::fmax(
          worst, std::fabs(back.entries()[k] - table.entries()[k]));
    }
  }
  report(5, worst <= 1e-12,
         "independence chart round trips and pins the cross ratio to 1" +
             fmt(" (max err %.2e)", worst));
}

void criterion_6_case_control() {
  SeededRng rng(106);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto e = rng.simplex_point<4>();
    const ProbTable2x2 t(e[0], e[1], e[2], e[3]);
    const CaseControlSummary s = case_control_summary(t);
    const OddsTriple o = odds_triple(t);
    worst = std::fmax(worst, rel_err(s.dor, o.r_cross()));
    worst = std::fmax(worst, rel_err(s.eor, 1.0 / o.r_parallel()));
  }
  const CaseControlSummary w =
      case_control_summary(ProbTable2x2(0.45, 0.05, 0.1, 0.4));
  const bool example_ok = rel_err(w.specificity, 0.9) < 1e-12 &&
                          rel_err(w.sensitivity, 0.8) < 1e-12 &&
                          rel_err(w.dor, 36.0) < 1e-12;
  report(6, worst <= 1e-12 && example_ok,
         "DOR equals the cross ratio and EOR the inverse parallel ratio" +
             fmt(" (max rel err %.2e)", worst));
}

void criterion_7_relations() {
  SeededRng rng(107);
  bool all_consistent = true;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const ProbTable2x3 t(rng.simplex_point<6>());
    const ConsistencyReport report_t = check_relations(t, 1e-10);
    all_consistent = all_consistent && report_t.consistent();
    auto r = [&](RatioKind k, int col) { return ratio_2x3(t, k, col); };
    using K = RatioKind;
    worst = std::fmax(worst, rel_err(r(K::parallel, 0) * r(K::parallel, 2),
                                     r(K::parallel, 1)));
    worst = std::fmax(
        worst, rel_err(r(K::cross, 0) * r(K::cross, 2), r(K::cross, 1)));
    worst = std::fmax(
        worst, rel_err(r(K::cross, 0) * r(K::equal, 1), r(K::equal, 2)));
    worst = std::fmax(
        worst, rel_err(r(K::cross, 1) * r(K::equal, 0), r(K::equal, 2)));
    worst = std::fmax(
        worst, rel_err(r(K::cross, 2) * r(K::equal, 0), r(K::equal, 1)));
  }
  report(7, all_consistent && worst <= 1e-10,
         "all five 2x3 product relations hold on 10^4 random tables" +
             fmt(" (max rel err %.2e)", worst));
}

RatioAssignment make_assignment(
    const std::vector<RatioConstraint>& constraints) {
  return RatioAssignment(constraints);
}

void criterion_8_locus_dimensions() {
  struct Case {
    const char* label;
    RatioAssignment assignment;
    int expected_dimension;
  };
  const std::vector<Case> cases = {
      {"two unit cross ratios",
       make_assignment({{RatioKind::cross, 1, 1.0}, {RatioKind::cross, 2, 1.0}}),
       3},
      {"cross(4), cross(3), equal(2) quadric",
       make_assignment({{RatioKind::cross, 0, 4.0},
                        {RatioKind::cross, 1, 3.0},
                        {RatioKind::equal, 2, 2.0}}),
       2},
  };

  bool all_ok = true;
  std::string detail;
  for (const auto& c : cases) {
    Stopwatch timer;
    const LocusSample sample = explore(c.assignment, 2000, kDefaultSeed);
    const double elapsed = timer.seconds();

    bool dims_ok = true;
    bool gaps_ok = true;
    for (const auto& cluster : sample.clusters) {
      dims_ok = dims_ok && cluster.dimension.dimension == c.expected_dimension;
      gaps_ok = gaps_ok && cluster.dimension.gap_ratio >= 10.0;
    }
    const bool enough = sample.clusters.size() >= 10;
    all_ok = all_ok && dims_ok && gaps_ok && enough && elapsed < 30.0;
    detail += fmt(" [dim %.0f, %.0f clusters",
                  static_cast<double>(
                      sample.clusters.empty()
                          ? -1
                          : sample.clusters.front().dimension.dimension),
                  static_cast<double>(sample.clusters.size())) +
              fmt(", %.1fs]", elapsed);
  }
  report(8, all_ok,
         "sliced sampling measures locus dimensions 3 and 2 with >=10 "
         "clusters and clean gaps" +
             detail);
}

void criterion_9_degree_caps() {
  struct Case {
    const char* label;
    RatioAssignment assignment;
    int degree_cap;
  };
  const std::vector<Case> cases = {
      {"two unit cross ratios (degree 3)",
       make_assignment({{RatioKind::cross, 1, 1.0}, {RatioKind::cross, 2, 1.0}}),
       3},
      {"unit cross + unit equal (degree 4)",
       make_assignment({{RatioKind::cross, 1, 1.0}, {RatioKind::equal, 2, 1.0}}),
       4},
      {"two unit cross + two unit parallel (degree 4)",
       make_assignment({{RatioKind::cross, 0, 1.0},
                        {RatioKind::cross, 1, 1.0},
                        {RatioKind::parallel, 1, 1.0},
                        {RatioKind::parallel, 2, 1.0}}),
       4},
  };

  bool all_ok = true;
  std::string detail;
  for (const auto& c : cases) {
    int max_clusters = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      // one batch = one slice draw, so cluster count bounds solution count;
      // a slice that catches no interior point at all counts as zero
      try {
        const LocusSample sample = explore(c.assignment, 100, seed);
        max_clusters =
            std::max(max_clusters, static_cast<int>(sample.clusters.size()));
      } catch (const NoSolutionsFound&) {
      }
    }
    all_ok = all_ok && max_clusters <= c.degree_cap;
    detail += fmt(" [max %.0f of %.0f]", static_cast<double>(max_clusters),
                  static_cast<double>(c.degree_cap));
  }

  // Contested condition: its measured dimension is logged as an open
  // finding, deliberately not asserted either way (see README).
  const RatioAssignment contested =
      make_assignment({{RatioKind::cross, 0, 1.0},
                       {RatioKind::cross, 1, 1.0},
                       {RatioKind::equal, 1, 1.0},
                       {RatioKind::equal, 2, 1.0}});
  const LocusSample sample = explore(contested, 400, kDefaultSeed);
  std::string dims;
  for (int d = 0; d <= 5; ++d) {
    for (const auto& cluster : sample.clusters) {
      if (cluster.dimension.dimension == d) {
        dims += (dims.empty() ? "" : ",") + std::to_string(d);
        break;
      }
    }
  }
  detail += " [open finding: contested condition measures dim " + dims + "]";

  report(9, all_ok && !sample.clusters.empty(),
         "cluster counts stay within claimed degrees over 20 seeds" + detail);
}

void criterion_10_determinism() {
  const RatioAssignment a =
      make_assignment({{RatioKind::cross, 0, 4.0},
                       {RatioKind::cross, 1, 3.0},
                       {RatioKind::equal, 2, 2.0}});
  const std::string first = locus_sample_to_json(explore(a, 400, kDefaultSeed));
  const std::string second = locus_sample_to_json(explore(a, 400, kDefaultSeed));
  report(10, !first.empty() && first == second,
         "exploration with a fixed seed serializes byte-identically" +
             fmt(" (%.0f bytes)", static_cast<double>(first.size())));
}

}  // namespace

int main() {
  criterion_1_segment_chart();
  criterion_2_reconstruction();
  criterion_3_errata();
  criterion_4_negative_branch();
  criterion_5_independence();
  criterion_6_case_control();
  criterion_7_relations();
  criterion_8_locus_dimensions();
  criterion_9_degree_caps();
  criterion_10_determinism();

  if (g_failures == 0) {
    std::printf("all 10 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
