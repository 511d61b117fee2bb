#include "oddsgeom/geometry.hpp"

#include <cmath>
#include <string>

namespace oddsgeom {

namespace {

void check_positive(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw OutOfRangeParameter(std::string(name) + " must be positive finite, got " +
                              std::to_string(x));
  }
}

void check_chart_v(double v, double v_max) {
  if (!std::isfinite(v) || v <= 0.0 || v >= v_max) {
    throw OutOfRangeParameter("chart parameter v = " + std::to_string(v) +
                              " outside the open interval (0, " +
                              std::to_string(v_max) + ")");
  }
}

}  // namespace

ProbTable2x2 chart_xp_table(double alpha, double beta, double v) {
  check_positive(alpha, "alpha");
  check_positive(beta, "beta");
  check_chart_v(v, 1.0 / (alpha + beta));
  const double tail = 1.0 - (alpha + beta) * v;
  return ProbTable2x2(beta / (beta + 1.0 / alpha) * tail,
                      1.0 / (alpha * beta + 1.0) * tail, beta * v, alpha * v);
}

ProbTable2x2 chart_pe_table(double beta, double gamma, double v) {
  check_positive(beta, "beta");
  check_positive(gamma, "gamma");
  check_chart_v(v, 1.0 / (beta + gamma));
  const double tail = 1.0 - (beta + gamma) * v;
  return ProbTable2x2(beta / (beta + 1.0 / gamma) * tail, gamma * v, beta * v,
                      1.0 / (beta * gamma + 1.0) * tail);
}

double third_ratio_xp(double alpha, double beta, double v) {
  check_positive(alpha, "alpha");
  check_positive(beta, "beta");
  check_chart_v(v, 1.0 / (alpha + beta));
  const double q = (1.0 - (alpha + beta) * v) / ((alpha * beta + 1.0) * v);
  return q * q;
}

double third_ratio_pe(double beta, double gamma, double v) {
  check_positive(beta, "beta");
  check_positive(gamma, "gamma");
  check_chart_v(v, 1.0 / (beta + gamma));
  const double q = (1.0 - (beta + gamma) * v) / ((beta * gamma + 1.0) * v);
  return q * q;
}

double invert_third_ratio_xp(double alpha, double beta, double r_equal) {
  check_positive(alpha, "alpha");
  check_positive(beta, "beta");
  check_positive(r_equal, "r_equal");
  return 1.0 / (alpha + beta + (alpha * beta + 1.0) * std::sqrt(r_equal));
}

ProbTable2x2 table_from_triple(const OddsTriple& o) {
  const double v = invert_third_ratio_xp(o.alpha(), o.beta(), o.r_equal());
  return chart_xp_table(o.alpha(), o.beta(), v);
}

IndependenceParams independence_params(const ProbTable2x2& t, double tol) {
  const double r_cross = odds_triple(t).r_cross();
  if (std::abs(r_cross - 1.0) > tol) {
    throw NotIndependent("table has r_cross = " + std::to_string(r_cross) +
                         ", not 1 within tolerance");
  }
  return IndependenceParams{t.p00() + t.p01(), t.p00() + t.p10()};
}

ProbTable2x2 independence_table(double s, double t) {
  if (!(s > 0.0 && s < 1.0) || !(t > 0.0 && t < 1.0)) {
    throw OutOfRangeParameter("independence margins must lie in (0,1), got s=" +
                              std::to_string(s) + ", t=" + std::to_string(t));
  }
  return ProbTable2x2(s * t, s * (1.0 - t), (1.0 - s) * t,
                      (1.0 - s) * (1.0 - t));
}

namespace {

template <typename Chart, typename MakeTable>
std::vector<ProbTable2x2> sample_chart(const Chart& chart, int n,
                                       MakeTable make_table) {
  if (n < 1) {
    throw OutOfRangeParameter("sample count must be >= 1, got " +
                              std::to_string(n));
  }
  std::vector<ProbTable2x2> out;
  out.reserve(static_cast<std::size_t>(n));
  const double v_max = chart.v_max();
  for (int k = 1; k <= n; ++k) {
    out.push_back(make_table(static_cast<double>(k) / (n + 1) * v_max));
  }
  return out;
}

}  // namespace

std::vector<ProbTable2x2> sample_segment(const SegmentChartXP& chart, int n) {
  return sample_chart(chart, n, [&](double v) {
    return chart_xp_table(chart.alpha, chart.beta, v);
  });
}

std::vector<ProbTable2x2> sample_segment(const SegmentChartPE& chart, int n) {
  return sample_chart(chart, n, [&](double v) {
    return chart_pe_table(chart.beta, chart.gamma, v);
  });
}

std::vector<ProbTable2x2> ruled_surface_sample(
    double r_cross, std::span<const double> parallel_grid, int v_count) {
  check_positive(r_cross, "r_cross");
  if (parallel_grid.empty()) {
    throw OutOfRangeParameter("parallel-ratio grid must be nonempty");
  }
  std::vector<ProbTable2x2> out;
  out.reserve(parallel_grid.size() * static_cast<std::size_t>(v_count));
  const double alpha = std::sqrt(r_cross);
  for (double r_parallel : parallel_grid) {
    check_positive(r_parallel, "r_parallel");
    SegmentChartXP chart{alpha, std::sqrt(r_parallel)};
    auto segment = sample_segment(chart, v_count);
    out.insert(out.end(), segment.begin(), segment.end());
  }
  return out;
}

RealMatrix2x2 negative_branch_matrix(double alpha, double beta, double u,
                                     double v) {
  check_positive(alpha, "alpha");
  check_positive(beta, "beta");
  return RealMatrix2x2{beta * u, -u / alpha, beta * v, -alpha * v};
}

}  // namespace oddsgeom
