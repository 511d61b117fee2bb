#pragma once

#include <span>
#include <vector>

#include "oddsgeom/core_tables.hpp"

namespace oddsgeom {

// One-parameter chart of the tables with fixed r_cross = alpha^2 and
// r_parallel = beta^2. The tables form an open segment parametrized by
// v in (0, 1/(alpha+beta)):
//
//   p00 = beta/(beta + 1/alpha) * [1 - (alpha+beta) v]
//   p01 = 1/(alpha*beta + 1)    * [1 - (alpha+beta) v]
//   p10 = beta v
//   p11 = alpha v
struct SegmentChartXP {
  double alpha;
  double beta;

  double v_max() const { return 1.0 / (alpha + beta); }
};

// Analogous chart for fixed r_parallel = beta^2 and r_equal = gamma^2,
// parametrized by v in (0, 1/(beta+gamma)):
//
//   p00 = beta/(beta + 1/gamma) * [1 - (beta+gamma) v]
//   p01 = gamma v
//   p10 = beta v
//   p11 = 1/(beta*gamma + 1)    * [1 - (beta+gamma) v]
struct SegmentChartPE {
  double beta;
  double gamma;

  double v_max() const { return 1.0 / (beta + gamma); }
};

// Margins (s, t) of an independent table: s is the first row sum, t the
// first column sum, and the table factorizes as p_ij = (row i margin) *
// (column j margin).
struct IndependenceParams {
  double s;
  double t;
};

// Evaluates the chart above. Throws OutOfRangeParameter unless
// 0 < v < 1/(alpha+beta); inside the open interval the result is always
// a valid table with the two prescribed ratios.
ProbTable2x2 chart_xp_table(double alpha, double beta, double v);
ProbTable2x2 chart_pe_table(double beta, double gamma, double v);

// The value of the free third ratio along each segment:
//
//   third_ratio_xp = r_equal = [1-(alpha+beta)v]^2 / ((alpha*beta+1) v)^2
//   third_ratio_pe = r_cross = [1-(beta+gamma)v]^2 / ((beta*gamma+1) v)^2
//
// Both are strictly decreasing in v and sweep all of (0, +inf) over the
// open domain. These closed forms are validated against direct ratio
// computation on the chart tables; a commonly quoted variant of each is
// wrong (see ERRATA.md).
double third_ratio_xp(double alpha, double beta, double v);
double third_ratio_pe(double beta, double gamma, double v);

// Closed-form inverse of third_ratio_xp in v:
//
//   v = 1 / (alpha + beta + (alpha*beta + 1) * sqrt(r_equal))
//
// Total on positive inputs; the result always lies inside the open chart
// domain. See ERRATA.md for the derivation.
double invert_third_ratio_xp(double alpha, double beta, double r_equal);

// The unique table realizing all three ratios of the triple.
ProbTable2x2 table_from_triple(const OddsTriple& o);

// Forward chart for tables with r_cross = 1: returns the margins (s, t).
// Throws NotIndependent if |r_cross - 1| > tol.
IndependenceParams independence_params(const ProbTable2x2& t,
                                       double tol = kDefaultNormalizationTol);

// Inverse: the independent table (st, s(1-t), (1-s)t, (1-s)(1-t)).
// Throws OutOfRangeParameter unless 0 < s < 1 and 0 < t < 1.
ProbTable2x2 independence_table(double s, double t);

// n tables at the evenly spaced interior parameters v = k/(n+1) * v_max,
// k = 1..n. The sampled points are collinear in affine 4-space.
std::vector<ProbTable2x2> sample_segment(const SegmentChartXP& chart, int n);
std::vector<ProbTable2x2> sample_segment(const SegmentChartPE& chart, int n);

// Sweeps r_parallel over the grid with r_cross fixed, emitting
// sample_segment of each chart: a sampled portion of the ruled quadric
// surface of tables with the given r_cross.
std::vector<ProbTable2x2> ruled_surface_sample(
    double r_cross, std::span<const double> parallel_grid, int v_count);

// The sign-flipped branch (beta u, -u/alpha, beta v, -alpha v) of the
// fixed-(r_cross, r_parallel) matrix locus. For nonzero u, v it always
// carries a non-positive coordinate, so it never meets the probability
// simplex; exposed for testing exactly that.
RealMatrix2x2 negative_branch_matrix(double alpha, double beta, double u,
                                     double v);

}  // namespace oddsgeom
