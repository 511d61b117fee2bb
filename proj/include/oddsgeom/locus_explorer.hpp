#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "oddsgeom/twoway_relations.hpp"

namespace oddsgeom {

using Vec6 = Eigen::Matrix<double, 6, 1>;

inline constexpr std::uint64_t kDefaultSeed = 20140206;

// A fixed-ratio constraint with cleared denominators:
//   value * x[den0]*x[den1] - x[num0]*x[num1] = 0
// a difference of two degree-2 monomials in the six entries of a 2x3
// matrix (row-major indices).
struct QuadraticRatioEquation {
  int num0, num1;
  int den0, den1;
  double value;
  RatioKind kind;
  int deleted_col;
};

// The polynomial system cutting out the locus of a ratio assignment in
// the space of sum-one matrices: one cleared-denominator quadric per
// constraint plus the affine equation sum(x) - 1 = 0, and optionally a
// stack of affine slice equations a.x - c = 0 used to cut the locus down
// to isolated points. Row order is fixed: ratio equations (canonical
// constraint order), affine, slices.
class PolySystem {
 public:
  // Builds without any consistency check (used for raw evaluation and
  // randomized Jacobian tests).
  static PolySystem from_constraints(const std::vector<RatioConstraint>& cs);

  int num_vars() const { return 6; }
  int num_ratio_equations() const { return static_cast<int>(ratio_eqs_.size()); }
  int num_slices() const { return static_cast<int>(slice_offsets_.size()); }
  // ratio equations + affine + slices
  int num_equations() const { return num_ratio_equations() + 1 + num_slices(); }

  const std::vector<QuadraticRatioEquation>& ratio_equations() const {
    return ratio_eqs_;
  }

  void set_slices(const Eigen::MatrixXd& coeffs, const Eigen::VectorXd& offsets);
  void clear_slices();

  Eigen::VectorXd evaluate(const Vec6& x) const;
  Eigen::MatrixXd jacobian(const Vec6& x) const;

  // Same, restricted to the ratio + affine rows; local dimension estimates
  // must not see the slices.
  Eigen::VectorXd evaluate_core(const Vec6& x) const;
  Eigen::MatrixXd jacobian_core(const Vec6& x) const;

 private:
  std::vector<QuadraticRatioEquation> ratio_eqs_;
  Eigen::MatrixXd slice_coeffs_;   // num_slices x 6
  Eigen::VectorXd slice_offsets_;  // num_slices
};

// Runs closure first and throws InconsistentAssignment when it fails;
// otherwise the system of the assignment's own constraints (derived
// constraints are implied and not added as rows).
PolySystem build_system(const RatioAssignment& a);

// Local dimension of the locus at a point x on it, estimated as
// 6 - numerical_rank(core Jacobian at x). Rank counts singular values
// above svd_threshold * sigma_max. clear_gap is false when the spectrum
// has no factor-10 gap at the cutoff (a singular point of the locus, or
// a threshold placed inside a cluster of singular values).
struct DimensionEstimate {
  int dimension;
  // smallest retained / largest discarded singular value; +inf when
  // nothing is discarded
  double gap_ratio;
  bool clear_gap;
  std::vector<double> singular_values;
};

DimensionEstimate local_dimension(const PolySystem& sys, const Vec6& x,
                                  double svd_threshold = 1e-8);

struct NewtonResult {
  Vec6 x;
  double residual;  // max-norm of the full residual vector
  bool converged;
  int iterations;
};

// Damped Newton with SVD least-squares steps and residual backtracking.
// Handles square, overdetermined (consistent), and underdetermined
// systems; declares divergence when a step exceeds norm 10.
NewtonResult newton_refine(const PolySystem& sys, const Vec6& start,
                           int max_iterations = 50,
                           double target_residual = 1e-13);

struct ExploreOptions {
  std::uint64_t seed = kDefaultSeed;
  int n_starts = 400;
  int batch_size = 100;          // slices are redrawn per batch
  int max_newton_iterations = 50;
  double residual_keep_tol = 1e-10;
  double entry_floor = 1e-6;     // minimum |entry|, the nonzero-entry cut
  double cluster_radius = 1e-6;  // max-norm
  double svd_threshold = 1e-8;
};

struct LocusPoint {
  Vec6 x;
  double residual;
  int batch;
};

struct LocusCluster {
  int representative;  // index into LocusSample::points (lowest residual)
  int size;
  DimensionEstimate dimension;
};

struct LocusSample {
  std::vector<LocusPoint> points;
  std::vector<LocusCluster> clusters;
  std::uint64_t seed = 0;
  int n_starts = 0;
  int slice_dimension = 0;  // number of slice constraints per batch
  int failures = 0;         // non-converged starts
  int filtered = 0;         // converged but rejected by the entry floor
};

// Samples the real locus of a consistent assignment:
//   1. bootstrap the expected dimension d from the Jacobian rank at the
//      first point found by unsliced least-squares Newton (fallback:
//      5 - #constraints),
//   2. per batch of starts, draw d fresh random affine slices (standard
//      normal coefficients) and run Newton from random simplex starts,
//   3. keep converged points passing the residual and entry-floor cuts,
//   4. cluster at cluster_radius and estimate the local dimension at each
//      representative without the slices.
// Deterministic for fixed (assignment, options). Throws
// InconsistentAssignment or, when no start survives, NoSolutionsFound.
LocusSample explore(const RatioAssignment& a, const ExploreOptions& options);
LocusSample explore(const RatioAssignment& a, int n_starts,
                    std::uint64_t seed);

// True iff all |entries| >= entry_floor, |sum - 1| <= tol, and every
// assigned ratio matches its value to relative tolerance tol.
bool membership(const Vec6& x, const RatioAssignment& a, double tol,
                double entry_floor = 1e-6);

}  // namespace oddsgeom
