#pragma once

#include <array>

#include "oddsgeom/errors.hpp"

namespace oddsgeom {

inline constexpr double kDefaultNormalizationTol = 1e-9;

// Which of the three 2x2 odds ratios:
//   cross:    p00*p11 / (p01*p10)
//   parallel: p00*p10 / (p01*p11)
//   equal:    p00*p01 / (p10*p11)
enum class RatioKind { cross, parallel, equal };

const char* ratio_kind_name(RatioKind kind);
RatioKind ratio_kind_from_name(const std::string& name);

// An unconstrained 2x2 matrix, i.e. a point in real affine 4-space.
// Unlike ProbTable2x2 there is no positivity or normalization invariant.
struct RealMatrix2x2 {
  double p00 = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.0;
};

// A 2x2 joint probability table: strictly positive entries summing to 1,
// a point of the open probability simplex. The constructor enforces the
// invariant; entries are immutable afterwards.
class ProbTable2x2 {
 public:
  ProbTable2x2(double p00, double p01, double p10, double p11,
               double tol = kDefaultNormalizationTol);

  double p00() const noexcept { return e_[0]; }
  double p01() const noexcept { return e_[1]; }
  double p10() const noexcept { return e_[2]; }
  double p11() const noexcept { return e_[3]; }
  const std::array<double, 4>& entries() const noexcept { return e_; }

 private:
  std::array<double, 4> e_;
};

// A strictly positive 2x3 probability table (entries row-major).
class ProbTable2x3 {
 public:
  ProbTable2x3(const std::array<double, 6>& entries,
               double tol = kDefaultNormalizationTol);

  double at(int row, int col) const { return e_[3 * row + col]; }
  const std::array<double, 6>& entries() const noexcept { return e_; }

 private:
  std::array<double, 6> e_;
};

// The three odds ratios of a 2x2 table, all strictly positive, together
// with their positive square roots alpha, beta, gamma.
class OddsTriple {
 public:
  OddsTriple(double r_cross, double r_parallel, double r_equal);

  double r_cross() const noexcept { return r_[0]; }
  double r_parallel() const noexcept { return r_[1]; }
  double r_equal() const noexcept { return r_[2]; }

  double alpha() const noexcept { return roots_[0]; }
  double beta() const noexcept { return roots_[1]; }
  double gamma() const noexcept { return roots_[2]; }

 private:
  std::array<double, 3> r_;
  std::array<double, 3> roots_;
};

// Entry quotients determined by a triple alone:
//   ratio00_11     = beta*gamma = p00/p11
//   off_diag_ratio = beta/gamma = p10/p01
// The off-diagonal orientation (p10/p01 rather than p01/p10) is forced by
// expanding r_parallel/r_equal = (p10/p01)^2; see ERRATA.md.
struct EntryRatios {
  double ratio00_11;
  double off_diag_ratio;
};

// Case-control summary of a 2x2 table, with rows = disease status and
// columns = test result. dor equals r_cross and eor equals 1/r_parallel.
struct CaseControlSummary {
  double specificity;
  double sensitivity;
  double dor;
  double eor;
};

// Checks positivity and |sum - 1| <= tol; entries pass through unchanged.
ProbTable2x2 validate_table(const std::array<double, 4>& raw,
                            double tol = kDefaultNormalizationTol);
ProbTable2x3 validate_table_2x3(const std::array<double, 6>& raw,
                                double tol = kDefaultNormalizationTol);

// Maps strictly positive counts to a table by dividing by the total.
ProbTable2x2 normalize_counts(const std::array<double, 4>& counts);
ProbTable2x3 normalize_counts_2x3(const std::array<double, 6>& counts);

OddsTriple odds_triple(const ProbTable2x2& t);

EntryRatios entry_ratios_from_triple(const OddsTriple& o);

// The chosen ratio of the 2x2 submatrix obtained by deleting the given
// column (remaining columns kept in increasing index order).
double ratio_2x3(const ProbTable2x3& t, RatioKind kind, int deleted_col);

CaseControlSummary case_control_summary(const ProbTable2x2& t);

}  // namespace oddsgeom
