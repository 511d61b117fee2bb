#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "oddsgeom/core_tables.hpp"

namespace oddsgeom {

// One fixed ratio of a 2x3 table: the given kind of ratio of the submatrix
// with deleted_col removed, required to equal value.
struct RatioConstraint {
  RatioKind kind;
  int deleted_col;
  double value;
};

// A set of ratio constraints on a 2x3 table, at most one per
// (kind, deleted_col) slot, all values strictly positive.
class RatioAssignment {
 public:
  RatioAssignment() = default;
  explicit RatioAssignment(const std::vector<RatioConstraint>& constraints);

  // Throws OutOfRangeParameter on a bad column or non-positive value, and
  // Error on a duplicate (kind, deleted_col) slot.
  void set(RatioKind kind, int deleted_col, double value);

  bool has(RatioKind kind, int deleted_col) const;
  std::optional<double> value(RatioKind kind, int deleted_col) const;

  // Constraints in canonical (kind, column) order.
  std::vector<RatioConstraint> constraints() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

 private:
  // slot index = 3 * kind + column
  std::array<std::optional<double>, 9> values_{};
};

// A relation among the nine ratios that failed, with both evaluated sides.
struct RelationViolation {
  std::string relation;
  double lhs;
  double rhs;
};

struct ConsistencyReport {
  std::vector<RelationViolation> violations;
  // Constraints implied by the five relations but absent from the input
  // (empty when checking a concrete table, where all nine are known).
  std::vector<RatioConstraint> derived;

  bool consistent() const { return violations.empty(); }
};

// Evaluates all nine ratios of the table and checks the five
// multiplicative identities between them:
//
//   r_par(0)   * r_par(2)   = r_par(1)
//   r_cross(0) * r_cross(2) = r_cross(1)
//   r_cross(0) * r_eq(1)    = r_eq(2)
//   r_cross(1) * r_eq(0)    = r_eq(2)
//   r_cross(2) * r_eq(0)    = r_eq(1)
//
// These are identities, so the report is consistent for every valid table;
// tol guards against rounding.
ConsistencyReport check_relations(const ProbTable2x3& t, double tol = 1e-10);

// Propagates the five relations as rewrite rules (each direction that
// solves for one unknown slot) until a fixpoint, deriving values for
// unassigned slots and reporting conflicts beyond relative tolerance
// 1e-12 (compared in log space). Sound with respect to the five relations
// but not known to be complete.
ConsistencyReport closure(const RatioAssignment& a);

}  // namespace oddsgeom
