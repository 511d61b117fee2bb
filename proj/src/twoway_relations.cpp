#include "oddsgeom/twoway_relations.hpp"

#include <cmath>
#include <string>

namespace oddsgeom {

namespace {

int slot(RatioKind kind, int deleted_col) {
  return 3 * static_cast<int>(kind) + deleted_col;
}

std::string ratio_name(RatioKind kind, int col) {
  return std::string("r_") + ratio_kind_name(kind) + "(" +
         std::to_string(col) + ")";
}

// The five relations, each as factor_a * factor_b = product.
struct Relation {
  RatioKind kind_a;
  int col_a;
  RatioKind kind_b;
  int col_b;
  RatioKind kind_p;
  int col_p;

  std::string name() const {
    return ratio_name(kind_a, col_a) + " * " + ratio_name(kind_b, col_b) +
           " = " + ratio_name(kind_p, col_p);
  }
};

constexpr RatioKind kCross = RatioKind::cross;
constexpr RatioKind kPar = RatioKind::parallel;
constexpr RatioKind kEq = RatioKind::equal;

const Relation kRelations[5] = {
    {kPar, 0, kPar, 2, kPar, 1},
    {kCross, 0, kCross, 2, kCross, 1},
    {kCross, 0, kEq, 1, kEq, 2},
    {kCross, 1, kEq, 0, kEq, 2},
    {kCross, 2, kEq, 0, kEq, 1},
};

// Relative comparison in log space, symmetric in reciprocals.
bool log_close(double a, double b, double tol) {
  return std::abs(std::log(a) - std::log(b)) <= tol;
}

}  // namespace

RatioAssignment::RatioAssignment(const std::vector<RatioConstraint>& cs) {
  for (const auto& c : cs) set(c.kind, c.deleted_col, c.value);
}

void RatioAssignment::set(RatioKind kind, int deleted_col, double value) {
  if (deleted_col < 0 || deleted_col > 2) {
    throw OutOfRangeParameter("deleted column must be 0, 1 or 2, got " +
                              std::to_string(deleted_col));
  }
  if (!std::isfinite(value) || value <= 0.0) {
    throw OutOfRangeParameter("assigned ratio must be positive finite, got " +
                              std::to_string(value));
  }
  auto& cell = values_[slot(kind, deleted_col)];
  if (cell.has_value()) {
    throw Error("duplicate constraint for " + ratio_name(kind, deleted_col));
  }
  cell = value;
}

bool RatioAssignment::has(RatioKind kind, int deleted_col) const {
  return values_[slot(kind, deleted_col)].has_value();
}

std::optional<double> RatioAssignment::value(RatioKind kind,
                                             int deleted_col) const {
  return values_[slot(kind, deleted_col)];
}

std::vector<RatioConstraint> RatioAssignment::constraints() const {
  std::vector<RatioConstraint> out;
  for (int k = 0; k < 3; ++k) {
    for (int col = 0; col < 3; ++col) {
      if (const auto& v = values_[3 * k + col]) {
        out.push_back({static_cast<RatioKind>(k), col, *v});
      }
    }
  }
  return out;
}

std::size_t RatioAssignment::size() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.has_value() ? 1 : 0;
  return n;
}

ConsistencyReport check_relations(const ProbTable2x3& t, double tol) {
  ConsistencyReport report;
  double r[9];
  for (int k = 0; k < 3; ++k) {
    for (int col = 0; col < 3; ++col) {
      r[3 * k + col] = ratio_2x3(t, static_cast<RatioKind>(k), col);
    }
  }
  for (const auto& rel : kRelations) {
    const double lhs = r[slot(rel.kind_a, rel.col_a)] * r[slot(rel.kind_b, rel.col_b)];
    const double rhs = r[slot(rel.kind_p, rel.col_p)];
    if (std::abs(lhs - rhs) > tol * std::fmax(lhs, rhs)) {
      report.violations.push_back({rel.name(), lhs, rhs});
    }
  }
  return report;
}

ConsistencyReport closure(const RatioAssignment& a) {
  ConsistencyReport report;
  std::array<std::optional<double>, 9> vals{};
  std::array<bool, 9> was_input{};
  for (const auto& c : a.constraints()) {
    vals[slot(c.kind, c.deleted_col)] = c.value;
    was_input[slot(c.kind, c.deleted_col)] = true;
  }

  constexpr double kConflictTol = 1e-12;
  auto assign = [&](RatioKind kind, int col, double value,
                    const Relation& rel) -> bool {
    auto& cell = vals[slot(kind, col)];
    if (!cell.has_value()) {
      cell = value;
      return true;
    }
    if (!log_close(*cell, value, kConflictTol)) {
      report.violations.push_back({rel.name(), value, *cell});
    }
    return false;
  };

  // Each relation a*b = p solved for whichever slot is missing; at most
  // nine slots can ever be filled, so the fixpoint is reached quickly.
  bool changed = true;
  while (changed && report.violations.empty()) {
    changed = false;
    for (const auto& rel : kRelations) {
      const auto& va = vals[slot(rel.kind_a, rel.col_a)];
      const auto& vb = vals[slot(rel.kind_b, rel.col_b)];
      const auto& vp = vals[slot(rel.kind_p, rel.col_p)];
      if (va && vb) {
        changed |= assign(rel.kind_p, rel.col_p, *va * *vb, rel);
      } else if (va && vp) {
        changed |= assign(rel.kind_b, rel.col_b, *vp / *va, rel);
      } else if (vb && vp) {
        changed |= assign(rel.kind_a, rel.col_a, *vp / *vb, rel);
      }
      if (!report.violations.empty()) break;
    }
  }

  for (int k = 0; k < 3; ++k) {
    for (int col = 0; col < 3; ++col) {
      if (vals[3 * k + col] && !was_input[3 * k + col]) {
        report.derived.push_back(
            {static_cast<RatioKind>(k), col, *vals[3 * k + col]});
      }
    }
  }
  return report;
}

}  // namespace oddsgeom
