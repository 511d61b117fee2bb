#include "oddsgeom/core_tables.hpp"

#include <cmath>
#include <string>

namespace oddsgeom {

namespace {

template <std::size_t N>
void check_entries(const std::array<double, N>& e, double tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (!std::isfinite(e[i]) || e[i] <= 0.0) {
      throw NonPositiveEntry(static_cast<int>(i), e[i]);
    }
    sum += e[i];
  }
  if (std::abs(sum - 1.0) > tol) throw NotNormalized(sum);
}

template <std::size_t N>
std::array<double, N> normalized(const std::array<double, N>& counts) {
  double total = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (!std::isfinite(counts[i]) || counts[i] <= 0.0) {
      throw NonPositiveEntry(static_cast<int>(i), counts[i]);
    }
    total += counts[i];
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = counts[i] / total;
  return out;
}

}  // namespace

const char* ratio_kind_name(RatioKind kind) {
  switch (kind) {
    case RatioKind::cross:
      return "cross";
    case RatioKind::parallel:
      return "parallel";
    case RatioKind::equal:
      return "equal";
  }
  throw Error("invalid RatioKind");
}

RatioKind ratio_kind_from_name(const std::string& name) {
  if (name == "cross") return RatioKind::cross;
  if (name == "parallel") return RatioKind::parallel;
  if (name == "equal") return RatioKind::equal;
  throw Error("unknown ratio kind '" + name + "'");
}

ProbTable2x2::ProbTable2x2(double p00, double p01, double p10, double p11,
                           double tol)
    : e_{p00, p01, p10, p11} {
  check_entries(e_, tol);
}

ProbTable2x3::ProbTable2x3(const std::array<double, 6>& entries, double tol)
    : e_(entries) {
  check_entries(e_, tol);
}

OddsTriple::OddsTriple(double r_cross, double r_parallel, double r_equal)
    : r_{r_cross, r_parallel, r_equal} {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(r_[i]) || r_[i] <= 0.0) {
      throw OutOfRangeParameter("odds ratios must be positive finite, got " +
                                std::to_string(r_[i]));
    }
    roots_[i] = std::sqrt(r_[i]);
  }
}

ProbTable2x2 validate_table(const std::array<double, 4>& raw, double tol) {
  return ProbTable2x2(raw[0], raw[1], raw[2], raw[3], tol);
}

ProbTable2x3 validate_table_2x3(const std::array<double, 6>& raw, double tol) {
  return ProbTable2x3(raw, tol);
}

ProbTable2x2 normalize_counts(const std::array<double, 4>& counts) {
  auto p = normalized(counts);
  return ProbTable2x2(p[0], p[1], p[2], p[3]);
}

ProbTable2x3 normalize_counts_2x3(const std::array<double, 6>& counts) {
  return ProbTable2x3(normalized(counts));
}

OddsTriple odds_triple(const ProbTable2x2& t) {
  return OddsTriple(t.p00() * t.p11() / (t.p01() * t.p10()),
                    t.p00() * t.p10() / (t.p01() * t.p11()),
                    t.p00() * t.p01() / (t.p10() * t.p11()));
}

EntryRatios entry_ratios_from_triple(const OddsTriple& o) {
  return EntryRatios{o.beta() * o.gamma(), o.beta() / o.gamma()};
}

double ratio_2x3(const ProbTable2x3& t, RatioKind kind, int deleted_col) {
  if (deleted_col < 0 || deleted_col > 2) {
    throw OutOfRangeParameter("deleted column must be 0, 1 or 2, got " +
                              std::to_string(deleted_col));
  }
  const int a = deleted_col == 0 ? 1 : 0;
  const int b = deleted_col == 2 ? 1 : 2;
  switch (kind) {
    case RatioKind::cross:
      return t.at(0, a) * t.at(1, b) / (t.at(0, b) * t.at(1, a));
    case RatioKind::parallel:
      return t.at(0, a) * t.at(1, a) / (t.at(0, b) * t.at(1, b));
    case RatioKind::equal:
      return t.at(0, a) * t.at(0, b) / (t.at(1, a) * t.at(1, b));
  }
  throw Error("invalid RatioKind");
}

CaseControlSummary case_control_summary(const ProbTable2x2& t) {
  const double specificity = t.p00() / (t.p00() + t.p01());
  const double sensitivity = t.p11() / (t.p10() + t.p11());
  // odds taken straight from the entries; routing through 1 - specificity
  // would cancel catastrophically when one off-diagonal entry is tiny
  const double spec_odds = t.p00() / t.p01();
  const double sens_odds = t.p11() / t.p10();
  return CaseControlSummary{specificity, sensitivity, spec_odds * sens_odds,
                            sens_odds / spec_odds};
}

}  // namespace oddsgeom
