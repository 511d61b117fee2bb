#pragma once

#include <array>
#include <string>
#include <vector>

#include "oddsgeom/core_tables.hpp"
#include "oddsgeom/locus_explorer.hpp"
#include "oddsgeom/twoway_relations.hpp"

namespace oddsgeom {

// Full-precision decimal rendering: 17 significant digits, enough to
// round-trip any double, locale-independent.
std::string format_double17(double x);

// Minimal deterministic JSON emitter. Output key order is insertion
// order and doubles are rendered with format_double17, so identical data
// serializes byte-identically; the standard library serializers control
// their own float formatting and cannot guarantee that.
class JsonWriter {
 public:
  explicit JsonWriter(int indent = 2) : indent_(indent) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(std::uint64_t x);
  JsonWriter& value(bool x);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s);
  JsonWriter& null();

  const std::string& str() const { return out_; }

 private:
  void prepare_value();
  void newline();

  std::string out_;
  int indent_;
  int depth_ = 0;
  // per-depth: whether the current container already has an element
  std::vector<bool> has_element_{false};
  bool pending_key_ = false;
};

// A parsed table of either shape, row-major.
struct ParsedTable {
  int cols = 0;  // 2 or 3
  std::array<double, 6> values{};

  bool is_2x2() const { return cols == 2; }
};

// Inline syntax: rows separated by ';', entries by ',' (e.g.
// "0.4,0.2;0.1,0.3"). Whitespace around entries is ignored.
ParsedTable parse_table_inline(const std::string& text);

// CSV: one line per table row.
ParsedTable parse_table_csv(const std::string& content);

// JSON: {"rows": [[...],[...]]}.
ParsedTable parse_table_json(const std::string& content);

// Dispatches on the .json extension, otherwise CSV.
ParsedTable load_table_file(const std::string& path);

// Assignment format: JSON list of
//   {"kind": "cross|parallel|equal", "deleted_col": 0|1|2, "value": number}
RatioAssignment parse_assignment_json(const std::string& content);
RatioAssignment load_assignment_file(const std::string& path);
void write_assignment(JsonWriter& w, const RatioAssignment& a);

// LocusSample record: seed, slice dimension, failure counts, points at
// full precision, and per-cluster size / residual / local dimension.
std::string locus_sample_to_json(const LocusSample& sample);

std::string read_file(const std::string& path);

}  // namespace oddsgeom
