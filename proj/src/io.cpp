#include "oddsgeom/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace oddsgeom {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string::size_type pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

double parse_number(const std::string& raw) {
  const std::string t = trim(raw);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = begin + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || t.empty()) {
    throw ParseError("not a number: '" + raw + "'");
  }
  return value;
}

ParsedTable table_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.size() != 2) {
    throw ParseError("expected 2 table rows, got " +
                     std::to_string(rows.size()));
  }
  const std::size_t cols = rows[0].size();
  if (cols != 2 && cols != 3) {
    throw ParseError("expected 2 or 3 columns per row, got " +
                     std::to_string(cols));
  }
  if (rows[1].size() != cols) {
    throw ParseError("rows have different lengths");
  }
  ParsedTable t;
  t.cols = static_cast<int>(cols);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      t.values[i * cols + j] = rows[i][j];
    }
  }
  return t;
}

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

std::string format_double17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  prepare_value();
  out_ += '{';
  ++depth_;
  has_element_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool had = has_element_.back();
  has_element_.pop_back();
  --depth_;
  if (had) newline();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  prepare_value();
  out_ += '[';
  ++depth_;
  has_element_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool had = has_element_.back();
  has_element_.pop_back();
  --depth_;
  if (had) newline();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (has_element_[depth_]) out_ += ',';
  newline();
  has_element_[depth_] = true;
  out_ += '"';
  out_ += escape_json(name);
  out_ += "\": ";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  prepare_value();
  // JSON has no non-finite literals.
  out_ += std::isfinite(x) ? format_double17(x) : "null";
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  prepare_value();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t x) {
  prepare_value();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool x) {
  prepare_value();
  out_ += x ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  prepare_value();
  out_ += '"';
  out_ += escape_json(s);
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::null() {
  prepare_value();
  out_ += "null";
  return *this;
}

void JsonWriter::prepare_value() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (depth_ > 0) {
    if (has_element_[depth_]) out_ += ',';
    newline();
  }
  has_element_[depth_] = true;
}

void JsonWriter::newline() {
  out_ += '\n';
  out_.append(static_cast<std::size_t>(depth_) * indent_, ' ');
}

ParsedTable parse_table_inline(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const auto& row_text : split(text, ';')) {
    std::vector<double> row;
    for (const auto& cell : split(row_text, ',')) row.push_back(parse_number(cell));
    rows.push_back(std::move(row));
  }
  return table_from_rows(rows);
}

ParsedTable parse_table_csv(const std::string& content) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(parse_number(cell));
    rows.push_back(std::move(row));
  }
  return table_from_rows(rows);
}

ParsedTable parse_table_json(const std::string& content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw ParseError("table JSON must be an object with a \"rows\" array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["rows"]) {
    if (!row.is_array()) throw ParseError("each table row must be an array");
    std::vector<double> r;
    for (const auto& cell : row) {
      if (!cell.is_number()) throw ParseError("table entries must be numbers");
      r.push_back(cell.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return table_from_rows(rows);
}

ParsedTable load_table_file(const std::string& path) {
  const std::string content = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return parse_table_json(content);
  }
  return parse_table_csv(content);
}

RatioAssignment parse_assignment_json(const std::string& content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError("assignment JSON must be an array of constraints");
  }
  RatioAssignment a;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("kind") ||
        !item.contains("deleted_col") || !item.contains("value") ||
        !item["kind"].is_string() ||
        !item["deleted_col"].is_number_integer() ||
        !item["value"].is_number()) {
      throw ParseError(
          "each constraint needs string \"kind\", integer \"deleted_col\" "
          "and numeric \"value\"");
    }
    a.set(ratio_kind_from_name(item["kind"].get<std::string>()),
          item["deleted_col"].get<int>(), item["value"].get<double>());
  }
  return a;
}

RatioAssignment load_assignment_file(const std::string& path) {
  return parse_assignment_json(read_file(path));
}

void write_assignment(JsonWriter& w, const RatioAssignment& a) {
  w.begin_array();
  for (const auto& c : a.constraints()) {
    w.begin_object();
    w.key("kind").value(ratio_kind_name(c.kind));
    w.key("deleted_col").value(c.deleted_col);
    w.key("value").value(c.value);
    w.end_object();
  }
  w.end_array();
}

std::string locus_sample_to_json(const LocusSample& sample) {
  JsonWriter w;
  w.begin_object();
  w.key("seed").value(static_cast<std::uint64_t>(sample.seed));
  w.key("n_starts").value(sample.n_starts);
  w.key("slice_dimension").value(sample.slice_dimension);
  w.key("failures").value(sample.failures);
  w.key("filtered").value(sample.filtered);
  w.key("n_points").value(static_cast<int>(sample.points.size()));

  w.key("clusters").begin_array();
  for (const auto& c : sample.clusters) {
    const LocusPoint& rep = sample.points[c.representative];
    w.begin_object();
    w.key("size").value(c.size);
    w.key("residual").value(rep.residual);
    w.key("local_dimension").value(c.dimension.dimension);
    w.key("gap_ratio").value(c.dimension.gap_ratio);
    w.key("clear_gap").value(c.dimension.clear_gap);
    w.key("representative").begin_array();
    for (int i = 0; i < 6; ++i) w.value(rep.x[i]);
    w.end_array();
    w.end_object();
  }
  w.end_array();

  w.key("points").begin_array();
  for (const auto& p : sample.points) {
    w.begin_object();
    w.key("x").begin_array();
    for (int i = 0; i < 6; ++i) w.value(p.x[i]);
    w.end_array();
    w.key("residual").value(p.residual);
    w.key("batch").value(p.batch);
    w.end_object();
  }
  w.end_array();

  w.end_object();
  return w.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace oddsgeom
