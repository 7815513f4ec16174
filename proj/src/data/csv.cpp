#include "fedfraud/data/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace fedfraud {

namespace {

std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvSchema& schema, std::string_view source) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    while (pos < text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  std::string_view line;
  if (!next_line(line)) throw SchemaError(std::string(source) + ": missing header row");
  if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);

  std::vector<std::string> header = split_record(line);
  for (auto& h : header) h = std::string(trim(h));
  std::unordered_map<std::string, std::size_t> column_of;
  for (std::size_t i = 0; i < header.size(); ++i) column_of.emplace(header[i], i);

  auto lookup = [&](const std::string& name) {
    auto it = column_of.find(name);
    if (it == column_of.end()) {
      throw SchemaError(std::string(source) + ": unknown column '" + name + "'");
    }
    return it->second;
  };

  const std::size_t label_idx = lookup(schema.label_column);
  std::vector<std::size_t> feature_idx;
  std::vector<std::string> names;
  if (schema.feature_columns.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i == label_idx) continue;
      feature_idx.push_back(i);
      names.push_back(header[i]);
    }
  } else {
    for (const auto& name : schema.feature_columns) {
      feature_idx.push_back(lookup(name));
      names.push_back(name);
    }
  }

  std::vector<double> values;
  std::vector<int> labels;
  while (next_line(line)) {
    const auto fields = split_record(line);
    if (fields.size() != header.size()) {
      throw ParseError(line_no, "*",
                       "expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    for (std::size_t idx : feature_idx) {
      double v = 0.0;
      if (!parse_number(fields[idx], v)) {
        throw ParseError(line_no, header[idx], "not a finite number: '" + fields[idx] + "'");
      }
      values.push_back(v);
    }
    double y = 0.0;
    if (!parse_number(fields[label_idx], y) || (y != 0.0 && y != 1.0)) {
      throw ParseError(line_no, header[label_idx], "label must be 0 or 1, got '" + fields[label_idx] + "'");
    }
    labels.push_back(static_cast<int>(y));
  }

  const std::size_t n = labels.size();
  return make_dataset(Matrix(n, feature_idx.size(), std::move(values)), std::move(labels),
                      std::move(names));
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return parse_csv(buffer.str(), schema, path.string());
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_csv(const std::filesystem::path& path, const Dataset& ds, std::string_view label_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const auto& name : ds.feature_names) out << name << ',';
  out << label_column << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.features.row(i)) out << format_double(v) << ',';
    out << ds.labels[i] << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace fedfraud
