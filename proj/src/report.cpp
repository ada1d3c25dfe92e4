#include "envelope/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>

namespace envelope::report {

namespace {

void flatten_into(const Record& r, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (r.is_object()) {
    for (auto it = r.begin(); it != r.end(); ++it)
      flatten_into(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (r.is_array()) {
    for (std::size_t i = 0; i < r.size(); ++i)
      flatten_into(r[i], prefix + "." + std::to_string(i), out);
  } else if (r.is_string()) {
    out.emplace_back(prefix, r.get<std::string>());
  } else {
    out.emplace_back(prefix, r.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

Record number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::vector<std::pair<std::string, std::string>> flatten(const Record& record) {
  std::vector<std::pair<std::string, std::string>> out;
  flatten_into(record, "", out);
  return out;
}

void write_json(const Record& record, std::ostream& out) { out << record.dump() << '\n'; }

void CsvWriter::write(const Record& record) {
  const auto flat = flatten(record);
  std::vector<std::string> keys;
  keys.reserve(flat.size());
  for (const auto& kv : flat) keys.push_back(kv.first);
  if (keys != header_) {
    header_ = keys;
    for (std::size_t i = 0; i < keys.size(); ++i) out_ << (i ? "," : "") << csv_field(keys[i]);
    out_ << '\n';
  }
  for (std::size_t i = 0; i < flat.size(); ++i) out_ << (i ? "," : "") << csv_field(flat[i].second);
  out_ << '\n';
}

void CsvWriter::write_all(const std::vector<Record>& records) {
  std::vector<std::vector<std::pair<std::string, std::string>>> flats;
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> column;
  for (const auto& r : records) {
    flats.push_back(flatten(r));
    for (const auto& kv : flats.back())
      if (column.emplace(kv.first, keys.size()).second) keys.push_back(kv.first);
  }
  if (keys.empty()) return;
  header_ = keys;
  for (std::size_t i = 0; i < keys.size(); ++i) out_ << (i ? "," : "") << csv_field(keys[i]);
  out_ << '\n';
  for (const auto& flat : flats) {
    std::vector<std::string> cells(keys.size());
    for (const auto& kv : flat) cells[column[kv.first]] = kv.second;
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << (cells[i].empty() ? "" : csv_field(cells[i]));
    out_ << '\n';
  }
}

void write_pretty(const Record& record, std::ostream& out) {
  const auto flat = flatten(record);
  std::size_t width = 0;
  for (const auto& kv : flat) width = std::max(width, kv.first.size());
  for (const auto& kv : flat)
    out << kv.first << std::string(width - kv.first.size(), ' ') << " : " << kv.second << '\n';
}

void write_columns(const std::vector<std::vector<std::pair<std::string, std::string>>>& rows,
                   std::ostream& out) {
  if (rows.empty()) return;
  const auto& head = rows.front();
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) width[c] = head[c].first.size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], r[c].second.size());
  auto cell = [&](const std::string& s, std::size_t c) {
    out << (c ? "  " : "") << s << std::string(width[c] - std::min(width[c], s.size()), ' ');
  };
  for (std::size_t c = 0; c < head.size(); ++c) cell(head[c].first, c);
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) cell(r[c].second, c);
    out << '\n';
  }
}

}  // namespace envelope::report
