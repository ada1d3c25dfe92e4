#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace envelope::report {

using Record = nlohmann::ordered_json;

/// x rounded to 12 significant digits; non-finite values become null.
Record number(double x);

/// Leaf values of a record under dotted keys, each rendered exactly as in
/// the JSON serialization (strings unquoted).
std::vector<std::pair<std::string, std::string>> flatten(const Record& record);

void write_json(const Record& record, std::ostream& out);

/// Writes a header line whenever the key set differs from the previous row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void write(const Record& record);
  /// One header covering every key in `records`; missing cells are empty.
  void write_all(const std::vector<Record>& records);

 private:
  std::ostream& out_;
  std::vector<std::string> header_;
};

/// One `key : value` line per leaf, keys padded to a common width.
void write_pretty(const Record& record, std::ostream& out);

/// Aligned columns for a list of flat rows sharing one key set.
void write_columns(const std::vector<std::vector<std::pair<std::string, std::string>>>& rows,
                   std::ostream& out);

}  // namespace envelope::report
