#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fedfraud/data/dataset.hpp"

namespace fedfraud {

/// Column selection for CSV ingestion. The defaults match the public ULB
/// credit-card file (Time, V1..V28, Amount, Class).
struct CsvSchema {
  std::string label_column = "Class";
  /// Empty selects every column other than the label, in file order.
  std::vector<std::string> feature_columns;
};

/// Reads a comma-separated file with a header row. Fields may be quoted.
/// Throws IoError, SchemaError or ParseError (with 1-based line number).
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Same as load_csv for in-memory text; `source` names the input in errors.
Dataset parse_csv(std::string_view text, const CsvSchema& schema = {},
                  std::string_view source = "<memory>");

/// Writes features then the label column. Values use the shortest
/// representation that round-trips, so output bytes are reproducible.
void write_csv(const std::filesystem::path& path, const Dataset& ds,
               std::string_view label_column = "Class");

std::string format_double(double value);

}  // namespace fedfraud
