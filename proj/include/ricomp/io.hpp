#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ricomp/mest.hpp"

namespace ricomp::io {

/// Reads a comma-separated file with a header row. The `response` column
/// becomes y; every other column becomes a predictor, in header order, behind
/// a prepended intercept column. Throws DataError naming the row and column of
/// any blank or non-numeric cell.
Dataset ingest_csv(const std::filesystem::path& path, std::string_view response);

/// Same, from a stream; `source` is only used in diagnostics.
Dataset parse_csv(std::istream& in, std::string_view response, std::string_view source = "<stream>");

/// Writes y and the non-intercept predictors as CSV, response column first.
/// Values use the shortest representation that round-trips exactly.
void write_dataset_csv(std::ostream& out, const Dataset& data, std::string_view response_name);

/// Shortest round-trip decimal representation of a double.
std::string format_number(double v);

}  // namespace ricomp::io
