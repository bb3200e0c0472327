#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ricomp/linalg.hpp"

namespace ricomp::report {

enum class Format { kCsv, kTsv, kJson };

const char* to_string(Format f) noexcept;
/// Accepts "csv", "tsv", "json"; throws DomainError otherwise.
Format parse_format(std::string_view s);

using Cell = std::variant<std::string, double, long long>;

/// A rectangular result table. Every row has one cell per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool empty() const noexcept { return rows.empty(); }
  void add_row(std::vector<Cell> row);
};

/// Serializes a table. Doubles use the shortest round-trip representation so
/// identical inputs give identical bytes.
std::string render(const Table& table, Format format);

/// One point of a normal probability plot.
struct ProbPoint {
  std::size_t rank = 0;     ///< 1-based position after sorting
  double probability = 0;   ///< plotting position (i - 0.5) / n
  double quantile = 0;      ///< standard normal quantile of `probability`
  double residual = 0;      ///< sorted standardized residual
};

/// Sorted residuals divided by `scale` against normal quantiles.
std::vector<ProbPoint> probability_plot(std::span<const double> residuals, double scale);

Table probability_table(std::span<const ProbPoint> points);

/// Standalone SVG scatter of the points with a reference line y = x.
std::string probability_svg(std::span<const ProbPoint> points, std::string_view title);

/// What a command hands to the writer.
struct Report {
  std::string command;
  Table table;
  std::string summary;
  std::optional<Table> plot;    ///< probability-plot coordinates
  std::string plot_svg;         ///< empty unless a rendering was requested
};

struct WrittenFiles {
  std::filesystem::path table;
  std::filesystem::path summary;
  std::optional<std::filesystem::path> plot_table;
  std::optional<std::filesystem::path> plot_svg;
};

/// Writes `<dir>/<command>_<stamp>.<format>`, `<dir>/summary.txt` and, when
/// present, `<dir>/<command>_<stamp>_probplot.<format>` and `.svg`.
/// Throws DataError for an empty table (nothing is written) and Error when the
/// directory cannot be created or written.
WrittenFiles emit_report(const Report& report, const std::filesystem::path& dir,
                         std::string_view stamp, Format format);

/// Local time as YYYYmmdd_HHMMSS.
std::string timestamp_now();

}  // namespace ricomp::report
