#include "ricomp/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ricomp/errors.hpp"
#include "ricomp/io.hpp"
#include "ricomp/specfun.hpp"

namespace ricomp::report {

const char* to_string(Format f) noexcept {
  switch (f) {
    case Format::kCsv: return "csv";
    case Format::kTsv: return "tsv";
    case Format::kJson: return "json";
  }
  return "?";
}

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::kCsv;
  if (s == "tsv") return Format::kTsv;
  if (s == "json") return Format::kJson;
  throw DomainError("unknown format '" + std::string(s) + "' (expected csv, tsv or json)");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw DomainError("table row has " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return io::format_number(*d);
  return std::to_string(std::get<long long>(c));
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string render(const Table& table, Format format) {
  if (format == Format::kJson) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const Cell& cell = row[c];
        if (const auto* s = std::get_if<std::string>(&cell)) {
          obj[table.columns[c]] = *s;
        } else if (const auto* d = std::get_if<double>(&cell)) {
          if (std::isfinite(*d)) {
            obj[table.columns[c]] = *d;
          } else {
            obj[table.columns[c]] = nullptr;
          }
        } else {
          obj[table.columns[c]] = std::get<long long>(cell);
        }
      }
      rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
  }

  const char sep = format == Format::kCsv ? ',' : '\t';
  auto field = [&](const std::string& s) { return format == Format::kCsv ? quote_csv(s) : s; };
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += sep;
    out += field(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += sep;
      out += field(cell_text(row[c]));
    }
    out += '\n';
  }
  return out;
}

std::vector<ProbPoint> probability_plot(std::span<const double> residuals, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("probability_plot: scale must be positive");
  std::vector<double> z(residuals.begin(), residuals.end());
  for (double& v : z) v /= scale;
  std::sort(z.begin(), z.end());
  const auto n = static_cast<double>(z.size());
  std::vector<ProbPoint> pts(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double prob = (static_cast<double>(i) + 0.5) / n;
    pts[i] = {i + 1, prob, specfun::normal_quantile(prob), z[i]};
  }
  return pts;
}

Table probability_table(std::span<const ProbPoint> points) {
  Table t{{"rank", "probability", "normal_quantile", "std_residual"}, {}};
  for (const auto& p : points)
    t.add_row({static_cast<long long>(p.rank), p.probability, p.quantile, p.residual});
  return t;
}

std::string probability_svg(std::span<const ProbPoint> points, std::string_view title) {
  constexpr double W = 480, H = 400, L = 60, R = 20, T = 40, B = 50;
  double lo = -1, hi = 1;
  for (const auto& p : points) {
    lo = std::min({lo, p.quantile, p.residual});
    hi = std::max({hi, p.quantile, p.residual});
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto sx = [&](double v) { return L + (v - lo) / (hi - lo) * (W - L - R); };
  auto sy = [&](double v) { return H - B - (v - lo) / (hi - lo) * (H - T - B); };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << title << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
     << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\""
     << sy(hi) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& p : points) {
    os << "<circle cx=\"" << sx(p.quantile) << "\" cy=\"" << sy(p.residual)
       << "\" r=\"3\" fill=\"none\" stroke=\"steelblue\"/>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        "Standard normal quantile</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 " << (T + H - B) / 2
     << ")\">Standardized residual</text>\n";
  os << "</svg>\n";
  return os.str();
}

WrittenFiles emit_report(const Report& report, const std::filesystem::path& dir,
                         std::string_view stamp, Format format) {
  if (report.table.empty()) throw DataError("no results to report");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error("cannot create output directory '" + dir.string() + "'");
  }
  const std::string base = report.command + "_" + std::string(stamp);
  const std::string ext = to_string(format);

  WrittenFiles files;
  files.table = dir / (base + "." + ext);
  write_file(files.table, render(report.table, format));
  files.summary = dir / "summary.txt";
  write_file(files.summary, report.summary);
  if (report.plot) {
    files.plot_table = dir / (base + "_probplot." + ext);
    write_file(*files.plot_table, render(*report.plot, format));
  }
  if (!report.plot_svg.empty()) {
    files.plot_svg = dir / (base + "_probplot.svg");
    write_file(*files.plot_svg, report.plot_svg);
  }
  return files;
}

std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  localtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%d_%H%M%S", &tm);
  return buf;
}

}  // namespace ricomp::report
