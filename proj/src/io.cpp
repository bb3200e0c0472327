#include "ricomp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ricomp/errors.hpp"

namespace ricomp::io {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(b, e - b + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column,
                  std::string_view source) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    std::ostringstream os;
    os << source << ": row " << row << ", column '" << column << "': "
       << (cell.empty() ? "blank cell" : "non-numeric value '" + cell + "'");
    throw DataError(os.str());
  }
  return v;
}

}  // namespace

Dataset parse_csv(std::istream& in, std::string_view response, std::string_view source) {
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) {
    throw DataError(std::string(source) + ": missing header row");
  }
  const std::vector<std::string> header = split(line);
  std::size_t response_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == response) response_col = c;
  if (response_col == header.size()) {
    throw DataError(std::string(source) + ": no column named '" + std::string(response) + "'");
  }

  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != response_col) names.push_back(header[c]);

  std::vector<double> predictors;
  Vector y;
  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw DataError(std::string(source) + ": row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double v = parse_cell(cells[c], row, header[c], source);
      if (c == response_col) {
        y.push_back(v);
      } else {
        predictors.push_back(v);
      }
    }
  }

  const std::size_t n = y.size();
  const std::size_t p = names.size() + 1;
  if (n < p) {
    throw DataError(std::string(source) + ": " + std::to_string(n) + " data rows but " +
                    std::to_string(p) + " design columns; need at least as many rows as columns");
  }
  // Built directly: a square design is accepted here and rejected by the fit.
  Dataset d;
  d.intercept = true;
  d.x = Matrix(n, p, 1.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 1; c < p; ++c) d.x(r, c) = predictors[r * (p - 1) + c - 1];
  d.names.reserve(p);
  d.names.emplace_back("(Intercept)");
  for (auto& name : names) d.names.push_back(std::move(name));
  d.y = std::move(y);
  return d;
}

Dataset ingest_csv(const std::filesystem::path& path, std::string_view response) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_csv(in, response, path.string());
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_dataset_csv(std::ostream& out, const Dataset& data, std::string_view response_name) {
  const std::size_t first = data.intercept ? 1 : 0;
  out << response_name;
  for (std::size_t c = first; c < data.p(); ++c) out << ',' << data.names[c];
  out << '\n';
  for (std::size_t r = 0; r < data.n(); ++r) {
    out << format_number(data.y[r]);
    for (std::size_t c = first; c < data.p(); ++c) out << ',' << format_number(data.x(r, c));
    out << '\n';
  }
}

}  // namespace ricomp::io
