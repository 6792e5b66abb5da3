#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "rrwoc/error.hpp"

namespace rrwoc::cli {
namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, path.string() + ":" + std::to_string(line) + ": " + what);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(const std::string& field) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) return std::nullopt;
  return value;
}

struct CsvTable {
  std::optional<std::vector<std::string>> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (first_row) {
      first_row = false;
      width = fields.size();
      const bool numeric = std::all_of(fields.begin(), fields.end(),
                                       [](const std::string& f) { return parse_number(f).has_value(); });
      if (!numeric) {
        table.header = fields;
        continue;
      }
    }
    if (fields.size() != width) {
      fail(path, line_no,
           "expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) fail(path, line_no, "field " + std::to_string(c + 1) + " is not a number: '" + fields[c] + "'");
      if (!std::isfinite(*v)) fail(path, line_no, "field " + std::to_string(c + 1) + " is not finite");
      row.push_back(*v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) fail(path, line_no, "no data rows");
  return table;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t skip_col) {
  const std::size_t width = rows.front().size() - (skip_col < rows.front().size() ? 1 : 0);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Eigen::Index c_out = 0;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c == skip_col) continue;
      out(static_cast<Eigen::Index>(r), c_out++) = rows[r][c];
    }
  }
  return out;
}

void check_margins(const std::filesystem::path& path, const std::vector<double>& margins,
                   std::size_t first_line) {
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (!(margins[i] >= 0.0) || !std::isfinite(margins[i])) {
      fail(path, first_line + i, "margin must be finite and nonnegative");
    }
  }
}

Cloud read_cloud_csv(const std::filesystem::path& path, const std::optional<std::string>& margin_field) {
  CsvTable table = read_csv(path);
  std::size_t margin_col = static_cast<std::size_t>(-1);
  if (margin_field) {
    if (!table.header) fail(path, 1, "margin column '" + *margin_field + "' needs a header row");
    const auto it = std::find(table.header->begin(), table.header->end(), *margin_field);
    if (it == table.header->end()) fail(path, 1, "no column named '" + *margin_field + "'");
    margin_col = static_cast<std::size_t>(it - table.header->begin());
  }
  if (table.rows.front().size() == (margin_field ? 1u : 0u)) fail(path, 1, "no coordinate columns");

  Cloud cloud{PointSet(to_matrix(table.rows, margin_col)), std::nullopt};
  if (margin_field) {
    std::vector<double> margins;
    for (const auto& row : table.rows) margins.push_back(row[margin_col]);
    check_margins(path, margins, table.header ? 2 : 1);
    cloud.margins = std::move(margins);
  }
  return cloud;
}

Cloud read_cloud_json(const std::filesystem::path& path, const std::optional<std::string>& margin_field) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": expected an object with a \"points\" array");
  }
  const auto& points = doc["points"];
  if (points.empty()) throw Error(ErrorCode::InvalidInput, path.string() + ": no points");
  std::size_t dim = 0;
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_unsigned()) {
      throw Error(ErrorCode::InvalidInput, path.string() + ": \"dim\" must be a positive integer");
    }
    dim = doc["dim"].get<std::size_t>();
  } else {
    dim = points[0].is_array() ? points[0].size() : 1;
  }
  if (dim == 0) throw Error(ErrorCode::InvalidInput, path.string() + ": \"dim\" must be positive");

  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < points.size(); ++r) {
    const auto& p = points[r];
    const std::string where = path.string() + ": point " + std::to_string(r);
    if (p.is_number() && dim == 1) {
      m(static_cast<Eigen::Index>(r), 0) = p.get<double>();
      continue;
    }
    if (!p.is_array() || p.size() != dim) {
      throw Error(ErrorCode::InvalidInput, where + " must have " + std::to_string(dim) + " coordinates");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!p[c].is_number()) throw Error(ErrorCode::InvalidInput, where + " has a non-numeric coordinate");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p[c].get<double>();
    }
  }

  Cloud cloud{PointSet(std::move(m)), std::nullopt};
  if (margin_field) {
    if (!doc.contains(*margin_field) || !doc[*margin_field].is_array() ||
        doc[*margin_field].size() != points.size()) {
      throw Error(ErrorCode::InvalidInput, path.string() + ": field \"" + *margin_field +
                                               "\" must be an array with one margin per point");
    }
    std::vector<double> margins;
    for (const auto& v : doc[*margin_field]) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidInput, path.string() + ": non-numeric margin");
      margins.push_back(v.get<double>());
    }
    for (double v : margins) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::InvalidInput, path.string() + ": margins must be finite and nonnegative");
      }
    }
    cloud.margins = std::move(margins);
  }
  return cloud;
}

bool looks_like_json(const std::filesystem::path& path) {
  if (path.extension() == ".json") return true;
  std::ifstream in(path, std::ios::binary);
  char c = 0;
  while (in.get(c)) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

}  // namespace

Cloud read_cloud(const std::filesystem::path& path, const std::optional<std::string>& margin_field) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  try {
    return looks_like_json(path) ? read_cloud_json(path, margin_field)
                                 : read_cloud_csv(path, margin_field);
  } catch (const Error& e) {
    // Point-set validation errors do not know the file name.
    const std::string what = e.what();
    if (what.find(path.string()) != std::string::npos) throw;
    throw Error(e.code(), path.string() + ": " + what);
  }
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  const CsvTable table = read_csv(path);
  return to_matrix(table.rows, static_cast<std::size_t>(-1));
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string points_csv(const Eigen::MatrixXd& points) {
  std::string out;
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    out += (c ? ",x" : "x") + std::to_string(c);
  }
  out += '\n';
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
      if (c) out += ',';
      out += format_double(points(r, c));
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidInput, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::InvalidInput, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace rrwoc::cli
