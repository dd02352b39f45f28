#include "mgp/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mgp/errors.hpp"

namespace mgp {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& source, std::size_t line, std::size_t col,
                      const std::string& what) {
  std::ostringstream msg;
  msg << source << ": line " << line;
  if (col > 0) msg << ", column " << col;
  msg << ": " << what;
  throw DataError(msg.str());
}

}  // namespace

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  throw DataError("no column named '" + name + "'");
}

Table parse_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  Table t;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) bad(source, line_no, 0, "missing header");
  for (auto& h : split_line(line)) t.header.push_back(trim(h));
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (t.header[c].empty()) bad(source, line_no, c + 1, "empty column name");
    for (std::size_t d = 0; d < c; ++d) {
      if (t.header[d] == t.header[c]) bad(source, line_no, c + 1, "duplicate column name");
    }
  }
  const std::size_t width = t.header.size();
  std::vector<double> flat;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != width) {
      std::ostringstream msg;
      msg << "expected " << width << " fields, found " << fields.size();
      bad(source, line_no, 0, msg.str());
    }
    for (std::size_t c = 0; c < width; ++c) {
      const std::string f = trim(fields[c]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        bad(source, line_no, c + 1, "'" + f + "' is not a finite number");
      }
      flat.push_back(v);
    }
    ++rows;
  }
  t.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < width; ++c) t.values(r, c) = flat[r * width + c];
  }
  return t;
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (c) out += ',';
    out += t.header[c];
  }
  out += '\n';
  for (Eigen::Index r = 0; r < t.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.values.cols(); ++c) {
      if (c) out += ',';
      out += format_double(t.values(r, c));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << format_csv(table);
}

Eigen::MatrixXd select_columns(const Table& table, const std::vector<std::string>& names) {
  Eigen::MatrixXd x(table.values.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) x.col(i) = table.values.col(table.column(names[i]));
  return x;
}

Dataset to_dataset(const Table& table, const std::string& target,
                   const std::vector<std::string>& features) {
  Dataset d;
  const int t = table.column(target);
  if (features.empty()) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (static_cast<int>(c) != t) d.feature_names.push_back(table.header[c]);
    }
  } else {
    d.feature_names = features;
  }
  if (d.feature_names.empty()) throw DataError("no feature columns besides '" + target + "'");
  if (table.values.rows() == 0) throw DataError("no data rows");
  d.x = select_columns(table, d.feature_names);
  d.y = table.values.col(t);
  return d;
}

}  // namespace mgp
