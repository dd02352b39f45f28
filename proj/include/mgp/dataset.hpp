#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace mgp {

// Headered numeric CSV held column-major.
struct Table {
  std::vector<std::string> header;
  Eigen::MatrixXd values;  // rows x header.size()

  // Throws DataError naming the missing column.
  int column(const std::string& name) const;
};

// Throws DataError with the 1-based line and column of the first bad field.
Table read_csv(const std::string& path);
Table parse_csv(const std::string& text, const std::string& source = "<string>");

void write_csv(const std::string& path, const Table& table);
std::string format_csv(const Table& table);

// Shortest text that reads back to the same double.
std::string format_double(double value);

// Features and target split out of a table.
struct Dataset {
  std::vector<std::string> feature_names;
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

// `features` empty means every column except the target.
Dataset to_dataset(const Table& table, const std::string& target,
                   const std::vector<std::string>& features = {});

// Selects the named columns in order.
Eigen::MatrixXd select_columns(const Table& table, const std::vector<std::string>& names);

}  // namespace mgp
