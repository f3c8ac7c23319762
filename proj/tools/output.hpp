#pragma once

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace lpcli {

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // svg: column names for the horizontal axis and the plotted series
  std::string x_column;
  std::vector<std::string> y_columns;
  std::string x_label, y_label;
};

std::string number(double v);

std::string render_csv(const Table& t);
std::string render_json(const Table& t);
std::string render_svg(const Table& t);

// temp file in the same directory, then rename; throws IoError
void write_atomic(const std::string& path, const std::string& body);

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace lpcli
