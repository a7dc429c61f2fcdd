#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace poro {

const char* report_schema_version();

struct CheckEntry {
  std::string name;
  std::string ref;  // stable tag of the checked inequality
  double value = 0.0;
  double bound = 0.0;
  bool pass = true;
};

// JSON report envelope: {schema_version, config, results:[...]}.
struct Report {
  nlohmann::json config;
  std::vector<CheckEntry> results;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

std::string csv_row(const std::vector<std::string>& cells);
std::string format_double(double v);

void write_file(const std::string& path, const std::string& content);

}  // namespace poro
