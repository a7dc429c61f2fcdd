#include "poro/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace poro {

const char* report_schema_version() { return "1.0.0"; }

bool Report::all_pass() const {
  for (const auto& e : results)
    if (!e.pass) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = report_schema_version();
  j["config"] = config;
  j["results"] = nlohmann::json::array();
  for (const auto& e : results) {
    j["results"].push_back({{"name", e.name},
                            {"paper_ref", e.ref},
                            {"value", e.value},
                            {"bound", e.bound},
                            {"pass", e.pass}});
  }
  return j;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
}

}  // namespace poro
