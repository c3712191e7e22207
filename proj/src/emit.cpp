#include "replimap/emit.hpp"

#include <charconv>
#include <nlohmann/json.hpp>

namespace replimap {

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string CsvDoc::str() const {
  std::string out;
  if (!config.empty()) {
    out += "# config: ";
    out += config;
    out += '\n';
  }
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string certificate_json(const HorseshoeCertificate& c, int indent) {
  nlohmann::ordered_json j;
  j["a"] = c.params.a;
  j["b"] = c.params.b;
  j["y_max"] = c.y_max;
  j["y_min"] = c.y_min;
  j["g_min"] = c.g_min;
  j["g_max"] = c.g_max;
  j["y1_minus"] = c.y1_minus;
  j["y1_plus"] = c.y1_plus;
  j["y2_minus"] = c.y2_minus;
  j["y2_plus"] = c.y2_plus;
  j["margin1"] = c.margin1;
  j["margin2"] = c.margin2;
  j["margin3"] = c.margin3;
  j["expansion"] = c.expansion;
  j["valid"] = c.valid;
  j["reflected"] = c.reflected;
  j["first_failing"] = c.first_failing;
  return j.dump(indent) + "\n";
}

}  // namespace replimap
