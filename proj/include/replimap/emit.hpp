#pragma once

#include <string>
#include <vector>

#include "replimap/horseshoe.hpp"

namespace replimap {

// Shortest decimal string that round-trips to the same binary64
// (std::to_chars general form).
std::string format_double(double v);

// Minimal CSV document: optional "# config: ..." provenance comment,
// header row, data rows. All floats preformatted by the caller.
struct CsvDoc {
  std::string config;  // emitted as "# config: <...>" when non-empty
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

// Certificate JSON with keys in declared schema order (see README).
std::string certificate_json(const HorseshoeCertificate& c, int indent = 2);

}  // namespace replimap
