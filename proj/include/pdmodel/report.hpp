#pragma once

#include <string>
#include <vector>

namespace pdmodel {

/// One failed check in a diagnostic report.
struct Diagnostic {
  std::string check;
  std::string message;
};

/// Clean iff empty.
using Report = std::vector<Diagnostic>;

inline bool clean(const Report& r) { return r.empty(); }

inline std::string to_string(const Report& r) {
  std::string s;
  for (const auto& d : r) s += d.check + ": " + d.message + "\n";
  return s;
}

}  // namespace pdmodel
