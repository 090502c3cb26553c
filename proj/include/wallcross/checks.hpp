#pragma once

#include <string>
#include <vector>

namespace wallcross {

/// One named verification outcome, as emitted in reports.
struct Check {
  std::string name;
  bool pass = false;
  std::string details;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace wallcross
