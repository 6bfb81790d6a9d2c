#pragma once

#include <string>
#include <vector>

namespace irw {

struct OracleCheck {
  std::string name;
  bool passed = false;
  /// Computed values and margins.
  std::string detail;
};

/// Oracle cross-checks of calibration and local-test guarantees, as run by
/// `irw verify`.
std::vector<OracleCheck> oracle_suite();

}  // namespace irw
