#pragma once

// Property suite behind `verify`: every check runs at N <= 16 against the
// dense oracle or a closed form. Output depends only on the seed; no timings.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlsplit/splitting.hpp"

namespace nlsplit {

struct VerifyOptions {
  std::uint64_t seed = 1;
  FaultInjection fault{};
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // bound it is compared with
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  // One row per check: name, PASS/FAIL, value, threshold, detail.
  void write_table(std::ostream& os) const;
};

VerifyReport run_verify(const VerifyOptions& options = {});

}  // namespace nlsplit
