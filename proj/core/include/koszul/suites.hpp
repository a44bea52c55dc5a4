#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct SuiteOptions {
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::size_t trials = 0;  // 0 selects the suite's default
};

// strassen: |det(p=1 flattening)| = |det([X1,X2])| with X0 = Id (30 trials).
// p2: flattening pattern vs the printed commutator matrix, and
//     |det(p=2 flattening)| = |det(printed commutator matrix)| (10 trials).
// p3: |det(p=3 flattening)| = |det(qqbar)| (3 trials) and the structure claims.
// remark-imp: structure claims for p = 2, 3, 4.
// detlemmas: block-determinant and rank-update identities (50 trials each).
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

std::vector<std::string> suite_names();

}  // namespace koszul
