#pragma once

// Numeric acceptance criteria A1..A12, shared by `mixphase verify` and the
// acceptance test binary.

#include <cstdint>
#include <string>
#include <vector>

namespace mixphase::app {

struct CriterionInfo {
  std::string id;    // "A1"
  std::string slug;  // "offdiag-closed"
  std::string title;
};

struct CriterionResult {
  CriterionInfo info;
  bool passed = false;
  double measured = 0.0;   // worst observed deviation (or criterion-specific statistic)
  double threshold = 0.0;  // pass bound for `measured`
  std::string detail;
};

/// Deliberate corruptions used to prove the checks can fail.
enum class Canary { None, OffdiagClosedSign, DiagClosedPhaseSign };

struct VerifyOptions {
  std::uint64_t seed = 20021;
  /// Criterion ids or slugs; empty runs everything.
  std::vector<std::string> only;
  Canary canary = Canary::None;
};

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool all_passed() const;
};

const std::vector<CriterionInfo>& criteria();

/// Throws std::invalid_argument for an unknown id or slug in `only`.
VerifyReport run_verify(const VerifyOptions& options);

/// "[PASS] A1 offdiag-closed  measured=... threshold=...  detail".
std::string format_line(const CriterionResult& result);

}  // namespace mixphase::app
