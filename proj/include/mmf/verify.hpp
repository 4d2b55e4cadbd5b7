#pragma once

#include <string>
#include <vector>

namespace mmf {

/// quick shrinks the Monte Carlo sizes; full runs every criterion at its
/// stated size and tolerance.
enum class Suite { quick, full };

Suite parse_suite(const std::string& name);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;           // numeric check passed and runtime within budget
  bool within_budget = false;
  double worst = 0.0;          // worst observed error or statistic
  double tolerance = 0.0;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

inline constexpr int kCriterionCount = 13;

/// Runs acceptance criterion id (1..13). Numerical exceptions are caught
/// and reported as a failure with their message.
CriterionResult run_criterion(int id, Suite suite = Suite::full);
std::vector<CriterionResult> run_suite(Suite suite);

/// One line per criterion: "[PASS] 7 simulation law ... (1.2 s / 300 s)".
std::string format_result(const CriterionResult& r);
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace mmf
