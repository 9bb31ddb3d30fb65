#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qdual {

/// Outcome of one named check with human-readable residual lines.
struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string n) : name(std::move(n)) {}  // NOLINT(google-explicit-constructor)

  std::string name;
  bool pass = true;
  std::vector<std::string> residuals;

  void fail(std::string line) {
    pass = false;
    if (residuals.size() < kMaxResiduals) residuals.push_back(std::move(line));
  }
  static constexpr std::size_t kMaxResiduals = 50;
};

struct Report {
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
  std::string summary() const;
};

}  // namespace qdual
