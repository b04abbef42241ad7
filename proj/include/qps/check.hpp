#pragma once

#include <string>
#include <vector>

namespace qps {

// One verified identity: failures are data, not exceptions.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
  }
  void merge(const CheckReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failures() const {
    int f = 0;
    for (const auto& c : checks)
      if (!c.pass) ++f;
    return f;
  }
};

}  // namespace qps
