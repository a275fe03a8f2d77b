#pragma once

// Pass/fail reporting for inequality and identity checks.  Library code only
// records outcomes; callers (harness, CLI, tests) decide what a failure means.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace opweak {

struct CheckItem {
  std::string name;     // which identity/inequality was checked
  bool pass = false;
  double observed = 0.0;  // left-hand side / residual / ratio, as applicable
  double limit = 0.0;     // right-hand side / tolerance
  std::string detail;     // failure context (index, instance dump, ...)
};

struct CheckReport {
  std::vector<CheckItem> items;

  void add(std::string name, bool pass, double observed = 0.0, double limit = 0.0,
           std::string detail = std::string()) {
    items.push_back(CheckItem{std::move(name), pass, observed, limit, std::move(detail)});
  }
  void merge(const CheckReport& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
  }
  bool all_pass() const {
    for (const CheckItem& it : items)
      if (!it.pass) return false;
    return true;
  }
  size_t failure_count() const {
    size_t n = 0;
    for (const CheckItem& it : items)
      if (!it.pass) ++n;
    return n;
  }
  const CheckItem* first_failure() const {
    for (const CheckItem& it : items)
      if (!it.pass) return &it;
    return nullptr;
  }
};

}  // namespace opweak
