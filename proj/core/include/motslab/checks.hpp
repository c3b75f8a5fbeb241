#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace motslab {

// One measured quantity against its threshold.
struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct CheckList {
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check* find(const std::string& n) const {
    for (const auto& c : checks)
      if (c.name == n) return &c;
    return nullptr;
  }
  void add(std::string n, double measured, double threshold, bool pass, std::string detail = "") {
    checks.push_back({std::move(n), measured, threshold, pass, std::move(detail)});
  }
};

inline nlohmann::json to_json(const CheckList& l) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : l.checks)
    out.push_back({{"name", c.name}, {"measured", c.measured}, {"threshold", c.threshold},
                   {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

}  // namespace motslab
