#pragma once
// Randomized property checks. Every check uses a fixed seed, so runs are reproducible.

#include <functional>
#include <string>
#include <vector>

namespace props {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Property {
  std::string name;
  std::function<PropertyResult()> run;
};

const std::vector<Property>& all_properties();

}  // namespace props
