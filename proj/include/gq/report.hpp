#pragma once

#include <string>
#include <vector>

#include "gq/graded_poly.hpp"
#include "gq/tensor.hpp"

namespace gq {

struct Residual {
  std::string name;
  std::string value;  // canonical print, "0" when zero
  bool zero = true;
  bool informational = false;  // reported but not part of the verdict
};

struct CheckRecord {
  std::string check;
  std::string anchor;  // short label of the identity being checked
  std::vector<Residual> residuals;
  std::vector<std::pair<std::string, std::string>> info;
  std::string verdict;  // empty means derived from residuals
  double wall_ms = 0;

  CheckRecord& add(std::string name, const Tensor& t, bool informational = false);
  CheckRecord& add(std::string name, const GradedPoly& p, bool informational = false);
  CheckRecord& add(std::string name, const BaseCoeff& c, bool informational = false);
  CheckRecord& note(std::string key, std::string value);
  bool pass() const;
  std::string verdict_text() const { return verdict.empty() ? (pass() ? "pass" : "fail") : verdict; }
};

struct Report {
  std::vector<CheckRecord> records;
  bool pass() const;
};

}  // namespace gq
