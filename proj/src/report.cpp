#include "gq/report.hpp"

#include <algorithm>

namespace gq {

CheckRecord& CheckRecord::add(std::string name, const Tensor& t, bool informational) {
  residuals.push_back(Residual{std::move(name), t.str(), t.is_zero(), informational});
  return *this;
}

CheckRecord& CheckRecord::add(std::string name, const GradedPoly& p, bool informational) {
  residuals.push_back(Residual{std::move(name), p.str(), p.is_zero(), informational});
  return *this;
}

CheckRecord& CheckRecord::add(std::string name, const BaseCoeff& c, bool informational) {
  residuals.push_back(Residual{std::move(name), c.str(), c.is_zero(), informational});
  return *this;
}

CheckRecord& CheckRecord::note(std::string key, std::string value) {
  info.emplace_back(std::move(key), std::move(value));
  return *this;
}

bool CheckRecord::pass() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const Residual& r) { return r.zero || r.informational; });
}

bool Report::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass(); });
}

}  // namespace gq
