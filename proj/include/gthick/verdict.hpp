// Structured accept/reject results shared by every checker.
#ifndef GTHICK_VERDICT_HPP
#define GTHICK_VERDICT_HPP

#include "gthick/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gthick {

struct Violation {
  std::string kind;
  std::vector<std::string> ids;
  std::optional<Point> witness;
  std::string detail;
};

struct Verdict {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool accepted() const { return violations.empty(); }

  void reject(std::string kind, std::vector<std::string> ids = {}, std::string detail = {},
              std::optional<Point> witness = std::nullopt) {
    violations.push_back(Violation{std::move(kind), std::move(ids), std::move(witness), std::move(detail)});
  }

  void merge(const Verdict& other, const std::string& prefix = {}) {
    for (auto v : other.violations) {
      if (!prefix.empty()) v.kind = prefix + v.kind;
      violations.push_back(std::move(v));
    }
    for (const auto& w : other.warnings) warnings.push_back(prefix + w);
  }

  std::string summary() const {
    if (accepted()) return "accepted";
    std::string s = "rejected (" + std::to_string(violations.size()) + " violations): " + violations.front().kind;
    if (!violations.front().detail.empty()) s += " " + violations.front().detail;
    return s;
  }
};

/// Malformed input, as opposed to a well-formed input that is rejected.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or placement ran out of its budget; never a wrong answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gthick

#endif
