#pragma once

#include <string>
#include <vector>

namespace dopt {

enum class IssueKind { Structural, Law };

struct Issue {
  IssueKind kind;
  std::string law;     // short law identifier, e.g. "left-unit", "pentagon"
  std::string detail;  // the failing instance
};

/// Ordered list of failures produced by a validator. Empty means valid.
class ValidationReport {
 public:
  void structural(std::string law, std::string detail) {
    issues_.push_back({IssueKind::Structural, std::move(law), std::move(detail)});
  }
  void law(std::string law, std::string detail) {
    issues_.push_back({IssueKind::Law, std::move(law), std::move(detail)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& i : other.issues_)
      issues_.push_back({i.kind, i.law, prefix.empty() ? i.detail : prefix + ": " + i.detail});
  }

  bool ok() const { return issues_.empty(); }
  bool has_structural() const {
    for (const auto& i : issues_)
      if (i.kind == IssueKind::Structural) return true;
    return false;
  }
  bool mentions(const std::string& law) const {
    for (const auto& i : issues_)
      if (i.law == law) return true;
    return false;
  }
  const std::vector<Issue>& issues() const { return issues_; }
  std::size_t size() const { return issues_.size(); }

 private:
  std::vector<Issue> issues_;
};

}  // namespace dopt
