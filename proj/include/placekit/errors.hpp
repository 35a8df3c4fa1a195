#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace placekit {

// A single schema/semantic problem found while validating a document,
// with a JSON-pointer-ish path to the offending element.
struct ValidationIssue {
  std::string path;
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues)
      : std::runtime_error(format(issues)), issues_(std::move(issues)) {}
  ValidationError(std::string path, std::string message)
      : ValidationError(std::vector<ValidationIssue>{
            {std::move(path), std::move(message)}}) {}

  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  static std::string format(const std::vector<ValidationIssue>& issues) {
    std::string out = "validation failed:";
    for (const auto& i : issues) {
      out += "\n  " + i.path + ": " + i.message;
    }
    return out;
  }
  std::vector<ValidationIssue> issues_;
};

// Link lookups that the network model forbids (user-user, helper-helper,
// or an explicitly null table entry).
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a metric (e.g. bw <= 0).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No feasible assignment exists for some service component after
// exhausting all hosts and versions.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario generation could not satisfy its post-conditions.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace placekit
