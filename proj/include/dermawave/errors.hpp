#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dermawave {

// Invalid numeric argument (non-positive frequency, negative distance, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Volume fractions that do not describe a valid mixture.
class CompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A denominator of a mixing or scattering formula vanished.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unknown id, malformed catalog file, or failed catalog validation.
// Validation failures carry every violated field, not just the first.
class CatalogError : public std::runtime_error {
 public:
  explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
  CatalogError(const std::string& what, std::vector<std::string> issues)
      : std::runtime_error(join(what, issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::string& head, const std::vector<std::string>& issues) {
    std::string out = head;
    for (const auto& i : issues) {
      out += "\n  ";
      out += i;
    }
    return out;
  }

  std::vector<std::string> issues_;
};

}  // namespace dermawave
