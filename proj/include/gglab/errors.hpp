#pragma once

#include <stdexcept>
#include <string>

namespace gglab {

/// Malformed user input: unknown symbols, bad files, colliding representatives.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A presentation or parameter set that the requested operation cannot use.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the domain of a metric operation (disconnected points,
/// empty sets, points outside a piece).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (vertices, quadruples, pieces) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& budget_name, std::size_t budget, const std::string& detail)
      : std::runtime_error(budget_name + " budget of " + std::to_string(budget) +
                           " exceeded: " + detail),
        budget_name_(budget_name),
        budget_(budget) {}

  const std::string& budget_name() const noexcept { return budget_name_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::string budget_name_;
  std::size_t budget_;
};

/// Requested operation is outside the exactness boundary (e.g. pullbacks in a
/// non-free group).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gglab
