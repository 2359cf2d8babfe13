#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swipe {

/// Precondition violated by a caller-supplied argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed, truncated or version-mismatched serialized data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query fell outside the domain covered by the data (e.g. timestamps).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientOverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pair graph handed to the layout solver does not connect every frame.
class DisconnectedGraphError : public std::runtime_error {
 public:
  DisconnectedGraphError(std::string what, std::vector<std::vector<int>> components)
      : std::runtime_error(std::move(what)), components_(std::move(components)) {}

  const std::vector<std::vector<int>>& components() const noexcept { return components_; }

 private:
  std::vector<std::vector<int>> components_;
};

}  // namespace swipe
