#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mol {

/// Malformed textual input. `position` is a 0-based byte offset into the
/// parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Configuration schema violation; `path` names the offending field,
/// e.g. "orbit_families[2].template".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Operands built over different alphabets, bases or truncation orders.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (Hall basis size, class cap) would be exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated germ arithmetic cannot certify the requested statement.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by a caller (wrong degree, empty word, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed. Always an implementation bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mol
