#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace malle {

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (wrong degree, non-subgroup, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or closure outgrew its configured cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// A census ran out of its polynomial budget or was interrupted; the work
/// done so far is saved to a resumable checkpoint.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::string checkpoint)
      : Error(what + (checkpoint.empty() ? std::string() : "; resume from " + checkpoint)),
        checkpoint_(std::move(checkpoint)) {}
  const std::string& checkpoint() const noexcept { return checkpoint_; }

 private:
  std::string checkpoint_;
};

/// A mathematical identity that must hold did not; always an implementation bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A text input (descriptor, registry line, cycle) failed to parse.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// The bound engine could not resolve an input exponent.
class UnresolvedDependency : public Error {
 public:
  using Error::Error;
};

}  // namespace malle
