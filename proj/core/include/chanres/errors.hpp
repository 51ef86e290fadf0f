#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chanres {

/// Malformed input text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// msc(w) requested for a word that is not channel-compliant.
class UndefinedMsc : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model that parsed but violates a structural invariant.
class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration grew past its configured budget. Never silently truncated.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what, std::size_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// CSM step errors.
class BlockedReceive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSuchTransition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chanres
