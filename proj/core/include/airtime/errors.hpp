#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace airtime {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Baseline table has no (rate, size) entry; calibrate first.
class MissingEntry : public Error {
 public:
  using Error::Error;
};

class InvalidScenario : public Error {
 public:
  using Error::Error;
};

class DuplicateAssociation : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

class QueueFull : public Error {
 public:
  using Error::Error;
};

class IncompleteTasks : public Error {
 public:
  using Error::Error;
};

class EmptyTrace : public Error {
 public:
  using Error::Error;
};

// Malformed input file. line() is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(std::string origin, std::size_t line, std::string field, const std::string& what)
      : Error(origin + ":" + std::to_string(line) + (field.empty() ? "" : " [" + field + "]") +
              ": " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace airtime
