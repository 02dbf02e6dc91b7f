#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace candy {

/// Base of every error raised by the library. Callers that only need a
/// diagnostic can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list, configuration or family-spec text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(0, what) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A graph that violates the simple-graph rules or a family with bad parameters.
class InvalidGraphError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("configuration has " + std::to_string(actual) + " entries, graph has " +
              std::to_string(expected) + " vertices") {}
};

class DisconnectedGraphError : public Error {
 public:
  DisconnectedGraphError() : Error("graph is not connected") {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No repeated configuration was found within the round budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t rounds_executed, std::uint64_t max_rounds)
      : Error("no repeated configuration within " + std::to_string(max_rounds) +
              " rounds (executed " + std::to_string(rounds_executed) + ")"),
        rounds_executed_(rounds_executed) {}

  std::uint64_t rounds_executed() const noexcept { return rounds_executed_; }

 private:
  std::uint64_t rounds_executed_;
};

/// Exhaustive enumeration for some candy count would exceed the composition cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::uint64_t candies, std::uint64_t cap)
      : Error("c=" + std::to_string(candies) + ": number of distributions exceeds cap " +
              std::to_string(cap)),
        candies_(candies) {}

  std::uint64_t candies() const noexcept { return candies_; }

 private:
  std::uint64_t candies_;
};

}  // namespace candy
