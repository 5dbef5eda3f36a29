// Error types shared by the library and the command-line front end.
//
// InputError and its children mean "the caller's data is outside the
// operation's domain" (bad file, bad expression, map of the wrong shape);
// the CLI reports them on stderr and exits 2. ResourceLimit means a
// configured ceiling was hit mid-computation; the CLI exits 3 for it.
// Genuine internal invariant violations use std::logic_error and exit 70.
#pragma once

#include <stdexcept>
#include <string>

namespace polyinv {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical or syntactic failure in a map file or expression. Positions are
// 1-based; column points at the first offending character.
struct ParseError : InputError {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& message)
      : InputError("line " + std::to_string(line_) + ", column " +
                   std::to_string(column_) + ": " + message),
        line(line_),
        column(column_) {}
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};

// A map handed to an operation that requires the shape "identity plus
// higher-order part" has a component violating it. `component` is 0-based.
struct NotIdPlusH : InputError {
  int component;
  NotIdPlusH(int component_, const std::string& message)
      : InputError(message), component(component_) {}
};

struct SingularLinearPart : InputError {
  using InputError::InputError;
};

struct NotNilpotentOfIndexTwo : InputError {
  using InputError::InputError;
};

struct UnboundParameter : InputError {
  std::string name;
  explicit UnboundParameter(const std::string& name_)
      : InputError("parameter '" + name_ + "' has no bound value"), name(name_) {}
};

struct DivisionByZeroParameter : InputError {
  std::string name;  // empty when the denominator had no parameter at all
  explicit DivisionByZeroParameter(const std::string& name_)
      : InputError(name_.empty()
                       ? std::string("denominator evaluates to zero")
                       : "denominator evaluates to zero (parameter '" + name_ + "')"),
        name(name_) {}
};

// A computation grew past the configured term ceiling.
struct ResourceLimit : std::runtime_error {
  std::size_t limit;
  std::size_t reached;
  ResourceLimit(std::size_t limit_, std::size_t reached_)
      : std::runtime_error("term budget exceeded: " + std::to_string(reached_) +
                           " terms against a limit of " + std::to_string(limit_)),
        limit(limit_),
        reached(reached_) {}
};

}  // namespace polyinv
