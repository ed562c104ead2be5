#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace erm {

// Base of every error the library throws. Callers that only need a message
// catch this; the CLI maps the concrete type onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad indices, non-positive conductances, wrong lengths,
// parameters outside a family's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Text parsing failure; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

// A constraint solver could not produce a positive conductance.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  // pivot is 1-based, matching how factorization steps are usually counted.
  NotPositiveDefinite(std::size_t pivot, double value);
  std::size_t pivot() const { return pivot_; }
  double value() const { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(int sweeps, double off_diagonal_norm);
  int sweeps() const { return sweeps_; }
  double off_diagonal_norm() const { return off_norm_; }

 private:
  int sweeps_;
  double off_norm_;
};

}  // namespace erm
