#pragma once

#include <stdexcept>
#include <string>

namespace scarf {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised for states the proofs rule out. Seeing one is a bug.
class InternalError : public Error {
public:
  using Error::Error;
};

class SingularBasis : public Error {
public:
  SingularBasis() : Error("basis submatrix is singular") {}
};

class InfeasibleBasis : public Error {
public:
  explicit InfeasibleBasis(int column)
      : Error("basic value of column " + std::to_string(column + 1) + " is negative"),
        column(column) {}
  int column;
};

class UnboundedDirection : public Error {
public:
  explicit UnboundedDirection(int entering)
      : Error("no basic variable decreases when column " + std::to_string(entering + 1) +
              " enters"),
        entering(entering) {}
  int entering;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class NotOrdinalBasis : public Error {
public:
  explicit NotOrdinalBasis(int witness)
      : Error("column " + std::to_string(witness + 1) + " is not dominated"), witness(witness) {}
  int witness;
};

class DuplicateMinimizer : public Error {
public:
  explicit DuplicateMinimizer(int column)
      : Error("column " + std::to_string(column + 1) + " holds two row minima"), column(column) {}
  int column;
};

class EmptyCandidateSet : public InternalError {
public:
  EmptyCandidateSet() : InternalError("ordinal pivot found no entering column") {}
};

class IterationLimitExceeded : public Error {
public:
  explicit IterationLimitExceeded(long limit)
      : Error("iteration limit " + std::to_string(limit) + " exceeded"), limit(limit) {}
  long limit;
};

class InvariantViolation : public InternalError {
public:
  using InternalError::InternalError;
};

class NoSeparator : public InternalError {
public:
  NoSeparator() : InternalError("ordinal basis has no separator") {}
};

class NoValidCandidate : public InternalError {
public:
  NoValidCandidate() : InternalError("no separator loop or woman-disliked candidate") {}
};

class DegenerateTie : public InternalError {
public:
  explicit DegenerateTie(int iteration)
      : InternalError("degenerate tie in perturbed ratio test at iteration " +
                      std::to_string(iteration)),
        iteration(iteration) {}
  int iteration;
};

class OddK : public Error {
public:
  explicit OddK(int k) : Error("irving-leather family needs even k, got " + std::to_string(k)) {}
};

class TooLarge : public Error {
public:
  using Error::Error;
};

class NotStable : public Error {
public:
  NotStable() : Error("matching is not stable") {}
};

class MalformedMatching : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string &msg)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line), column(column) {}
  int line;
  int column;
};

class InvalidPermutation : public Error {
public:
  InvalidPermutation(const std::string &who, int duplicate)
      : Error(who + " lists " + std::to_string(duplicate + 1) + " twice"), duplicate(duplicate) {}
  int duplicate;
};

} // namespace scarf
