#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcf {

/// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad JSON, bad polynomial, bad flags.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An interval oracle could not certify a decision within its refinement budget.
class NonTerminating : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class UndecidableForOracle : public Error {
 public:
  using Error::Error;
};

/// The last coordinate of a Jacobi step is an integer; the caller has to drop
/// one dimension and continue.
class Interruption : public Error {
 public:
  explicit Interruption(std::size_t index)
      : Error("interruption: last complete quotient is an integer at index " +
              std::to_string(index)),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Carries the first offending index.
class IndexedError : public Error {
 public:
  IndexedError(const std::string& what, std::size_t index)
      : Error(what + " at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class AdmissibilityError : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

class AdmissibilityConflict : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

class HypothesisViolated : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

class RecursionMismatch : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

class PrefixMismatch : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

class ScheduleOverlap : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class DegenerateCubic : public Error {
 public:
  using Error::Error;
};

class RootSelectionAmbiguous : public Error {
 public:
  using Error::Error;
};

class PeriodMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace mcf
