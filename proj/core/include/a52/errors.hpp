#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace a52 {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NormalizationViolation : public Error {
 public:
  using Error::Error;
};

// The Hamiltonian-chart field (and anything built on it) divides by T.
class SingularTime : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// reduce_to_qp on a point with f3 != f0 + f1 - 1.
class OffLevelSet : public Error {
 public:
  using Error::Error;
};

class UnspecifiedBracket : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A birational map was evaluated on its pole divisor.
class PoleHit : public Error {
 public:
  PoleHit(std::string divisor, std::size_t step = 0)
      : Error("pole: " + divisor + " = 0"), divisor_(std::move(divisor)), step_(step) {}

  const std::string& divisor() const noexcept { return divisor_; }
  // Index of the failing generator inside a word; 0 for single generators.
  std::size_t step() const noexcept { return step_; }

 private:
  std::string divisor_;
  std::size_t step_;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class StepUnderflow : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

class MaxStepsExceeded : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

}  // namespace a52
