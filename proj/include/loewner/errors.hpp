#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside a function's domain, or at a pole.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Matrix of the wrong order, non-square or asymmetric input.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Inconsistent descriptor or option parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// An eigenvalue left the domain of the function being applied.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class UnknownImplicationError : public Error {
 public:
  using Error::Error;
};

}  // namespace loewner
