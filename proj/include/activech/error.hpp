#pragma once

#include <stdexcept>
#include <string>

namespace activech {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent parameters / configuration documents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where a function is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Solver failures (Newton nonconvergence, linear solver breakdown, lost interface).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace activech
