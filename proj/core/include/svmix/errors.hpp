#pragma once

#include <stdexcept>
#include <string>

namespace svmix {

// Invalid run configuration detected before any sampling starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input series failed validation (non-finite values, unreadable file, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine could not produce a finite result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace svmix
