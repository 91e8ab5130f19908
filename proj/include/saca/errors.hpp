#pragma once

#include <stdexcept>
#include <string>

namespace saca {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad shapes, non-finite values, parse failures).
class InputError : public Error {
 public:
  using Error::Error;
};

// Every nearest-neighbor distance is zero, so no distance unit can be derived.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// Every point fell on the sparse side of the selectivity rule.
class DecreaseCError : public Error {
 public:
  DecreaseCError() : Error("Decrease C") {}
  explicit DecreaseCError(const std::string& detail) : Error("Decrease C: " + detail) {}
};

// A validity index has no defined value for the given labelling (e.g. a single cluster).
class MetricUndefinedError : public Error {
 public:
  using Error::Error;
};

}  // namespace saca
