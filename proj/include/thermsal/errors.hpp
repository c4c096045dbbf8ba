#pragma once

#include <stdexcept>
#include <string>

namespace thermsal {

// Common base so callers can catch everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyGroundTruth : public Error {
 public:
  using Error::Error;
};

class KeyMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyCurve : public Error {
 public:
  using Error::Error;
};

}  // namespace thermsal
