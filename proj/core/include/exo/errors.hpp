#pragma once

#include <stdexcept>
#include <string>

namespace exo {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A vector or matrix argument had the wrong size. The message names the
/// expected and actual counts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input value violated a documented precondition (NaN, out-of-range,
/// non-monotonic timestamps, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Home-position calibration samples were too spread out to average.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// A file did not match the expected on-disk format (bad JSON, unknown
/// version, truncation, wrong field types).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure (missing file, unreadable directory, ...).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace exo
