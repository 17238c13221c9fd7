#pragma once

#include <stdexcept>
#include <string>

namespace corrspec {

/// Failure categories surfaced by the library.  The C API maps these
/// one-to-one onto status codes, and the CLI maps them onto exit codes.
enum class ErrorCode {
  Domain,         ///< invalid argument or violated precondition
  Degenerate,     ///< a time series has no usable variation (zero power)
  RankDeficient,  ///< a requested spectral quantity vanishes at tolerance
  Numeric,        ///< an iterative numerical routine failed
  Integrity,      ///< an internal invariant was violated
  Io,             ///< file system or serialization failure
  Config,         ///< invalid configuration document
};

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};

/// Raised when a row of a time-series matrix carries no variation, so it
/// cannot be standardized.  Carries the offending (zero-based) row index.
class DegenerateSeriesError : public Error {
 public:
  DegenerateSeriesError(long row, const std::string& w)
      : Error(ErrorCode::Degenerate, w), row_(row) {}
  long row() const noexcept { return row_; }

 private:
  long row_;
};

class RankDeficientError : public Error {
 public:
  explicit RankDeficientError(const std::string& w)
      : Error(ErrorCode::RankDeficient, w) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& w) : Error(ErrorCode::Numeric, w) {}
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& w)
      : Error(ErrorCode::Integrity, w) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& w) : Error(ErrorCode::Config, w) {}
};

}  // namespace corrspec
