#pragma once

#include <stdexcept>
#include <string>

namespace wavesym {

enum class ErrorKind {
  MultiplePoint,
  OutOfDomain,
  DegenerateField,
  RankZero,
  LiftFailure,
  ZeroOnVertex,
  OutOfRange,
  NotBiaxial,
  GluingMismatch,
  NotClosed,
  NotConnected,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Validation failures map to CLI exit code 2, numerical ones to 3.
  bool is_validation() const noexcept {
    return kind_ == ErrorKind::OutOfRange || kind_ == ErrorKind::InvalidArgument ||
           kind_ == ErrorKind::OutOfDomain || kind_ == ErrorKind::NotBiaxial;
  }

 private:
  ErrorKind kind_;
};

}  // namespace wavesym
