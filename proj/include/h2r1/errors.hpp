#pragma once

#include <stdexcept>
#include <string>

namespace h2r1 {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation: division by a jet
/// with (near-)zero constant term, sqrt/log of a non-positive value, a chart
/// point outside the chart, a derivative order beyond the truncation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Expression source text failed to parse. The offset is a byte index into
/// the source string and is already part of the message.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// The induced metric fails to be positive definite at a chart point.
class NotSpacelikeError : public Error {
 public:
  NotSpacelikeError(const std::string& what, double u, double v)
      : Error(what + " at (u, v) = (" + std::to_string(u) + ", " +
              std::to_string(v) + ")"),
        u(u), v(v) {}
  double u, v;
};

/// The map fails to be an immersion (coordinate Jacobian rank < 2).
class NotImmersedError : public Error {
 public:
  NotImmersedError(const std::string& what, double u, double v)
      : Error(what + " at (u, v) = (" + std::to_string(u) + ", " +
              std::to_string(v) + ")"),
        u(u), v(v) {}
  double u, v;
};

/// A bracketed root solve found no admissible root.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// Rotational shooting start incompatible with the requested curvature.
class InadmissibleStartError : public Error {
 public:
  using Error::Error;
};

/// A quantity left the numerically trustworthy range.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Surface description file failed to parse or validate.
class SpecFileError : public Error {
 public:
  SpecFileError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line(line) {}
  explicit SpecFileError(const std::string& what) : Error(what), line(0) {}
  int line;
};

}  // namespace h2r1
