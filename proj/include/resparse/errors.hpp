#pragma once

#include <stdexcept>
#include <string>

namespace resparse {

// Base for all library errors. Subclasses exist so callers can catch a
// specific failure mode; the what() string carries the details.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};

class VertexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class TreeDoesNotSpan : public Error {
 public:
  using Error::Error;
};

class TreeNotSubgraph : public Error {
 public:
  using Error::Error;
};

class NonPositiveProbability : public Error {
 public:
  using Error::Error;
};

class SubgraphMismatch : public Error {
 public:
  using Error::Error;
};

class NotUnweighted : public Error {
 public:
  using Error::Error;
};

class DenseTooLarge : public Error {
 public:
  using Error::Error;
};

class VertexSetMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroDegree : public Error {
 public:
  using Error::Error;
};

// Iterative solve gave up; carries the residual it reached.
class MaxIterationsExceeded : public Error {
 public:
  MaxIterationsExceeded(const std::string& msg, int iterations, double residual)
      : Error(msg), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

// Input file could not be parsed; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = 0) : Error(msg), line(line) {}
  int line;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace resparse
