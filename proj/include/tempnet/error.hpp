#pragma once

#include <stdexcept>
#include <string>

namespace tempnet {

// Base class for all library errors. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user-supplied parameters (model params, fold counts, unreachable
// growth targets, unparsable option strings).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

class UnknownVertex : public Error {
 public:
  using Error::Error;
};

class SelfLoopError : public Error {
 public:
  using Error::Error;
};

// Graph too small / empty for the requested quantity.
class DegenerateGraph : public Error {
 public:
  using Error::Error;
};

// Event list spans zero time or has fewer than two users.
class DegenerateSpan : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tempnet
