#pragma once

#include <stdexcept>
#include <string>

namespace polarcvx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Body violates a representation invariant (origin not interior, unbounded,
// degenerate direction data, ...).
class InvalidBody : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(int expected, int got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)),
        expected_(expected),
        got_(got) {}
  int expected() const noexcept { return expected_; }
  int got() const noexcept { return got_; }

 private:
  int expected_;
  int got_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Sampled functions can only be evaluated at their stored points.
class OffGridQuery : public Error {
 public:
  using Error::Error;
};

class NotIntegrable : public Error {
 public:
  using Error::Error;
};

// Operation has no route for this family (e.g. level sets of a Sampled table).
class Unsupported : public Error {
 public:
  using Error::Error;
};

class DepthExceeded : public Error {
 public:
  explicit DepthExceeded(int depth)
      : Error("MaxOf nesting depth " + std::to_string(depth) + " exceeds the cap of 8") {}
};

}  // namespace polarcvx

namespace polarcvx {

// Malformed function-spec document; the message carries a line/column or a
// field path such as $.body.scale.
class SpecError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace polarcvx
