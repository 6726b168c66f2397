#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpart {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violated a construction invariant (zero direction, empty set, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParallelToPlane : public Error {
 public:
  explicit ParallelToPlane(std::size_t line_index, const std::string& what = {})
      : Error("line " + std::to_string(line_index) + " is parallel to the plane" +
              (what.empty() ? std::string{} : ": " + what)),
        line_index_(line_index) {}
  std::size_t line_index() const noexcept { return line_index_; }

 private:
  std::size_t line_index_;
};

class NoVerticalTransversal : public Error {
 public:
  using Error::Error;
};

class ToleranceNotReached : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// The search budget ran out. Never a proof that no solution exists.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class OnBoundary : public Error {
 public:
  using Error::Error;
};

class NotLimitAntipodal : public Error {
 public:
  explicit NotLimitAntipodal(const std::string& what, std::size_t index = 0)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class LiftedLineParallel : public Error {
 public:
  using Error::Error;
};

class UnsupportedKind : public Error {
 public:
  using Error::Error;
};

}  // namespace mpart
