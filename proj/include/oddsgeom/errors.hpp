#pragma once

#include <stdexcept>
#include <string>

namespace oddsgeom {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An entry of a table (or count vector) is zero or negative.
class NonPositiveEntry : public Error {
 public:
  NonPositiveEntry(int index, double value)
      : Error("non-positive entry at index " + std::to_string(index) +
              " (value " + std::to_string(value) + ")"),
        index_(index),
        value_(value) {}

  int index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  int index_;
  double value_;
};

// Table entries do not sum to 1 within the normalization tolerance.
class NotNormalized : public Error {
 public:
  explicit NotNormalized(double sum)
      : Error("table entries sum to " + std::to_string(sum) + ", expected 1"),
        sum_(sum) {}

  double sum() const noexcept { return sum_; }

 private:
  double sum_;
};

// A scalar argument lies outside its admissible (usually open) interval.
class OutOfRangeParameter : public Error {
 public:
  using Error::Error;
};

// A table was passed to the independence chart but has r_cross != 1.
class NotIndependent : public Error {
 public:
  using Error::Error;
};

// A ratio assignment violates one of the multiplicative relations.
class InconsistentAssignment : public Error {
 public:
  using Error::Error;
};

// Every Newton start failed; the real locus may be empty or ill-conditioned.
class NoSolutionsFound : public Error {
 public:
  using Error::Error;
};

// Malformed table, assignment, or CLI input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace oddsgeom
