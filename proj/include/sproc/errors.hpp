// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace sproc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

class ZeroDirectionError : public Error {
 public:
  using Error::Error;
};

class SlaterViolatedError : public Error {
 public:
  using Error::Error;
};

class BracketOverflowError : public Error {
 public:
  using Error::Error;
};

class RayMissesPolygonError : public Error {
 public:
  using Error::Error;
};

class BadConeSpecError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sproc
