#pragma once

#include <stdexcept>
#include <string>

namespace rholab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values (dimension out of range, q <= 1, ...).
class ParameterError : public Error {
public:
  explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// Requested ball radius above the torus cap. Carries the cap value.
class RadiusCapError : public Error {
public:
  RadiusCapError(double requested, double cap)
      : Error("ball radius " + std::to_string(requested) +
              " exceeds the half-side cap " + std::to_string(cap)),
        requested(requested), cap(cap) {}
  double requested;
  double cap;
};

// Two objects that must share a grid do not.
class GridMismatchError : public Error {
public:
  explicit GridMismatchError(const std::string& msg) : Error(msg) {}
};

// Internal numerical invariant failed (eigensolver breakdown, lambda_min <= 0,
// unresolvable critical radius, ...).
class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace rholab
