#pragma once

#include <string>

#include "limcov/rational.hpp"

namespace limcov {

/// Open interval (lo, hi) of the real line; empty when hi <= lo.
struct RealInterval {
  Rational lo;
  Rational hi;

  bool empty() const { return hi <= lo; }
  Rational measure() const { return empty() ? Rational(0) : hi - lo; }
  bool contains(const Rational& x) const { return lo < x && x < hi; }

  std::string to_string() const { return "(" + lo.to_string() + ", " + hi.to_string() + ")"; }

  friend bool operator==(const RealInterval&, const RealInterval&) = default;
};

}  // namespace limcov
