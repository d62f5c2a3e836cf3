#pragma once

#include <string>
#include <variant>

#include "fricke/slope.hpp"

namespace fricke {

// (a + b sqrt(D)) / c with c > 0 and D > 0 not a perfect square
class QuadraticIrrational {
 public:
  QuadraticIrrational(Int a, Int b, Int c, Int D);

  Int a() const { return a_; }
  Int b() const { return b_; }
  Int c() const { return c_; }
  Int D() const { return D_; }
  double value() const;
  std::string str() const;

  // sign of (this - s); 1/0 counts as larger than everything
  int compare(const Slope& s) const;
  // both operands must share D
  int compare(const QuadraticIrrational& o) const;

  friend bool operator==(const QuadraticIrrational&, const QuadraticIrrational&) = default;

 private:
  Int a_, b_, c_, D_;
};

// a point of the extended real line: either rational (incl. 1/0) or a quadratic irrational
using LinePoint = std::variant<Slope, QuadraticIrrational>;

int compare_points(const LinePoint& x, const LinePoint& y);
double point_value(const LinePoint& x);
std::string point_str(const LinePoint& x);

// whether s lies on the arc swept from `from` to `to` moving in the increasing direction
// (wrapping through 1/0). Endpoints are included per the flags.
bool in_increasing_arc(const LinePoint& from, const LinePoint& to, const LinePoint& s,
                       bool include_from, bool include_to);

}  // namespace fricke
