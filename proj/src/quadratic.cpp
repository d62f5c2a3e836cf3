#include "fricke/quadratic.hpp"

#include <cmath>
#include <limits>

#include "fricke/errors.hpp"

namespace fricke {

using I128 = __int128;

namespace {

I128 mul(I128 x, I128 y) {
  I128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("overflow comparing quadratic irrationals");
  return r;
}

I128 sub(I128 x, I128 y) {
  I128 r;
  if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("overflow comparing quadratic irrationals");
  return r;
}

// sign of u + v sqrt(D), D > 0 non-square
int sign_surd(I128 u, I128 v, Int D) {
  int su = (u > 0) - (u < 0);
  int sv = (v > 0) - (v < 0);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  I128 lhs = mul(u, u);
  I128 rhs = mul(mul(v, v), D);
  // not equal since D is not a square
  return lhs > rhs ? su : sv;
}

bool is_square(Int n) {
  if (n < 0) return false;
  Int r = static_cast<Int>(std::llround(std::sqrt(static_cast<long double>(n))));
  for (Int k = r - 2; k <= r + 2; ++k)
    if (k >= 0 && static_cast<I128>(k) * k == n) return true;
  return false;
}

}  // namespace

QuadraticIrrational::QuadraticIrrational(Int a, Int b, Int c, Int D) : a_(a), b_(b), c_(c), D_(D) {
  if (c_ == 0) throw ArgumentError("quadratic irrational with zero denominator");
  if (D_ <= 0 || is_square(D_)) throw ArgumentError("radicand must be a positive non-square");
  if (c_ < 0) {
    a_ = checked_sub(0, a_);
    b_ = checked_sub(0, b_);
    c_ = checked_sub(0, c_);
  }
}

double QuadraticIrrational::value() const {
  long double v = (static_cast<long double>(a_) + b_ * std::sqrt(static_cast<long double>(D_))) / c_;
  return static_cast<double>(v);
}

std::string QuadraticIrrational::str() const {
  return "(" + std::to_string(a_) + (b_ < 0 ? " - " : " + ") + std::to_string(b_ < 0 ? -b_ : b_) + "*sqrt(" +
         std::to_string(D_) + "))/" + std::to_string(c_);
}

int QuadraticIrrational::compare(const Slope& s) const {
  if (s.is_infinity()) return -1;
  // sign of q (a + b sqrt D) - p c, since q > 0 and c > 0
  I128 u = sub(mul(s.den(), a_), mul(s.num(), c_));
  I128 v = mul(s.den(), b_);
  return sign_surd(u, v, D_);
}

int QuadraticIrrational::compare(const QuadraticIrrational& o) const {
  if (D_ != o.D_) throw ArgumentError("comparing quadratic irrationals with different radicands");
  I128 u = sub(mul(a_, o.c_), mul(o.a_, c_));
  I128 v = sub(mul(b_, o.c_), mul(o.b_, c_));
  return sign_surd(u, v, D_);
}

int compare_points(const LinePoint& x, const LinePoint& y) {
  if (auto xs = std::get_if<Slope>(&x)) {
    if (auto ys = std::get_if<Slope>(&y)) return compare_real(*xs, *ys);
    return -std::get<QuadraticIrrational>(y).compare(*xs);
  }
  const auto& xq = std::get<QuadraticIrrational>(x);
  if (auto ys = std::get_if<Slope>(&y)) return xq.compare(*ys);
  return xq.compare(std::get<QuadraticIrrational>(y));
}

double point_value(const LinePoint& x) {
  if (auto s = std::get_if<Slope>(&x)) return s->to_double();
  return std::get<QuadraticIrrational>(x).value();
}

std::string point_str(const LinePoint& x) {
  if (auto s = std::get_if<Slope>(&x)) return s->str();
  return std::get<QuadraticIrrational>(x).str();
}

bool in_increasing_arc(const LinePoint& from, const LinePoint& to, const LinePoint& s, bool include_from,
                       bool include_to) {
  int sf = compare_points(s, from);
  int st = compare_points(s, to);
  if (sf == 0) return include_from;
  if (st == 0) return include_to;
  int ft = compare_points(from, to);
  if (ft < 0) return sf > 0 && st < 0;
  // wraps through infinity (or degenerate full circle when from == to)
  return sf > 0 || st < 0;
}

}  // namespace fricke
