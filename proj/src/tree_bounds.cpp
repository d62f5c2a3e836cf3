#include "fricke/tree_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace fricke {

namespace {

constexpr double kDecayClearance = 2.5;

// sum over the subtree rooted at a vertex with |t| >= top whose two parents have modulus >= m
double plain_decay(double top, double m) {
  double g = (m - 1) * (m - 1);
  return 1.0 / ((top - 1) * (top - 1)) / (1.0 - 2.0 / g);
}

}  // namespace

EdgeTraces make_edge_traces(const cplx& left, const cplx& right, const cplx& behind) {
  return {left, right, behind, left * right - behind};
}

std::optional<FanGrowth> fan_growth(const cplx& pivot, const cplx& t0, const cplx& t1) {
  cplx root = std::sqrt(pivot * pivot - 4.0);
  cplx lam = (pivot + root) / 2.0;
  cplx lam2 = (pivot - root) / 2.0;
  if (std::abs(lam2) > std::abs(lam)) lam = lam2;
  double r = std::abs(lam);
  if (!(r > 1.0 + 1e-9)) return std::nullopt;
  cplx inv = 1.0 / lam;
  cplx A = (t1 - t0 * inv) / (lam - inv);
  cplx B = t0 - A;
  return FanGrowth{lam, A, B};
}

double FanGrowth::lower(int k) const {
  double r = std::abs(lambda);
  return std::abs(A) * std::pow(r, k) - std::abs(B) * std::pow(r, -k);
}

namespace {

struct FanSetup {
  cplx pivot, other;
  FanGrowth g;
};

// identify a fan configuration: exactly one edge endpoint below `clear`
std::optional<FanSetup> fan_setup(const EdgeTraces& e, double clear) {
  double l = std::abs(e.left), r = std::abs(e.right);
  cplx pivot, other;
  if (l < clear && r >= clear) {
    pivot = e.left;
    other = e.right;
  } else if (r < clear && l >= clear) {
    pivot = e.right;
    other = e.left;
  } else {
    return std::nullopt;
  }
  // fan around the pivot: t_0 = other, t_1 = ahead
  auto g = fan_growth(pivot, other, e.ahead);
  if (!g) return std::nullopt;
  return FanSetup{pivot, other, *g};
}

}  // namespace

EscapeCheck escape_check(const EdgeTraces& e, double margin) {
  double clear = 2.0 + margin;
  double l = std::abs(e.left), r = std::abs(e.right);
  double lo = std::min(l, r);
  double d = std::abs(e.ahead);
  if (lo >= clear) {
    if (d >= std::max(std::abs(e.behind), lo)) return {EscapeKind::Plain, d};
    return {};
  }
  auto fan = fan_setup(e, clear);
  if (!fan) return {};
  double l1 = fan->g.lower(1);
  if (l1 >= clear && d >= l1 * (1 - 1e-12)) return {EscapeKind::Fan, std::min(l1, d)};
  return {};
}

std::optional<DecayBound> subtree_decay(const EdgeTraces& e) {
  double l = std::abs(e.left), r = std::abs(e.right);
  double lo = std::min(l, r);
  double d = std::abs(e.ahead);
  if (lo >= kDecayClearance) {
    if (d < std::max(std::abs(e.behind), lo)) return std::nullopt;
    return DecayBound{plain_decay(d, lo), d};
  }
  auto fan = fan_setup(e, kDecayClearance);
  if (!fan) return std::nullopt;
  const FanGrowth& g = fan->g;
  double pivot = std::abs(fan->pivot);
  double prev = std::abs(fan->other);
  double l1 = g.lower(1);
  if (!(l1 >= kDecayClearance)) return std::nullopt;
  double sum = 0;
  for (int k = 1; k < 100000; ++k) {
    double lk = g.lower(k);
    // fan vertex k and the side branch hanging off edge {d_{k-1}, d_k}
    double side_top = prev * lk - pivot;
    double m = std::min(prev, lk);
    double term = 1.0 / ((lk - 1) * (lk - 1)) + plain_decay(side_top, m);
    sum += term;
    if (term < 1e-17 * sum) {
      // lower(j) >= |lambda|^(j-k) lower(k), so later terms shrink by |lambda|^-2 per step
      double q = 1.0 / (std::abs(g.lambda) * std::abs(g.lambda));
      sum += term * q / (1 - q);
      return DecayBound{sum, l1};
    }
    prev = lk;
  }
  return std::nullopt;
}

}  // namespace fricke
