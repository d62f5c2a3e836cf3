#pragma once

// Independent reference computations for the tests. Nothing here calls into the tree walk,
// the summation engine or the Farey code under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fricke/character.hpp"

namespace oracle {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

struct M2 {
  lcplx a, b, c, d;
};

inline M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
inline M2 inv(const M2& m) {
  lcplx det = m.a * m.d - m.b * m.c;
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}
inline M2 lift(const fricke::Mat2c& m) { return {lcplx(m.a), lcplx(m.b), lcplx(m.c), lcplx(m.d)}; }

// Christoffel word of p/q over {X, Y}: q letters X and |p| letters Y (Y^-1 when p < 0),
// letter i is X when floor(i |p| / n) does not step.
inline std::string christoffel(std::int64_t p, std::int64_t q) {
  std::int64_t ap = p < 0 ? -p : p, n = ap + q;
  std::string w;
  for (std::int64_t i = 1; i <= n; ++i) w.push_back((i * ap) / n == ((i - 1) * ap) / n ? 'X' : 'Y');
  return w;
}

// trace of the curve with slope p/q, read off from explicit matrices
inline cplx word_trace(const fricke::MatrixPair& mp, std::int64_t p, std::int64_t q) {
  M2 X = lift(mp.A), Y = lift(mp.B);
  if (p < 0) Y = inv(Y);
  M2 acc{1, 0, 0, 1};
  for (char ch : christoffel(p, q)) acc = mul(acc, ch == 'X' ? X : Y);
  lcplx t = acc.a + acc.d;
  return {static_cast<double>(t.real()), static_cast<double>(t.imag())};
}

// continued fraction partial quotients of p/q, p, q > 0
inline std::vector<std::int64_t> continued_fraction(std::int64_t p, std::int64_t q) {
  std::vector<std::int64_t> out;
  while (q != 0) {
    out.push_back(p / q);
    std::int64_t r = p % q;
    p = q;
    q = r;
  }
  return out;
}

// number of mediant steps from 1/1 to a positive p/q in the Stern-Brocot tree
inline int stern_brocot_depth(std::int64_t p, std::int64_t q) {
  auto cf = continued_fraction(p, q);
  return static_cast<int>(std::accumulate(cf.begin(), cf.end(), std::int64_t{0}) - 1);
}

// e^{l} for l = 2 acosh(t/2), Re l >= 0, in long double
inline lcplx exp_length(cplx t) {
  lcplx tt(t.real(), t.imag());
  lcplx s = std::sqrt(tt * tt - lcplx(4));
  // the larger root; the smaller one cancels badly for large traces
  lcplx h1 = (tt + s) / lcplx(2), h2 = (tt - s) / lcplx(2);
  lcplx h = std::abs(h1) >= std::abs(h2) ? h1 : h2;
  return h * h;
}

inline cplx general_term(cplx t, cplx nu) {
  lcplx el = exp_length(t), n(nu.real(), nu.imag());
  // log((e^n + el) / (e^-n + el)) = log(1 + w), with a series when w is tiny
  lcplx w = (std::exp(n) - std::exp(-n)) / (std::exp(-n) + el);
  lcplx v = std::abs(w) < 1e-5L ? w - w * w / lcplx(2) + w * w * w / lcplx(3) : std::log(lcplx(1) + w);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

inline cplx cusp_term(cplx t) {
  lcplx v = lcplx(1) / (lcplx(1) + exp_length(t));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// All traces of the Markov-type tree to the given depth by plain recursion on triples:
// starting from the base triple, each step replaces the coordinate opposite the edge.
inline void tree_traces(cplx a, cplx b, cplx behind, int depth, std::vector<cplx>& out) {
  if (depth < 0) return;
  cplx d = a * b - behind;
  out.push_back(d);
  tree_traces(a, d, b, depth - 1, out);
  tree_traces(d, b, a, depth - 1, out);
}

inline std::vector<cplx> all_traces(const fricke::TraceTriple& t, int depth) {
  std::vector<cplx> out = {t.x, t.y, t.z};
  tree_traces(t.x, t.z, t.y, depth, out);
  tree_traces(t.z, t.y, t.x, depth, out);
  tree_traces(t.x, t.y, t.z, depth, out);
  return out;
}

// seeded generators for the property tests
struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }
  cplx disk(double r) {
    for (;;) {
      double a = uniform(-r, r), b = uniform(-r, r);
      if (a * a + b * b <= r * r) return {a, b};
    }
  }
  cplx box(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  fricke::TraceTriple triple_disk(double r) { return {disk(r), disk(r), disk(r)}; }
  fricke::TraceTriple triple_real(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
  std::string lr_word(int max_len, int min_len = 0) {
    int n = static_cast<int>(integer(min_len, max_len));
    std::string w;
    for (int i = 0; i < n; ++i) w.push_back(integer(0, 1) ? 'R' : 'L');
    return w;
  }
  std::mt19937_64 rng;
};

}  // namespace oracle
