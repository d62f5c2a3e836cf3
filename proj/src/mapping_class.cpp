#include "fricke/mapping_class.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fricke/errors.hpp"

namespace fricke {

namespace {

Matrix2i letter_power(Letter l, Int k) {
  return l == Letter::R ? Matrix2i{1, k, 0, 1} : Matrix2i{1, 0, k, 1};
}

Int trunc_div(Int a, Int b) { return a / b; }

}  // namespace

GeneratorWord factor_matrix(const Matrix2i& m) {
  if (m.det() != 1) throw ArgumentError("factorisation needs det 1, got " + m.str());
  GeneratorWord g;
  Matrix2i rest = m;
  while (rest.c != 0) {
    Int n;
    if (rest.a == 0) {
      n = -rest.c;  // makes the top-left entry c^2 = 1
    } else if (std::abs(rest.a) >= std::abs(rest.c)) {
      n = trunc_div(rest.a, rest.c);
    } else {
      n = 0;
    }
    if (n != 0) {
      rest = letter_power(Letter::R, -n) * rest;
      g.powers.push_back({Letter::R, n});
      continue;
    }
    n = trunc_div(rest.c, rest.a);
    rest = letter_power(Letter::L, -n) * rest;
    g.powers.push_back({Letter::L, n});
  }
  // rest = a [[1, a b], [0, 1]] with a = +-1
  g.negate = rest.a == -1;
  Int k = checked_mul(rest.a, rest.b);
  if (k != 0) g.powers.push_back({Letter::R, k});
  if (generator_matrix(g) != m) throw std::logic_error("matrix factorisation does not multiply back");
  return g;
}

GeneratorWord generator_word(const LRWord& w) {
  GeneratorWord g;
  for (std::size_t i = 0; i < w.size(); ++i) g.powers.push_back({w[i], 1});
  return g;
}

Matrix2i generator_matrix(const GeneratorWord& g) {
  Matrix2i m;
  for (const auto& [l, k] : g.powers) m = m * letter_power(l, k);
  return g.negate ? -m : m;
}

MappingClass MappingClass::from_matrix(const Matrix2i& m) {
  Int dt = m.det();
  if (dt != 1 && dt != -1) throw ArgumentError("mapping class matrix must have det +-1: " + m.str());
  MappingClass mc;
  mc.m_ = m;
  if (dt == 1) {
    bool nonneg = m.a >= 0 && m.b >= 0 && m.c >= 0 && m.d >= 0;
    mc.lift_ = nonneg ? generator_word(positive_factorization(m)) : factor_matrix(m);
    if (mc.is_anosov()) mc.word_ = lr_word(m);
  }
  return mc;
}

MappingClass MappingClass::from_word(const LRWord& w) {
  MappingClass mc;
  mc.m_ = word_matrix(w);
  mc.lift_ = generator_word(w);
  if (mc.is_anosov()) mc.word_ = lr_word(mc.m_);
  return mc;
}

MappingClass MappingClass::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty()) throw ArgumentError("empty mapping class");
  if (s.find_first_not_of("LR") == std::string::npos) return from_word(LRWord(s));
  std::vector<Int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      long long x = std::stoll(item, &pos);
      if (pos != item.size()) throw ArgumentError("bad integer");
      v.push_back(x);
    } catch (const std::exception&) {
      throw ArgumentError("malformed matrix '" + std::string(text) + "'");
    }
  }
  if (v.size() != 4) throw ArgumentError("matrix needs four integers a,b,c,d");
  return from_matrix({v[0], v[1], v[2], v[3]});
}

bool MappingClass::is_anosov() const { return m_.det() == 1 && std::abs(m_.trace()) > 2; }

std::string MappingClass::str() const { return word_ ? word_->str() : m_.str(); }

LRWord positive_factorization(const Matrix2i& m) {
  if (m.det() != 1 || m.a < 0 || m.b < 0 || m.c < 0 || m.d < 0)
    throw ArgumentError("positive factorisation needs a non-negative matrix of det 1: " + m.str());
  LRWord w;
  Matrix2i r = m;
  while (!(r == Matrix2i{})) {
    if (r.a >= r.c && r.b >= r.d) {
      w.push_back(Letter::R);
      r = {r.a - r.c, r.b - r.d, r.c, r.d};
    } else if (r.c >= r.a && r.d >= r.b) {
      w.push_back(Letter::L);
      r = {r.a, r.b, r.c - r.a, r.d - r.b};
    } else {
      throw std::logic_error("non-negative matrix is not a positive word");
    }
  }
  return w;
}

AxisPair axis_points(const Matrix2i& m) {
  if (m.det() != 1 || std::abs(m.trace()) <= 2) throw ArgumentError("matrix " + m.str() + " is not Anosov");
  Int tr = m.trace();
  Int D = checked_sub(checked_mul(tr, tr), 4);
  Int num = checked_sub(m.a, m.d);
  Int den = checked_mul(2, m.c);
  Int sg = tr > 0 ? 1 : -1;
  return {QuadraticIrrational(num, -sg, den, D), QuadraticIrrational(num, sg, den, D)};
}

namespace {

std::pair<Int, Int> vec_of(const Slope& s) { return {s.num(), s.den()}; }

}  // namespace

LRWord lr_word(const Matrix2i& m0) {
  if (m0.det() != 1 || std::abs(m0.trace()) <= 2) throw ArgumentError("lr_word needs an Anosov matrix, got " + m0.str());
  Matrix2i m = m0.trace() < 0 ? -m0 : m0;
  AxisPair ax = axis_points(m);
  LinePoint mp = ax.mu_plus, mm = ax.mu_minus;
  // a Farey edge separating the fixed points; the cone over the arc holding mu+ is mapped into itself
  std::vector<DirectedEdge> layer = base_edges();
  std::optional<std::pair<Slope, Slope>> sep;
  auto separates = [&](const Slope& u, const Slope& v) {
    return in_increasing_arc(u, v, mp, false, false) != in_increasing_arc(u, v, mm, false, false);
  };
  {
    auto t = base_triangle();
    for (auto [u, v] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.a, t.c}})
      if (!sep && separates(u, v)) sep = {u, v};
  }
  for (int depth = 0; !sep && depth < 60; ++depth) {
    std::vector<DirectedEdge> next;
    for (const auto& e : layer) {
      auto [l, r] = child_edges(e);
      for (const auto& c : {l, r}) {
        if (!sep && separates(c.left, c.right)) sep = {c.left, c.right};
        next.push_back(c);
      }
    }
    layer = std::move(next);
  }
  if (!sep) throw ResourceLimitError("no separating Farey edge found for " + m0.str());
  auto [u, v] = *sep;
  // signs so that the cone spanned contains the mu+ eigenvector (mu+, 1)
  auto [p1, q1] = vec_of(u);
  auto [p2, q2] = vec_of(v);
  double x = point_value(mp);
  double det = static_cast<double>(p1) * q2 - static_cast<double>(p2) * q1;
  double alpha = (x * q2 - p2) / det, beta = (p1 - x * q1) / det;
  if (alpha < 0) {
    p1 = -p1;
    q1 = -q1;
  }
  if (beta < 0) {
    p2 = -p2;
    q2 = -q2;
  }
  Matrix2i G{p1, p2, q1, q2};
  if (G.det() == -1) G = {p2, p1, q2, q1};
  Matrix2i pos = G.inverse() * m * G;
  LRWord w = positive_factorization(pos);
  // least rotation
  std::string best = w.str();
  std::string s = w.str();
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::string rot = s.substr(i) + s.substr(0, i);
    if (rot < best) best = rot;
  }
  return LRWord(best);
}

namespace {

TraceTriple apply_letter(const TraceTriple& t, Letter l, bool inverse) {
  if (l == Letter::R) {
    if (!inverse) return {t.x * t.y - t.z, t.y, t.x};
    return {t.z, t.y, t.y * t.z - t.x};
  }
  if (!inverse) return {t.x, t.x * t.y - t.z, t.y};
  return {t.x, t.z, t.x * t.z - t.y};
}

}  // namespace

TraceTriple apply_mapping_class(const TraceTriple& t, const GeneratorWord& g) {
  TraceTriple r = t;
  for (auto it = g.powers.rbegin(); it != g.powers.rend(); ++it) {
    Int k = it->second;
    bool inv = k < 0;
    for (Int i = 0; i < (inv ? -k : k); ++i) r = apply_letter(r, it->first, inv);
  }
  return r;
}

TraceTriple apply_mapping_class(const TraceTriple& t, const LRWord& w) {
  return apply_mapping_class(t, generator_word(w));
}

TraceTriple apply_mapping_class(const TraceTriple& t, const Matrix2i& m) {
  Int dt = m.det();
  if (dt == 1) return apply_mapping_class(t, factor_matrix(m));
  if (dt != -1) throw ArgumentError("mapping class matrix must have det +-1: " + m.str());
  // orientation reversing: read the traces off at the preimages of the base slopes
  Matrix2i inv = m.inverse();
  return {trace_at_slope(t, act_on_slope(inv, Slope(0, 1))), trace_at_slope(t, act_on_slope(inv, Slope::infinity())),
          trace_at_slope(t, act_on_slope(inv, Slope(1, 1)))};
}

namespace {

Mat2c mat_power(const Mat2c& a, Int k) {
  Mat2c base = k < 0 ? a.inverse() : a;
  Int n = k < 0 ? -k : k;
  Mat2c r{1, 0, 0, 1};
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

}  // namespace

MatrixPair apply_automorphism(const MatrixPair& mp, const GeneratorWord& g) {
  MatrixPair r = mp;
  for (const auto& [l, k] : g.powers) {
    if (l == Letter::R) {
      r.A = r.A * mat_power(r.B, k);  // X -> X Y^k
    } else {
      r.B = mat_power(r.A, k) * r.B;  // Y -> X^k Y
    }
  }
  if (g.negate) r = {r.A.inverse(), r.B.inverse()};
  return r;
}

}  // namespace fricke
