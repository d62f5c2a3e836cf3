#include "fricke/slope.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "fricke/errors.hpp"

namespace fricke {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in slope arithmetic");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in slope arithmetic");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in slope arithmetic");
  return r;
}

Slope::Slope(Int p, Int q) {
  if (p == 0 && q == 0) throw ArgumentError("slope 0/0 is undefined");
  if (p == INT64_MIN || q == INT64_MIN) throw OverflowError("slope component out of range");
  Int g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  p_ = p;
  q_ = q;
}

double Slope::to_double() const {
  if (q_ == 0) return HUGE_VAL;
  return static_cast<double>(p_) / static_cast<double>(q_);
}

std::string Slope::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

Slope Slope::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto read_int = [&](std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw ArgumentError("malformed slope '" + std::string(text) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Slope(read_int(text), 1);
  return Slope(read_int(text.substr(0, slash)), read_int(text.substr(slash + 1)));
}

int compare_real(const Slope& a, const Slope& b) {
  if (a.is_infinity() || b.is_infinity()) return (a.is_infinity() ? 1 : 0) - (b.is_infinity() ? 1 : 0);
  __int128 l = static_cast<__int128>(a.num()) * b.den();
  __int128 r = static_cast<__int128>(b.num()) * a.den();
  return (l > r) - (l < r);
}

static __int128 cross(const Slope& a, const Slope& b) {
  return static_cast<__int128>(a.num()) * b.den() - static_cast<__int128>(b.num()) * a.den();
}

bool farey_adjacent(const Slope& a, const Slope& b) {
  __int128 c = cross(a, b);
  return c == 1 || c == -1;
}

Slope farey_mediant_flip(const FareyEdge& edge, const Slope& third) {
  const Slope& a = edge.a;
  const Slope& b = edge.b;
  if (!farey_adjacent(a, b) || !farey_adjacent(a, third) || !farey_adjacent(b, third))
    throw InvalidTriangleError("slopes " + a.str() + ", " + b.str() + ", " + third.str() +
                               " do not span a Farey triangle");
  Slope sum(checked_add(a.num(), b.num()), checked_add(a.den(), b.den()));
  Slope diff(checked_sub(a.num(), b.num()), checked_sub(a.den(), b.den()));
  if (sum == third) return diff;
  if (diff == third) return sum;
  throw InvalidTriangleError("slope " + third.str() + " is not opposite edge " + a.str() + " " + b.str());
}

std::pair<DirectedEdge, DirectedEdge> child_edges(const DirectedEdge& e) {
  Slope d = e.ahead();
  return {DirectedEdge{e.left, d, e.right}, DirectedEdge{d, e.right, e.left}};
}

FareyTriangle base_triangle() { return {Slope(0, 1), Slope::infinity(), Slope(1, 1)}; }

std::vector<DirectedEdge> base_edges() {
  Slope zero(0, 1), inf = Slope::infinity(), one(1, 1);
  return {DirectedEdge{zero, one, inf}, DirectedEdge{one, inf, zero}, DirectedEdge{zero, inf, one}};
}

std::vector<Slope> enumerate_slopes(int depth, int depth_cap) {
  if (depth < 0) throw ArgumentError("negative enumeration depth");
  if (depth > depth_cap)
    throw ResourceLimitError("enumeration depth " + std::to_string(depth) + " exceeds cap " +
                             std::to_string(depth_cap));
  auto tri = base_triangle();
  std::vector<Slope> out{tri.a, tri.b, tri.c};
  std::vector<DirectedEdge> layer = base_edges();
  for (int d = 1; d <= depth; ++d) {
    std::vector<DirectedEdge> next;
    next.reserve(layer.size() * 2);
    for (const auto& e : layer) {
      auto [l, r] = child_edges(e);
      out.push_back(l.right);
      next.push_back(l);
      next.push_back(r);
    }
    layer = std::move(next);
  }
  return out;
}

LRWord::LRWord(std::string_view letters) : letters_(letters) {
  for (char ch : letters_)
    if (ch != 'L' && ch != 'R') throw ArgumentError("word may only contain L and R: '" + letters_ + "'");
}

Int Matrix2i::det() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }
Int Matrix2i::trace() const { return checked_add(a, d); }

Matrix2i Matrix2i::inverse() const {
  Int dt = det();
  if (dt == 1) return {d, -b, -c, a};
  if (dt == -1) return {-d, b, c, -a};
  throw ArgumentError("matrix " + str() + " is not invertible over the integers");
}

std::string Matrix2i::str() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
         std::to_string(d) + "]]";
}

Matrix2i operator*(const Matrix2i& x, const Matrix2i& y) {
  return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
          checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
          checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

Matrix2i word_matrix(const LRWord& w) {
  Matrix2i m;
  for (std::size_t i = 0; i < w.size(); ++i) m = m * (w[i] == Letter::L ? matrix_L() : matrix_R());
  return m;
}

Slope act_on_slope(const Matrix2i& m, const Slope& s) {
  Int dt = m.det();
  if (dt != 1 && dt != -1) throw ArgumentError("matrix " + m.str() + " is not in GL(2,Z)");
  Int p = checked_add(checked_mul(m.a, s.num()), checked_mul(m.b, s.den()));
  Int q = checked_add(checked_mul(m.c, s.num()), checked_mul(m.d, s.den()));
  return Slope(p, q);
}

// number of Stern-Brocot steps from 1/1 to p/q (p, q > 0), without walking them
static Int sb_length(Int p, Int q) {
  Int n = 0;
  while (p != q) {
    if (p < q) {
      Int k = (q - 1) / p;
      q -= k * p;
      n += k;
    } else {
      Int k = (p - 1) / q;
      p -= k * q;
      n += k;
    }
  }
  return n;
}

LRWord stern_brocot_word(const Slope& s, int depth_cap) {
  if (s.den() == 0 || s.num() <= 0) throw ArgumentError("Stern-Brocot word needs a positive slope, got " + s.str());
  Int p = s.num(), q = s.den();
  if (sb_length(p, q) > depth_cap)
    throw ResourceLimitError("slope " + s.str() + " lies deeper than " + std::to_string(depth_cap));
  LRWord w;
  while (p != q) {
    if (p < q) {
      w.push_back(Letter::L);
      q -= p;
    } else {
      w.push_back(Letter::R);
      p -= q;
    }
  }
  return w;
}

namespace {
struct Vec {
  Int p, q;
};
Vec add(Vec u, Vec v) { return {checked_add(u.p, v.p), checked_add(u.q, v.q)}; }

Slope walk(Vec l, Vec r, Vec m, const LRWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == Letter::L) {
      r = m;
    } else {
      l = m;
    }
    m = add(l, r);
  }
  return Slope(m.p, m.q);
}
}  // namespace

Slope slope_from_word(const LRWord& w) { return walk({0, 1}, {1, 0}, {1, 1}, w); }

FareyAddress farey_address(const Slope& s, int depth_cap) {
  if (s.den() == 0) return {Sector::Infinity, {}};
  if (s.num() == 0) return {Sector::Zero, {}};
  if (s.num() > 0) return {Sector::Positive, stern_brocot_word(s, depth_cap)};
  if (s.num() == INT64_MIN) throw OverflowError("slope component out of range");
  return {Sector::Negative, stern_brocot_word(Slope(-s.num(), s.den()), depth_cap)};
}

Slope slope_at_address(const FareyAddress& addr) {
  switch (addr.sector) {
    case Sector::Zero:
      if (!addr.word.empty()) throw ArgumentError("base slope address carries a word");
      return Slope(0, 1);
    case Sector::Infinity:
      if (!addr.word.empty()) throw ArgumentError("base slope address carries a word");
      return Slope::infinity();
    case Sector::Positive:
      return slope_from_word(addr.word);
    case Sector::Negative:
      return walk({0, 1}, {-1, 0}, {-1, 1}, addr.word);
  }
  return Slope();
}

int farey_depth(const Slope& s) {
  if (s.den() == 0 || s.num() == 0) return 0;
  Int p = s.num() < 0 ? -s.num() : s.num();
  Int n = sb_length(p, s.den());
  if (n > INT32_MAX - 1) throw OverflowError("Farey depth exceeds int range");
  return static_cast<int>(n) + (s.num() < 0 ? 1 : 0);
}

}  // namespace fricke
