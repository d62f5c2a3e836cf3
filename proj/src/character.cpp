#include "fricke/character.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "fricke/errors.hpp"

namespace fricke {

cplx kappa(const TraceTriple& t) { return t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z - 2.0; }

TraceTriple markov_flip(const TraceTriple& t, Coord c) {
  TraceTriple r = t;
  switch (c) {
    case Coord::X:
      r.x = t.y * t.z - t.x;
      break;
    case Coord::Y:
      r.y = t.x * t.z - t.y;
      break;
    case Coord::Z:
      r.z = t.x * t.y - t.z;
      break;
  }
  return r;
}

std::string class_name(CharacterClass c) {
  switch (c) {
    case CharacterClass::Real:
      return "Real";
    case CharacterClass::Imaginary:
      return "Imaginary";
    case CharacterClass::Dihedral:
      return "Dihedral";
    case CharacterClass::Reducible:
      return "Reducible";
    case CharacterClass::Generic:
      return "Generic";
  }
  return "?";
}

std::vector<std::string> ClassTags::names() const {
  std::vector<std::string> out;
  for (auto c : {CharacterClass::Real, CharacterClass::Imaginary, CharacterClass::Dihedral, CharacterClass::Reducible,
                 CharacterClass::Generic})
    if (has(c)) out.push_back(class_name(c));
  return out;
}

ClassTags classify_character(const TraceTriple& t, double tol) {
  if (!(tol > 0)) throw ArgumentError("classification tolerance must be positive");
  ClassTags tags;
  int real_coords = 0, imag_coords = 0, zero_coords = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(t[i].imag()) <= tol) ++real_coords;
    if (std::abs(t[i].real()) <= tol) ++imag_coords;
    if (std::abs(t[i]) <= tol) ++zero_coords;
  }
  bool real = real_coords == 3;
  if (real) tags.add(CharacterClass::Real);
  if (!real && imag_coords == 2) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(t[i].real()) > tol && std::abs(t[i].imag()) <= tol) tags.add(CharacterClass::Imaginary);
    }
  }
  if (zero_coords >= 2) tags.add(CharacterClass::Dihedral);
  if (std::abs(kappa(t) - 2.0) <= tol) tags.add(CharacterClass::Reducible);
  if (!tags.has(CharacterClass::Real) && !tags.has(CharacterClass::Imaginary) &&
      !tags.has(CharacterClass::Dihedral) && !tags.has(CharacterClass::Reducible))
    tags.add(CharacterClass::Generic);
  return tags;
}

Character::Character(const TraceTriple& t, double tol)
    : triple_(t), kappa_(fricke::kappa(t)), tags_(classify_character(t, tol)), tol_(tol) {
  for (int i = 0; i < 3; ++i)
    if (!std::isfinite(t[i].real()) || !std::isfinite(t[i].imag()))
      throw ArgumentError("trace triple must be finite");
}

TraceCache::TraceCache(const TraceTriple& t) : triple_(t) {
  map_[Slope(0, 1)] = t.x;
  map_[Slope::infinity()] = t.y;
  map_[Slope(1, 1)] = t.z;
}

bool TraceCache::lookup(const Slope& s, cplx& out) const {
  auto it = map_.find(s);
  if (it == map_.end()) return false;
  out = it->second;
  return true;
}

namespace {

struct Node {
  Int p, q;
  cplx t;
};

template <class Lookup, class Store>
cplx walk_traces(const TraceTriple& tt, const Slope& s, int depth_cap, Lookup&& lookup, Store&& store) {
  FareyAddress addr = farey_address(s, depth_cap);
  if (addr.sector == Sector::Zero) return tt.x;
  if (addr.sector == Sector::Infinity) return tt.y;
  Node l{0, 1, tt.x}, r{1, 0, tt.y}, m{1, 1, tt.z};
  if (addr.sector == Sector::Negative) {
    r = {-1, 0, tt.y};
    m = {-1, 1, tt.x * tt.y - tt.z};
    store(Slope(-1, 1), m.t);
  }
  for (std::size_t i = 0; i < addr.word.size(); ++i) {
    bool left = addr.word[i] == Letter::L;
    const Node& far = left ? r : l;
    // new slope is m + (l or r): the vertex across edge {l,m} or {m,r}
    Node next{};
    const Node& side = left ? l : r;
    next.p = checked_add(m.p, side.p);
    next.q = checked_add(m.q, side.q);
    Slope ns(next.p, next.q);
    if (!lookup(ns, next.t)) {
      next.t = side.t * m.t - far.t;
      store(ns, next.t);
    }
    if (left) {
      r = m;
    } else {
      l = m;
    }
    m = next;
  }
  return m.t;
}

}  // namespace

cplx trace_at_slope(const Character& c, const Slope& s, TraceCache& cache, int depth_cap) {
  cplx out;
  if (cache.lookup(s, out)) return out;
  return walk_traces(
      c.triple(), s, depth_cap, [&](const Slope& k, cplx& v) { return cache.lookup(k, v); },
      [&](const Slope& k, const cplx& v) { cache.store(k, v); });
}

cplx trace_at_slope(const TraceTriple& t, const Slope& s, int depth_cap) {
  return walk_traces(
      t, s, depth_cap, [](const Slope&, cplx&) { return false; }, [](const Slope&, const cplx&) {});
}

cplx acosh_branch(const cplx& w) {
  cplx v = std::acosh(w);
  if (v.real() < 0 || (v.real() == 0 && v.imag() < 0)) v = -v;
  // reduce the imaginary part into (-pi, pi]
  double im = std::remainder(v.imag(), 2 * std::numbers::pi);
  if (im <= -std::numbers::pi) im += 2 * std::numbers::pi;
  return {v.real() + 0.0, im + 0.0};
}

cplx complex_length(const cplx& t) {
  return 2.0 * acosh_branch(t / 2.0);
}

cplx half_length_exp(const cplx& t) {
  cplx root = std::sqrt(t * t - 4.0);
  cplx e1 = (t + root) / 2.0, e2 = (t - root) / 2.0;
  return std::abs(e1) >= std::abs(e2) ? e1 : e2;
}

Mat2c Mat2c::inverse() const {
  cplx dt = det();
  return {d / dt, -b / dt, -c / dt, a / dt};
}

double Mat2c::norm() const { return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d)); }

Mat2c operator*(const Mat2c& x, const Mat2c& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2c operator-(const Mat2c& x, const Mat2c& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }

namespace {

// eigenvalue pair of a trace: e + 1/e = t
cplx diag_root(const cplx& t) {
  cplx root = std::sqrt(t * t - 4.0);
  return (t + root) / 2.0;
}

MatrixPair check_pair(const MatrixPair& mp, const TraceTriple& t, double tol) {
  double scale = 1.0 + std::abs(t.x) + std::abs(t.y) + std::abs(t.z);
  double err = std::max({std::abs(mp.A.trace() - t.x), std::abs(mp.B.trace() - t.y),
                         std::abs((mp.A * mp.B).trace() - t.z), std::abs(mp.A.det() - 1.0),
                         std::abs(mp.B.det() - 1.0)});
  if (!(err <= std::max(tol, 1e-12) * scale * scale))
    throw OracleUnavailable("matrix normal form does not reproduce the triple (error " + std::to_string(err) + ")");
  return mp;
}

}  // namespace

MatrixPair realize_matrices(const TraceTriple& t, double tol) {
  if (std::abs(kappa(t) - 2.0) <= tol) {
    // reducible: simultaneous upper-triangular form, diagonal entries chosen to match tr AB
    cplx a = diag_root(t.x), b = diag_root(t.y);
    MatrixPair best{};
    double best_err = HUGE_VAL;
    for (cplx aa : {a, 1.0 / a})
      for (cplx bb : {b, 1.0 / b}) {
        double err = std::abs(aa * bb + 1.0 / (aa * bb) - t.z);
        if (err < best_err) {
          best_err = err;
          best = {{aa, 1.0, 0.0, 1.0 / aa}, {bb, 0.0, 0.0, 1.0 / bb}};
        }
      }
    return check_pair(best, t, tol);
  }
  // A = [[x,1],[-1,0]], B = [[0,s],[-1/s,y]] with s + 1/s = -z
  cplx root = std::sqrt(t.z * t.z - 4.0);
  cplx s = (-t.z + root) / 2.0;
  cplx s2 = (-t.z - root) / 2.0;
  if (std::abs(s2) > std::abs(s)) s = s2;
  if (std::abs(s) == 0.0) throw OracleUnavailable("degenerate normal form");
  MatrixPair mp{{t.x, 1.0, -1.0, 0.0}, {0.0, s, -1.0 / s, t.y}};
  return check_pair(mp, t, tol);
}

std::string format_complex(const cplx& z) {
  char buf[96];
  if (z.imag() == 0) {
    std::snprintf(buf, sizeof buf, "%.12g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  }
  return buf;
}

}  // namespace fricke
