#pragma once

#include <array>
#include <complex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fricke/slope.hpp"

namespace fricke {

using cplx = std::complex<double>;

constexpr double kDefaultClassTol = 1e-9;

// traces at slopes 0/1, 1/0, 1/1
struct TraceTriple {
  cplx x, y, z;
  cplx& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const cplx& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

cplx kappa(const TraceTriple& t);

enum class Coord { X = 0, Y = 1, Z = 2 };
TraceTriple markov_flip(const TraceTriple& t, Coord c);

enum class CharacterClass : unsigned { Real = 1, Imaginary = 2, Dihedral = 4, Reducible = 8, Generic = 16 };

class ClassTags {
 public:
  void add(CharacterClass c) { bits_ |= static_cast<unsigned>(c); }
  bool has(CharacterClass c) const { return (bits_ & static_cast<unsigned>(c)) != 0; }
  std::vector<std::string> names() const;
  friend bool operator==(const ClassTags&, const ClassTags&) = default;

 private:
  unsigned bits_ = 0;
};

std::string class_name(CharacterClass c);

ClassTags classify_character(const TraceTriple& t, double tol = kDefaultClassTol);

class Character {
 public:
  explicit Character(const TraceTriple& t, double tol = kDefaultClassTol);
  const TraceTriple& triple() const { return triple_; }
  cplx kappa() const { return kappa_; }
  const ClassTags& tags() const { return tags_; }
  double tol() const { return tol_; }

 private:
  TraceTriple triple_;
  cplx kappa_;
  ClassTags tags_;
  double tol_;
};

// memo of traces keyed by slope; seeded with the base triple
class TraceCache {
 public:
  explicit TraceCache(const TraceTriple& t);
  const TraceTriple& triple() const { return triple_; }
  bool lookup(const Slope& s, cplx& out) const;
  void store(const Slope& s, const cplx& v) { map_[s] = v; }
  std::size_t size() const { return map_.size(); }

 private:
  TraceTriple triple_;
  std::unordered_map<Slope, cplx, SlopeHash> map_;
};

// trace of the simple closed curve with slope s, by walking the Farey tree from the base triangle
cplx trace_at_slope(const Character& c, const Slope& s, TraceCache& cache, int depth_cap = 4096);
cplx trace_at_slope(const TraceTriple& t, const Slope& s, int depth_cap = 4096);

// 2 acosh(t/2) normalised to Re >= 0 (Im >= 0 when Re = 0) and Im in (-pi, pi]
cplx complex_length(const cplx& t);
// acosh(w) on the same branch as complex_length uses
cplx acosh_branch(const cplx& w);
// the larger-modulus root of e^2 - t e + 1 = 0, i.e. e^{l/2}
cplx half_length_exp(const cplx& t);

// 2x2 complex matrix, row major
struct Mat2c {
  cplx a, b, c, d;
  cplx trace() const { return a + d; }
  cplx det() const { return a * d - b * c; }
  Mat2c inverse() const;
  double norm() const;
};
Mat2c operator*(const Mat2c& x, const Mat2c& y);
Mat2c operator-(const Mat2c& x, const Mat2c& y);

struct MatrixPair {
  Mat2c A;  // image of X, trace x
  Mat2c B;  // image of Y, trace y; tr(AB) = z
};

// SL(2,C) matrices realising the character (up to conjugation)
MatrixPair realize_matrices(const TraceTriple& t, double tol = kDefaultClassTol);

std::string format_complex(const cplx& z);

}  // namespace fricke
