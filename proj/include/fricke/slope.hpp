#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fricke {

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

// p/q in lowest terms with q >= 0; the point at infinity is 1/0.
// The built-in ordering is structural (for containers), not the order on the line;
// use compare_real for that.
class Slope {
 public:
  constexpr Slope() = default;
  Slope(Int p, Int q);

  static Slope infinity() { return Slope(1, 0); }

  Int num() const { return p_; }
  Int den() const { return q_; }
  bool is_infinity() const { return q_ == 0; }
  double to_double() const;

  std::string str() const;
  static Slope parse(std::string_view text);

  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope&, const Slope&) = default;

 private:
  Int p_ = 0;
  Int q_ = 1;
};

// sign of a - b on the extended line with 1/0 as the largest element
int compare_real(const Slope& a, const Slope& b);

// |p1 q2 - p2 q1| == 1
bool farey_adjacent(const Slope& a, const Slope& b);

struct FareyEdge {
  Slope a;
  Slope b;
};

struct FareyTriangle {
  Slope a;
  Slope b;
  Slope c;
};

// the unique slope d != third forming a Farey triangle with edge (a, b)
Slope farey_mediant_flip(const FareyEdge& edge, const Slope& third);

// oriented edge (left, right) seen from the triangle holding `behind`; `ahead` is across it
struct DirectedEdge {
  Slope left;
  Slope right;
  Slope behind;
  Slope ahead() const { return farey_mediant_flip({left, right}, behind); }
};

// the two edges leading further away, in the order (left, ahead) then (ahead, right)
std::pair<DirectedEdge, DirectedEdge> child_edges(const DirectedEdge& e);

FareyTriangle base_triangle();
// three outgoing edges of the base triangle, toward 1/2, 2/1 and -1/1
std::vector<DirectedEdge> base_edges();

constexpr int kDefaultDepthCap = 20;

// every slope of Farey depth <= depth, in breadth-first order, 3 * 2^depth of them
std::vector<Slope> enumerate_slopes(int depth, int depth_cap = kDefaultDepthCap);

enum class Letter : char { L = 'L', R = 'R' };

class LRWord {
 public:
  LRWord() = default;
  explicit LRWord(std::string_view letters);
  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return static_cast<Letter>(letters_[i]); }
  void push_back(Letter l) { letters_.push_back(static_cast<char>(l)); }
  friend bool operator==(const LRWord&, const LRWord&) = default;

 private:
  std::string letters_;
};

struct Matrix2i {
  Int a = 1, b = 0, c = 0, d = 1;

  Int det() const;
  Int trace() const;
  Matrix2i inverse() const;  // requires det = +-1
  Matrix2i operator-() const { return {-a, -b, -c, -d}; }
  friend bool operator==(const Matrix2i&, const Matrix2i&) = default;
  std::string str() const;
};

Matrix2i operator*(const Matrix2i& x, const Matrix2i& y);

inline Matrix2i matrix_R() { return {1, 1, 0, 1}; }
inline Matrix2i matrix_L() { return {1, 0, 1, 1}; }
Matrix2i word_matrix(const LRWord& w);

// (a p + b q) / (c p + d q), for det = +-1
Slope act_on_slope(const Matrix2i& m, const Slope& s);

// Where a slope sits in the Farey tree: base slopes have an empty word; positive slopes carry
// the Stern-Brocot path from 1/1 (L toward 0); negative slopes the mirrored path from -1/1
// (L toward 0 as well).
enum class Sector { Zero, Infinity, Positive, Negative };

struct FareyAddress {
  Sector sector = Sector::Zero;
  LRWord word;
  friend bool operator==(const FareyAddress&, const FareyAddress&) = default;
};

FareyAddress farey_address(const Slope& s, int depth_cap = 4096);
Slope slope_at_address(const FareyAddress& addr);
int farey_depth(const Slope& s);

// Stern-Brocot word of a positive slope (1/1 is the empty word)
LRWord stern_brocot_word(const Slope& s, int depth_cap = 4096);
Slope slope_from_word(const LRWord& w);

struct SlopeHash {
  std::size_t operator()(const Slope& s) const noexcept {
    return std::hash<Int>{}(s.num()) * 1000003u ^ std::hash<Int>{}(s.den());
  }
};

}  // namespace fricke
