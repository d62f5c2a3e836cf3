#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "fricke/errors.hpp"
#include "fricke/slope.hpp"
#include "oracles.hpp"

using namespace fricke;

namespace {

Int det2(const Slope& a, const Slope& b) { return a.num() * b.den() - b.num() * a.den(); }

}  // namespace

TEST_CASE("slopes are stored in lowest terms with q >= 0") {
  CHECK(Slope(2, 4) == Slope(1, 2));
  CHECK(Slope(3, -6).num() == -1);
  CHECK(Slope(3, -6).den() == 2);
  CHECK(Slope(-5, 0) == Slope::infinity());
  CHECK(Slope(7, 0).num() == 1);
  CHECK_THROWS_AS(Slope(0, 0), ArgumentError);
  CHECK(Slope::parse("-2/5") == Slope(-2, 5));
  CHECK(Slope::parse("3") == Slope(3, 1));
  CHECK(Slope::parse("1/0").is_infinity());
  CHECK_THROWS_AS(Slope::parse("1/x"), ArgumentError);
  CHECK_THROWS_AS(Slope::parse(""), ArgumentError);
  CHECK(Slope(-3, 7).str() == "-3/7");
  CHECK(Slope::infinity().str() == "1/0");
}

TEST_CASE("checked integer arithmetic reports overflow") {
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_mul(Int{1} << 40, Int{1} << 40), OverflowError);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), OverflowError);
  CHECK_THROWS_AS(checked_sub(INT64_MIN + 1, 2), OverflowError);
}

TEST_CASE("enumeration by depth") {
  auto d0 = enumerate_slopes(0);
  REQUIRE(d0.size() == 3);
  CHECK(std::set<Slope>(d0.begin(), d0.end()) == std::set<Slope>{Slope(0, 1), Slope(1, 0), Slope(1, 1)});

  auto d1 = enumerate_slopes(1);
  CHECK(std::set<Slope>(d1.begin(), d1.end()) ==
        std::set<Slope>{Slope(0, 1), Slope(1, 0), Slope(1, 1), Slope(1, 2), Slope(2, 1), Slope(-1, 1)});

  auto d2 = enumerate_slopes(2);
  CHECK(d2.size() == 12);
  for (auto s : {Slope(1, 3), Slope(3, 1), Slope(2, 3), Slope(3, 2)})
    CHECK(std::find(d2.begin(), d2.end(), s) != d2.end());

  CHECK_THROWS_AS(enumerate_slopes(21), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_slopes(-1), ArgumentError);
}

TEST_CASE("enumeration is nested, duplicate free, reduced and of size 3 * 2^d") {
  for (int d = 0; d < 12; ++d) {
    auto a = enumerate_slopes(d), b = enumerate_slopes(d + 1);
    std::set<Slope> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    CHECK(sa.size() == a.size());
    CHECK(a.size() == (std::size_t{3} << d));
    CHECK(std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
    CHECK(std::equal(a.begin(), a.end(), b.begin()));  // breadth-first prefix
    for (const auto& s : a) CHECK(std::gcd(s.num(), s.den()) == 1);
  }
}

TEST_CASE("farey mediant flip") {
  CHECK(farey_mediant_flip({Slope(0, 1), Slope(1, 0)}, Slope(1, 1)) == Slope(-1, 1));
  CHECK(farey_mediant_flip({Slope(0, 1), Slope(1, 1)}, Slope(1, 0)) == Slope(1, 2));
  CHECK(farey_mediant_flip({Slope(0, 1), Slope(1, 1)}, Slope(1, 2)) == Slope(1, 0));
  CHECK_THROWS_AS(farey_mediant_flip({Slope(0, 1), Slope(2, 1)}, Slope(1, 1)), InvalidTriangleError);
  CHECK_THROWS_AS(farey_mediant_flip({Slope(0, 1), Slope(1, 1)}, Slope(2, 1)), InvalidTriangleError);
}

TEST_CASE("every triangle to depth 10 is unimodular and the flip is an involution on each edge") {
  std::vector<DirectedEdge> layer = base_edges();
  for (int d = 0; d <= 10; ++d) {
    std::vector<DirectedEdge> next;
    for (const auto& e : layer) {
      Slope a = e.ahead();
      for (auto [u, v] : {std::pair{e.left, e.right}, std::pair{e.left, a}, std::pair{a, e.right}})
        CHECK(std::abs(det2(u, v)) == 1);
      CHECK(std::abs(det2(e.left, e.behind)) == 1);
      CHECK(farey_mediant_flip({e.left, e.right}, a) == e.behind);
      CHECK(farey_mediant_flip({a, e.right}, farey_mediant_flip({a, e.right}, e.left)) == e.left);
      auto [c1, c2] = child_edges(e);
      next.push_back(c1);
      next.push_back(c2);
    }
    layer = std::move(next);
  }
}

TEST_CASE("act_on_slope examples") {
  Matrix2i id{1, 0, 0, 1}, m{2, 1, 1, 1};
  CHECK(act_on_slope(id, Slope(3, 5)) == Slope(3, 5));
  CHECK(act_on_slope(m, Slope(0, 1)) == Slope(1, 1));
  CHECK(act_on_slope(m, Slope(1, 0)) == Slope(2, 1));
  CHECK(act_on_slope(Matrix2i{0, 1, 1, 0}, Slope(2, 3)) == Slope(3, 2));
  CHECK_THROWS_AS(act_on_slope(Matrix2i{2, 0, 0, 1}, Slope(1, 1)), ArgumentError);
}

TEST_CASE("act_on_slope is a group action preserving adjacency") {
  oracle::Gen g(11);
  auto random_matrix = [&] {
    // products of elementary matrices keep |det| = 1 with small entries
    Matrix2i m{1, 0, 0, 1};
    for (;;) {
      Matrix2i step = g.integer(0, 1) ? Matrix2i{1, g.integer(-3, 3), 0, 1} : Matrix2i{1, 0, g.integer(-3, 3), 1};
      if (g.integer(0, 4) == 0) step = Matrix2i{0, 1, 1, 0};
      Matrix2i next = m * step;
      if (std::max({std::abs(next.a), std::abs(next.b), std::abs(next.c), std::abs(next.d)}) > 50) return m;
      m = next;
    }
  };
  for (int i = 0; i < 200; ++i) {
    Matrix2i a = random_matrix(), b = random_matrix();
    Slope s(g.integer(-50, 50), g.integer(0, 50) + (i % 7 == 0 ? 0 : 1));
    CHECK(act_on_slope(a * b, s) == act_on_slope(a, act_on_slope(b, s)));
    Slope t = farey_mediant_flip({Slope(0, 1), Slope(1, 0)}, Slope(1, 1));
    CHECK(farey_adjacent(act_on_slope(a, Slope(0, 1)), act_on_slope(a, t)));
  }
}

TEST_CASE("stern-brocot words") {
  CHECK(stern_brocot_word(Slope(1, 1)).empty());
  CHECK(stern_brocot_word(Slope(1, 2)).str() == "L");
  CHECK(stern_brocot_word(Slope(2, 1)).str() == "R");
  CHECK(stern_brocot_word(Slope(2, 5)).str() == "LLR");
  CHECK(slope_from_word(LRWord("LLR")) == Slope(2, 5));
}

TEST_CASE("word length matches the continued fraction depth and round-trips") {
  oracle::Gen g(3);
  for (int i = 0; i < 500; ++i) {
    Int q = g.integer(1, 400), p = g.integer(1, 400);
    Slope s(p, q);
    auto w = stern_brocot_word(s);
    CHECK(static_cast<int>(w.size()) == oracle::stern_brocot_depth(s.num(), s.den()));
    CHECK(slope_from_word(w) == s);
    auto addr = farey_address(s);
    CHECK(slope_at_address(addr) == s);
    Slope n(-p, q);
    CHECK(slope_at_address(farey_address(n)) == n);
  }
  for (auto s : {Slope(0, 1), Slope(1, 0), Slope(1, 1)}) CHECK(farey_depth(s) == 0);
  CHECK(farey_depth(Slope(2, 5)) == 3);
  CHECK(farey_depth(Slope(-1, 1)) == 1);
}

TEST_CASE("farey depth agrees with the enumeration") {
  auto all = enumerate_slopes(9);
  auto prev = enumerate_slopes(8);
  std::set<Slope> old(prev.begin(), prev.end());
  for (const auto& s : all) {
    if (old.count(s)) CHECK(farey_depth(s) <= 8);
    else CHECK(farey_depth(s) == 9);
  }
}

TEST_CASE("word matrices") {
  CHECK(word_matrix(LRWord("RL")) == Matrix2i{2, 1, 1, 1});
  CHECK(word_matrix(LRWord("LR")) == Matrix2i{1, 1, 1, 2});
  CHECK(word_matrix(LRWord("")) == Matrix2i{1, 0, 0, 1});
  CHECK(word_matrix(LRWord("RRLL")) == Matrix2i{5, 2, 2, 1});
  CHECK_THROWS_AS(LRWord("RLX"), ArgumentError);
}
