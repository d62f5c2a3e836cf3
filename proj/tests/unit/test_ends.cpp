#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "fricke/bq.hpp"
#include "fricke/ends.hpp"
#include "fricke/errors.hpp"
#include "fricke/mapping_class.hpp"
#include "oracles.hpp"

using namespace fricke;

namespace {

const cplx I(0, 1);

// the arc of `inner` lies inside the arc of `outer`
bool nested(const FareyInterval& inner, const FareyInterval& outer) {
  if (!interval_contains(outer, inner.left) || !interval_contains(outer, inner.right)) return false;
  return interval_length(inner) <= interval_length(outer) + 1e-12;
}

cplx matrix_trace(const TraceTriple& t, const Slope& s) {
  return oracle::word_trace(realize_matrices(t), s.num(), s.den());
}

}  // namespace

TEST_CASE("farey intervals") {
  FareyInterval upper{Slope(0, 1), Slope(1, 0), Slope(-1, 1)};
  CHECK(interval_length(upper) == doctest::Approx(std::numbers::pi));
  CHECK(interval_contains(upper, Slope(1, 1)));
  CHECK(interval_contains(upper, Slope(0, 1)));
  CHECK_FALSE(interval_contains(upper, Slope(-1, 2)));
  FareyInterval lower{Slope(0, 1), Slope(1, 0), Slope(1, 1)};
  CHECK(interval_contains(lower, Slope(-3, 2)));
  CHECK_FALSE(interval_contains(lower, Slope(3, 2)));
  CHECK(interval_length(lower) + interval_length(upper) == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("classification examples") {
  struct Case {
    TraceTriple t;
    EndClass expect;
  };
  for (const auto& [t, expect] : {Case{{3, 3, 3}, EndClass::Empty}, Case{{0, 3, 3.0 * I}, EndClass::SingleCurve},
                                  Case{{0, 0, 3}, EndClass::FullPL}, Case{{2, 2, 2}, EndClass::FullPL},
                                  Case{{1, 1, 1}, EndClass::FullPL}}) {
    auto r = classify_end_set(Character(t), 100000);
    CHECK(r.classification == expect);
    CHECK(r.theorem_basis != "none");
  }
  auto s = classify_end_set(Character({0, 3, 3.0 * I}), 100000);
  CHECK(s.rationals() == std::vector<Slope>{Slope(0, 1)});
  CHECK(classify_end_set(Character({3, 3, 3}), 100000).candidates.empty());
  auto full = classify_end_set(Character({0, 0, 3}), 100000);
  double total = 0;
  for (const auto& iv : full.intervals()) total += interval_length(iv);
  CHECK(total == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("search patterns") {
  auto e = search_end_invariants(Character({3, 3, 3}), 2.5, 20);
  CHECK(e.classification == EndClass::Empty);
  auto s = search_end_invariants(Character({0, 3, 3.0 * I}), 2.5, 30);
  CHECK(s.classification == EndClass::SingleCurve);
  CHECK(s.rationals() == std::vector<Slope>{Slope(0, 1)});
  auto f = search_end_invariants(Character({1, 1, 1}), 2.5, 10);
  CHECK(f.classification == EndClass::FullPL);
  CHECK(f.pruned == 0);
  CHECK(f.intervals().size() == 3u << 10);
  CHECK_THROWS_AS(search_end_invariants(Character({3, 3, 3}), 0, 10), ArgumentError);
  CHECK_THROWS_AS(search_end_invariants(Character({3, 3, 3}), 2.5, -1), ArgumentError);
}

TEST_CASE("dropped branches hold no small traces") {
  // brute force: a small trace strictly beyond the search frontier sits inside a surviving interval
  oracle::Gen g(90);
  auto frontier = enumerate_slopes(9), deep = enumerate_slopes(12);
  std::set<Slope> shallow(frontier.begin(), frontier.end());
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    TraceTriple t = i % 2 ? g.triple_disk(2.5) : TraceTriple{g.uniform(-1.9, 1.9), g.disk(3), g.disk(3)};
    Character c(t);
    EndInvariantReport r;
    try {
      r = search_end_invariants(c, 2.5, 8);
    } catch (const ResourceLimitError&) {
      continue;
    }
    auto ivs = r.intervals();
    for (const auto& s : deep) {
      if (shallow.count(s) || std::abs(trace_at_slope(t, s)) >= 2.5) continue;
      ++checked;
      CHECK(std::any_of(ivs.begin(), ivs.end(), [&](const FareyInterval& iv) { return interval_contains(iv, s); }));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("candidates grow with the bound") {
  oracle::Gen g(91);
  int compared = 0;
  for (int i = 0; i < 40; ++i) {
    TraceTriple t = i % 2 ? g.triple_disk(3) : TraceTriple{g.uniform(-1.9, 1.9), g.disk(3), g.disk(3)};
    Character c(t);
    EndInvariantReport a, b;
    try {
      a = search_end_invariants(c, 2.2, 10);
      b = search_end_invariants(c, 3.0, 10);
    } catch (const ResourceLimitError&) {
      continue;
    }
    ++compared;
    auto bi = b.intervals();
    for (const auto& iv : a.intervals())
      CHECK(std::any_of(bi.begin(), bi.end(), [&](const FareyInterval& o) { return nested(iv, o); }));
    for (const auto& s : a.rationals()) {
      bool inside = std::any_of(bi.begin(), bi.end(), [&](const FareyInterval& o) { return interval_contains(o, s); });
      auto br = b.rationals();
      CHECK((inside || std::find(br.begin(), br.end(), s) != br.end()));
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("candidates move with the mapping class") {
  oracle::Gen g(92);
  for (double y : {2.5, 3.0, 4.0}) {
    TraceTriple t{0, y, y * I};
    for (int i = 0; i < 6; ++i) {
      LRWord w(g.lr_word(4, 1));
      Matrix2i m = word_matrix(w);
      auto a = search_end_invariants(Character(t), 2.5, 30);
      auto b = search_end_invariants(Character(apply_mapping_class(t, w)), 2.5, 30);
      std::vector<Slope> moved;
      for (const auto& s : a.rationals()) moved.push_back(act_on_slope(m, s));
      std::sort(moved.begin(), moved.end());
      CHECK(b.rationals() == moved);
      CHECK(a.classification == b.classification);
    }
  }
  // characters without ends stay without ends
  for (int i = 0; i < 10; ++i) {
    TraceTriple t{g.uniform(3, 5), g.uniform(3, 5), g.uniform(3, 5)};
    if (decide_extended_bq(Character(t), 10000).status != BqStatus::Satisfies) continue;
    auto b = search_end_invariants(Character(apply_mapping_class(t, LRWord(g.lr_word(5)))), 2.5, 20);
    CHECK(b.candidates.empty());
  }
}

TEST_CASE("single curve reports carry a small rational") {
  oracle::Gen g(93);
  int seen = 0;
  for (int i = 0; i < 30; ++i) {
    double y = g.uniform(2.1, 6);
    TraceTriple t = apply_mapping_class(TraceTriple{0, y, y * I}, LRWord(g.lr_word(3)));
    auto r = classify_end_set(Character(t), 100000);
    if (r.classification != EndClass::SingleCurve) continue;
    ++seen;
    auto rat = r.rationals();
    CHECK(std::any_of(rat.begin(), rat.end(), [&](const Slope& s) { return std::abs(matrix_trace(t, s)) < r.bound; }));
  }
  CHECK(seen > 10);
}

TEST_CASE("empty end set exactly when the extended conditions hold") {
  oracle::Gen g(94);
  int compared = 0;
  for (int i = 0; i < 50; ++i) {
    TraceTriple t;
    switch (i % 3) {
      case 0: t = g.triple_disk(5); break;
      case 1: t = apply_mapping_class(TraceTriple{g.uniform(-1.9, 1.9), g.disk(4), g.disk(4)}, LRWord(g.lr_word(3))); break;
      default: t = g.triple_real(2.1, 4); break;
    }
    Character c(t);
    auto v = decide_extended_bq(c, 20000);
    if (v.status == BqStatus::Inconclusive) continue;
    EndInvariantReport r;
    try {
      r = classify_end_set(c, 100000);
    } catch (const ResourceLimitError&) {
      // the search gave up; say nothing either way
      CHECK(v.status == BqStatus::Fails);
      continue;
    }
    ++compared;
    CHECK((r.classification == EndClass::Empty) == (v.status == BqStatus::Satisfies));
  }
  CHECK(compared >= 30);
}

TEST_CASE("proxies") {
  CHECK(su2_proxy(Character({1, 1, 1})));
  CHECK(su2_proxy(Character({0, 0, 0})));
  CHECK_FALSE(su2_proxy(Character({3, 3, 3})));
  CHECK_FALSE(su2_proxy(Character({1, 1, cplx(1, 0.1)})));
  CHECK(discrete_proxy(Character({3, 3, 3})));
  auto tr = traces_to_depth({3, 3, 3}, 2);
  CHECK(tr.size() == 12);
  for (const auto& [s, v] : tr) CHECK(std::abs(v - trace_at_slope(TraceTriple{3, 3, 3}, s)) < 1e-12);
}

TEST_CASE("traces to depth cover the enumeration") {
  for (int d : {0, 1, 5, 9}) {
    auto tr = traces_to_depth({3, 3, 4}, d);
    auto sl = enumerate_slopes(d);
    std::set<Slope> a, b(sl.begin(), sl.end());
    for (const auto& p : tr) a.insert(p.first);
    CHECK(a == b);
    CHECK(tr.size() == sl.size());
  }
}
