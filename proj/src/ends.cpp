#include "fricke/ends.hpp"
#include "fricke/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <set>
#include <thread>

#include "fricke/bq.hpp"
#include "fricke/errors.hpp"
#include "fricke/tree_bounds.hpp"

namespace fricke {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double angle(const Slope& s) {
  return 2 * std::atan2(static_cast<double>(s.num()), static_cast<double>(s.den()));
}

double ccw(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d < 0) d += kTwoPi;
  return d;
}

// start angle and length of the arc
std::pair<double, double> arc(const FareyInterval& iv) {
  double a = angle(iv.left), b = angle(iv.right), c = angle(iv.behind);
  double len = ccw(a, b);
  if (ccw(a, c) < len) return {b, kTwoPi - len};
  return {a, len};
}

struct Node {
  DirectedEdge e;
  cplx tl, tr, tb;
};

struct Exploration {
  std::vector<Node> survivors;  // unpruned edges of the last layer reached
  std::vector<SurvivorLayer> layers;
  std::vector<std::pair<Slope, cplx>> seen;  // base slopes and every ahead vertex of a kept edge
  std::size_t pruned = 0;
  int depth_used = 0;
  bool capped = false;
};

Exploration explore(const TraceTriple& t, double K, int depth, std::size_t cap) {
  Exploration out;
  auto be = base_edges();
  // base triangle is (0/1, 1/1, 1/0); each base edge's behind vertex is the third one
  auto trace_of = [&](const Slope& s) {
    if (s == Slope(0, 1)) return t.x;
    if (s.is_infinity()) return t.y;
    return t.z;
  };
  out.seen = {{Slope(0, 1), t.x}, {Slope::infinity(), t.y}, {Slope(1, 1), t.z}};
  std::vector<Node> layer;
  for (const auto& e : be) layer.push_back({e, trace_of(e.left), trace_of(e.right), trace_of(e.behind)});

  for (int d = 0;; ++d) {
    // decide which edges of this layer survive
    std::vector<char> keep(layer.size(), 0);
    std::vector<cplx> ahead(layer.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        auto et = make_edge_traces(layer[i].tl, layer[i].tr, layer[i].tb);
        ahead[i] = et.ahead;
        auto esc = escape_check(et);
        keep[i] = !(esc.kind != EscapeKind::None && esc.floor >= K);
      }
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (layer.size() < 4096 || hw == 1) {
      work(0, layer.size());
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (layer.size() + hw - 1) / hw;
      for (unsigned w = 0; w < hw; ++w) {
        std::size_t lo = w * chunk, hi = std::min(layer.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (auto& th : pool) th.join();
    }

    std::vector<Node> alive;
    std::vector<cplx> alive_ahead;
    SurvivorLayer stats{d, 0, 0};
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (!keep[i]) {
        ++out.pruned;
        continue;
      }
      alive.push_back(layer[i]);
      alive_ahead.push_back(ahead[i]);
      stats.count++;
      stats.length += arc({layer[i].e.left, layer[i].e.right, layer[i].e.behind}).second;
    }
    out.layers.push_back(stats);
    out.depth_used = d;
    if (alive.empty() || d == depth) {
      out.survivors = std::move(alive);
      return out;
    }
    if (2 * alive.size() > cap) {
      out.capped = true;
      out.survivors = std::move(alive);
      return out;
    }
    std::vector<Node> next;
    next.reserve(2 * alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
      const auto& n = alive[i];
      auto [c1, c2] = child_edges(n.e);
      out.seen.emplace_back(c1.right, alive_ahead[i]);
      next.push_back({c1, n.tl, alive_ahead[i], n.tr});
      next.push_back({c2, alive_ahead[i], n.tr, n.tl});
    }
    layer = std::move(next);
  }
}

bool near_real(const cplx& z, double tol) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)); }

// the fan of curves adjacent to a vertex stays bounded: elliptic pivot, or parabolic with
// no linear drift. t0, t1 are consecutive fan traces.
bool bounded_fan(const cplx& pivot, const cplx& t0, const cplx& t1, double tol) {
  if (!near_real(pivot, tol)) return false;
  double p = pivot.real();
  if (std::abs(p) < 2 - tol) return true;
  if (std::abs(std::abs(p) - 2) > tol) return false;
  double lam = p > 0 ? 1.0 : -1.0;
  return std::abs(t1 - lam * t0) <= tol * std::max(1.0, std::abs(t0));
}

bool cantor_proxy(const std::vector<SurvivorLayer>& layers, int d) {
  if (d < 4) return false;
  const auto& a = layers[d / 4];
  const auto& b = layers[d / 2];
  const auto& c = layers[d];
  return c.count >= 2 && a.count <= b.count && b.count <= c.count && a.length > b.length && b.length > c.length;
}

bool in_closed_2(const cplx& t, double tol) { return near_real(t, tol) && std::abs(t.real()) <= 2 + tol; }
bool in_open_2(const cplx& t, double tol) { return near_real(t, tol) && std::abs(t.real()) < 2 - tol; }

}  // namespace

std::string end_class_name(EndClass c) {
  switch (c) {
    case EndClass::Empty: return "Empty";
    case EndClass::SingleCurve: return "SingleCurve";
    case EndClass::CantorLike: return "CantorLike";
    case EndClass::FullPL: return "FullPL";
    case EndClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

double interval_length(const FareyInterval& iv) { return arc(iv).second; }

bool interval_contains(const FareyInterval& iv, const Slope& s) {
  // exact: the arc is the one between left and right that misses behind
  if (in_increasing_arc(iv.left, iv.right, iv.behind, false, false))
    return in_increasing_arc(iv.right, iv.left, s, true, true);
  return in_increasing_arc(iv.left, iv.right, s, true, true);
}

std::vector<Slope> EndInvariantReport::rationals() const {
  std::vector<Slope> out;
  for (const auto& c : candidates)
    if (auto* s = std::get_if<Slope>(&c)) out.push_back(*s);
  return out;
}

std::vector<FareyInterval> EndInvariantReport::intervals() const {
  std::vector<FareyInterval> out;
  for (const auto& c : candidates)
    if (auto* s = std::get_if<FareyInterval>(&c)) out.push_back(*s);
  return out;
}

EndInvariantReport search_end_invariants(const Character& c, double K, int depth, std::size_t frontier_cap) {
  if (!(K > 0)) throw ArgumentError("bound K must be positive");
  if (depth < 0) throw ArgumentError("depth must be nonnegative");
  if (frontier_cap < 3) throw ArgumentError("frontier cap too small");
  auto ex = explore(c.triple(), K, depth, frontier_cap);
  if (ex.capped && ex.pruned > 0)
    throw ResourceLimitError("end invariant search frontier exceeded " + std::to_string(frontier_cap) +
                             " edges at depth " + std::to_string(ex.depth_used));

  EndInvariantReport r;
  r.bound = K;
  r.depth_used = ex.depth_used;
  r.layers = ex.layers;
  r.pruned = ex.pruned;
  if (ex.capped) r.notes.push_back("frontier cap reached at depth " + std::to_string(ex.depth_used));

  const double tol = c.tol();
  std::set<Slope> rational;
  for (const auto& n : ex.survivors) {
    auto et = make_edge_traces(n.tl, n.tr, n.tb);
    if (std::abs(n.tl) < K && bounded_fan(n.tl, n.tr, et.ahead, tol)) rational.insert(n.e.left);
    if (std::abs(n.tr) < K && bounded_fan(n.tr, n.tl, et.ahead, tol)) rational.insert(n.e.right);
  }
  std::vector<Slope> rats(rational.begin(), rational.end());
  std::sort(rats.begin(), rats.end(), [](const Slope& a, const Slope& b) { return compare_real(a, b) < 0; });
  std::vector<FareyInterval> ivs;
  for (const auto& n : ex.survivors) ivs.push_back({n.e.left, n.e.right, n.e.behind});
  std::sort(ivs.begin(), ivs.end(), [](const FareyInterval& a, const FareyInterval& b) {
    auto x = arc(a), y = arc(b);
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  for (const auto& s : rats) r.candidates.emplace_back(s);
  for (const auto& iv : ivs) r.candidates.emplace_back(iv);

  const int d = ex.depth_used;
  if (ex.survivors.empty()) {
    r.classification = EndClass::Empty;
    r.theorem_basis = "search:every-branch-escapes";
  } else if (ex.pruned == 0) {
    r.classification = EndClass::FullPL;
    r.theorem_basis = "search:no-branch-escapes";
  } else if (rats.size() == 1 && std::all_of(ex.survivors.begin(), ex.survivors.end(), [&](const Node& n) {
               return n.e.left == rats[0] || n.e.right == rats[0];
             })) {
    r.classification = EndClass::SingleCurve;
    r.theorem_basis = "search:single-accumulation-point";
  } else if (cantor_proxy(ex.layers, d)) {
    r.classification = EndClass::CantorLike;
    r.theorem_basis = "search:cantor-proxy";
    r.notes.push_back("cantor-like is a finite proxy: survivors nondecreasing, total length shrinking");
  }
  return r;
}

std::vector<std::pair<Slope, cplx>> traces_to_depth(const TraceTriple& t, int depth) {
  // nothing is ever pruned with K = +inf
  auto ex = explore(t, std::numeric_limits<double>::infinity(), depth, std::numeric_limits<std::size_t>::max());
  return ex.seen;
}

bool su2_proxy(const Character& c, int depth) {
  if (!c.tags().has(CharacterClass::Real)) return false;
  for (const auto& [s, tr] : traces_to_depth(c.triple(), depth))
    if (!in_closed_2(tr, c.tol())) return false;
  return true;
}

bool discrete_proxy(const Character& c, int depth) {
  std::vector<cplx> vals;
  for (const auto& p : traces_to_depth(c.triple(), depth)) vals.push_back(p.second);
  std::sort(vals.begin(), vals.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const double tol = c.tol();
  // drop repeats, then look for a pair of distinct values closer than 10 tol
  std::vector<cplx> distinct;
  for (const auto& v : vals) {
    bool dup = false;
    for (auto it = distinct.rbegin(); it != distinct.rend() && v.real() - it->real() <= tol; ++it)
      if (std::abs(v - *it) <= tol) dup = true;
    if (!dup) distinct.push_back(v);
  }
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size() && distinct[j].real() - distinct[i].real() <= 10 * tol; ++j)
      if (std::abs(distinct[j] - distinct[i]) <= 10 * tol) return false;
  return true;
}

EndInvariantReport classify_end_set(const Character& c, long fuel) {
  if (fuel <= 0) throw ArgumentError("fuel must be positive");
  const double tol = c.tol();
  const cplx kap = c.kappa();
  const auto& tags = c.tags();
  std::size_t cap = static_cast<std::size_t>(std::clamp<long>(fuel, 1024, 1L << 20));

  auto search = [&](EndInvariantReport& out) -> bool {
    try {
      out = search_end_invariants(c, kDefaultEndBound, kDefaultEndDepth, cap);
      return true;
    } catch (const ResourceLimitError& e) {
      out = EndInvariantReport{};
      out.bound = kDefaultEndBound;
      out.notes.push_back(e.what());
      return false;
    }
  };
  auto finish = [](EndInvariantReport r, EndClass cls, std::string basis) {
    r.classification = cls;
    r.theorem_basis = std::move(basis);
    if (cls == EndClass::Empty) r.candidates.clear();
    return r;
  };

  // the whole line, as the three arcs beyond the base triangle
  auto whole = [&] {
    EndInvariantReport r;
    r.bound = kDefaultEndBound;
    for (const auto& e : base_edges()) r.candidates.emplace_back(FareyInterval{e.left, e.right, e.behind});
    return r;
  };

  EndInvariantReport s;
  if (tags.has(CharacterClass::Dihedral)) return finish(whole(), EndClass::FullPL, "dihedral");

  if (tags.has(CharacterClass::Reducible)) {
    bool all_bounded = true;
    for (const auto& [sl, tr] : traces_to_depth(c.triple(), 10))
      if (!in_closed_2(tr, tol)) all_bounded = false;
    if (all_bounded) return finish(whole(), EndClass::FullPL, "reducible:all-traces-in-[-2,2]");
    search(s);
    if (s.classification == EndClass::SingleCurve) return finish(s, EndClass::SingleCurve, "reducible:single-end");
    s.notes.push_back("reducible character: a single end invariant is expected but was not located as a curve");
    return finish(s, EndClass::Unknown, "reducible:single-end");
  }

  if (su2_proxy(c)) {
    s = whole();
    s.notes.push_back("su(2) detected by a depth-10 trace proxy");
    return finish(s, EndClass::FullPL, "su2-proxy");
  }

  auto ext = decide_extended_bq(c, fuel);
  if (ext.status == BqStatus::Satisfies) {
    EndInvariantReport r;
    r.bound = kDefaultEndBound;
    r.notes.push_back("extended conditions certified with " + std::to_string(ext.certificate->triangles.size()) +
                      " triangles");
    if (tags.has(CharacterClass::Real) && kap.real() >= 2 && kap.real() < 18)
      r.notes.push_back("real kappa in [2,18) should not admit an empty set");
    return finish(r, EndClass::Empty, "extended-bq");
  }

  bool searched = search(s);

  if (tags.has(CharacterClass::Real)) {
    // small traces: curves with trace in (-2,2), collected by a K = 2 exploration
    auto ex = explore(c.triple(), 2.0, 16, cap);
    std::set<Slope> small;
    for (const auto& [sl, tr] : ex.seen)
      if (in_open_2(tr, tol)) small.insert(sl);
    double k = kap.real();
    if (small.size() >= 2) {
      // a trace outside [-2,2] rules out su(2); so does any outside (-2,2) u {+-sqrt(k+2)}
      double root = k + 2 >= 0 ? std::sqrt(k + 2) : -1;
      bool outside = false;
      for (const auto& [sl, tr] : traces_to_depth(c.triple(), 8)) {
        double v = tr.real();
        if (std::abs(v) >= 2 - tol && !(root >= 0 && std::abs(std::abs(v) - root) <= tol)) outside = true;
      }
      if (outside && k > 2) return finish(s, EndClass::CantorLike, "real:two-small-traces");
      s.notes.push_back(outside ? "two small traces but kappa <= 2" : "no trace found outside the allowed set");
      return finish(s, EndClass::Unknown, "real");
    }
    if (small.size() == 1 && searched && s.classification == EndClass::SingleCurve &&
        s.rationals().front() == *small.begin()) {
      if (k >= 6) return finish(s, EndClass::SingleCurve, "real:single-small-trace");
      s.notes.push_back("single small trace found but kappa < 6");
      return finish(s, EndClass::Unknown, "real");
    }
    s.notes.push_back("real character not resolved at depth " + std::to_string(ex.depth_used));
    return finish(s, EndClass::Unknown, "real");
  }

  if (tags.has(CharacterClass::Imaginary) && near_real(kap, tol)) {
    double k = kap.real();
    if (!searched) return finish(s, EndClass::Unknown, "imaginary");
    if (s.classification == EndClass::CantorLike) return finish(s, EndClass::CantorLike, "imaginary:cantor");
    if (s.classification == EndClass::SingleCurve) {
      if (std::abs(k + 2) > tol) {
        if (k < 2) return finish(s, EndClass::SingleCurve, "imaginary:single-curve");
        s.notes.push_back("imaginary character with kappa >= 2 is outside the classified range");
        return finish(s, EndClass::Unknown, "imaginary");
      }
      // cusped case: the curve has trace 0 and the character is (0, x, ix) with |x| >= 2
      // around it; the fan traces around a trace-0 curve cycle through +-x, +-ix
      Slope X = s.rationals().front();
      TraceCache cache(c.triple());
      cplx tx = trace_at_slope(c, X, cache);
      bool normal = false;
      if (std::abs(tx) <= 1e3 * tol) {
        for (const auto& [sl, tr] : traces_to_depth(c.triple(), 12)) {
          if (!farey_adjacent(sl, X)) continue;
          cplx other = tr * cplx(0, 1);
          if ((near_real(tr, tol) && std::abs(tr.real()) >= 2 - tol) ||
              (near_real(other, tol) && std::abs(other.real()) >= 2 - tol))
            normal = true;
        }
      }
      if (normal) return finish(s, EndClass::SingleCurve, "imaginary:cusped-normal-form");
      s.notes.push_back("single accumulation point without the (0, x, ix) normal form");
      return finish(s, EndClass::Unknown, "imaginary");
    }
    if (s.classification == EndClass::Empty && k < -14)
      s.notes.push_back("search empty at this bound but the extended conditions were not certified");
    return finish(s, EndClass::Unknown, "imaginary");
  }

  if (searched && s.candidates.size() >= 3 && discrete_proxy(c)) {
    s.notes.push_back("discreteness detected by a depth-10 trace gap proxy");
    if (s.classification == EndClass::FullPL) return finish(s, EndClass::FullPL, "discrete");
    if (s.classification == EndClass::CantorLike) return finish(s, EndClass::CantorLike, "discrete");
    return finish(s, EndClass::Unknown, "discrete");
  }
  return finish(s, EndClass::Unknown, "none");
}

}  // namespace fricke
