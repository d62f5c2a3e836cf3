#include "fricke/bq.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

#include "fricke/errors.hpp"

namespace fricke {

std::string status_name(BqStatus s) {
  switch (s) {
    case BqStatus::Satisfies:
      return "Satisfies";
    case BqStatus::Fails:
      return "Fails";
    case BqStatus::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string evidence_name(Evidence e) {
  switch (e) {
    case Evidence::ForbiddenTrace:
      return "forbidden-trace";
    case Evidence::ReducibleKappa:
      return "reducible-kappa";
    case Evidence::PeriodicBoundedOrbit:
      return "periodic-bounded-orbit";
  }
  return "?";
}

bool in_forbidden_set(const cplx& t, BqVariant v, double tol) {
  if (std::abs(t.imag()) > tol) return false;
  if (v == BqVariant::Standard) return std::abs(t.real()) <= 2.0 + tol;
  return std::abs(t.real()) < 2.0 - tol;
}

namespace {

constexpr double kPeriodTol = 1e-12;
constexpr int kMaxPeriod = 64;

struct Tri {
  std::array<Slope, 3> s;
  std::array<cplx, 3> t;
};

struct QueuedEdge {
  DirectedEdge e;
  cplx tl, tr, tb;
};

double scale_of(const cplx& a, const cplx& b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

// Follows the fan around `pivot` starting from the consecutive neighbours (n0, n1).
// Returns the fan slopes of one period plus the first repeat when the trace pair comes back.
std::optional<std::vector<std::pair<Slope, cplx>>> periodic_fan(const Slope& pivot, const cplx& tp, const Slope& n0,
                                                                const cplx& t0, const Slope& n1, const cplx& t1) {
  std::vector<std::pair<Slope, cplx>> fam{{n0, t0}, {n1, t1}};
  Slope prev = n0, cur = n1;
  cplx tprev = t0, tcur = t1;
  for (int k = 0; k < kMaxPeriod; ++k) {
    Slope next = farey_mediant_flip({pivot, cur}, prev);
    cplx tnext = tp * tcur - tprev;
    prev = cur;
    tprev = tcur;
    cur = next;
    tcur = tnext;
    double sc = scale_of(t0, t1);
    if (std::abs(tprev - t0) <= kPeriodTol * sc && std::abs(tcur - t1) <= kPeriodTol * sc) {
      return fam;  // last entry repeats the first trace
    }
    fam.push_back({cur, tcur});
  }
  return std::nullopt;
}

bool flip_fixed(const TraceTriple& t) {
  for (int i = 0; i < 3; ++i) {
    TraceTriple f = markov_flip(t, static_cast<Coord>(i));
    if (std::abs(f[i] - t[i]) > kPeriodTol * std::max(1.0, std::abs(t[i]))) return false;
  }
  return true;
}

BqVerdict fails_with(BqVerdict out, BqWitness w) {
  out.status = BqStatus::Fails;
  out.witness = std::move(w);
  return out;
}

}  // namespace

BqVerdict decide(const Character& c, long fuel, BqVariant v) {
  if (fuel <= 0) throw ArgumentError("fuel must be positive");
  BqVerdict out;
  out.variant = v;
  const TraceTriple& base = c.triple();
  auto tri0 = base_triangle();

  if (v == BqVariant::Extended && flip_fixed(base)) {
    double lo = std::min({std::abs(base.x), std::abs(base.y), std::abs(base.z)});
    if (lo <= 2.0 + c.tol()) {
      BqWitness w;
      w.evidence = Evidence::PeriodicBoundedOrbit;
      w.trace = std::abs(base.x) <= std::abs(base.y) ? (std::abs(base.x) <= std::abs(base.z) ? base.x : base.z)
                                                     : (std::abs(base.y) <= std::abs(base.z) ? base.y : base.z);
      w.family = {tri0.a, tri0.b, tri0.c};
      return fails_with(out, w);
    }
  }
  if (std::abs(c.kappa() - 2.0) <= c.tol()) {
    BqWitness w;
    w.evidence = Evidence::ReducibleKappa;
    w.trace = c.kappa();
    return fails_with(out, w);
  }

  Tri cur{{tri0.a, tri0.b, tri0.c}, {base.x, base.y, base.z}};
  for (int i = 0; i < 3; ++i)
    if (in_forbidden_set(cur.t[i], v, c.tol())) return fails_with(out, {Evidence::ForbiddenTrace, cur.s[i], cur.t[i], {}});

  // steepest descent on the largest modulus
  long spent = 0;
  auto max_mod = [](const std::array<cplx, 3>& t) { return std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])}); };
  for (;;) {
    double now = max_mod(cur.t);
    int best = -1;
    double best_val = now;
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      cplx n = cur.t[j] * cur.t[k] - cur.t[i];
      double m = std::max({std::abs(n), std::abs(cur.t[j]), std::abs(cur.t[k])});
      if (m < best_val) {
        best_val = m;
        best = i;
      }
    }
    if (best < 0) break;
    if (spent >= fuel) {
      out.fuel_spent = spent;
      return out;
    }
    ++spent;
    int j = (best + 1) % 3, k = (best + 2) % 3;
    Slope ns = farey_mediant_flip({cur.s[j], cur.s[k]}, cur.s[best]);
    cplx nt = cur.t[j] * cur.t[k] - cur.t[best];
    cur.s[best] = ns;
    cur.t[best] = nt;
    if (in_forbidden_set(nt, v, c.tol())) {
      out.fuel_spent = spent;
      return fails_with(out, {Evidence::ForbiddenTrace, ns, nt, {}});
    }
  }

  SinkCertificate cert;
  cert.triangles.push_back(cur.s);
  std::deque<QueuedEdge> queue;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    queue.push_back({{cur.s[j], cur.s[k], cur.s[i]}, cur.t[j], cur.t[k], cur.t[i]});
  }
  while (!queue.empty()) {
    QueuedEdge q = queue.front();
    queue.pop_front();
    EdgeTraces et = make_edge_traces(q.tl, q.tr, q.tb);
    EscapeCheck esc = escape_check(et);
    if (esc.kind != EscapeKind::None) {
      cert.boundary.push_back({q.e.left, q.e.right, q.e.behind, esc.kind});
      continue;
    }
    if (spent >= fuel) {
      out.fuel_spent = spent;
      return out;
    }
    ++spent;
    Slope d = q.e.ahead();
    if (in_forbidden_set(et.ahead, v, c.tol())) {
      out.fuel_spent = spent;
      return fails_with(out, {Evidence::ForbiddenTrace, d, et.ahead, {}});
    }
    // a pivot at +-2 can carry a periodic fan of bounded traces without any forbidden trace
    if (v == BqVariant::Extended) {
      for (int side = 0; side < 2; ++side) {
        const Slope& pivot = side == 0 ? q.e.left : q.e.right;
        const Slope& other = side == 0 ? q.e.right : q.e.left;
        cplx tp = side == 0 ? q.tl : q.tr;
        cplx to = side == 0 ? q.tr : q.tl;
        if (std::abs(std::abs(tp) - 2.0) > c.tol() || std::abs(tp.imag()) > c.tol()) continue;
        auto fam = periodic_fan(pivot, tp, other, to, d, et.ahead);
        if (!fam) continue;
        bool small = std::any_of(fam->begin(), fam->end(), [](const auto& p) { return std::abs(p.second) <= 2.0; });
        if (!small) continue;
        BqWitness w;
        w.evidence = Evidence::PeriodicBoundedOrbit;
        w.slope = pivot;
        w.trace = tp;
        for (const auto& p : *fam) w.family.push_back(p.first);
        out.fuel_spent = spent;
        return fails_with(out, w);
      }
    }
    cert.triangles.push_back({q.e.left, q.e.right, d});
    queue.push_back({{q.e.left, d, q.e.right}, q.tl, et.ahead, q.tr});
    queue.push_back({{d, q.e.right, q.e.left}, et.ahead, q.tr, q.tl});
  }
  out.status = BqStatus::Satisfies;
  out.certificate = std::move(cert);
  out.fuel_spent = spent;
  return out;
}

BqVerdict decide_bq(const Character& c, long fuel) { return decide(c, fuel, BqVariant::Standard); }
BqVerdict decide_extended_bq(const Character& c, long fuel) { return decide(c, fuel, BqVariant::Extended); }

namespace {

using EdgeKey = std::pair<Slope, Slope>;
EdgeKey edge_key(const Slope& a, const Slope& b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CheckResult check_certificate(const Character& c, const SinkCertificate& cert, BqVariant v) {
  if (cert.triangles.empty()) return {false, "certificate lists no triangles"};
  TraceCache cache(c.triple());
  auto trace = [&](const Slope& s) { return trace_at_slope(c, s, cache); };

  std::map<EdgeKey, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < cert.triangles.size(); ++i) {
    const auto& t = cert.triangles[i];
    for (int a = 0; a < 3; ++a) {
      int b = (a + 1) % 3;
      if (!farey_adjacent(t[a], t[b]))
        return {false, "triangle " + std::to_string(i) + " has non-adjacent vertices"};
      owners[edge_key(t[a], t[b])].push_back(i);
    }
    for (const auto& s : t) {
      cplx tr = trace(s);
      if (in_forbidden_set(tr, v, c.tol())) return {false, "slope " + s.str() + " has a forbidden trace"};
    }
  }
  UnionFind uf(cert.triangles.size());
  std::size_t internal = 0;
  for (const auto& [key, who] : owners) {
    if (who.size() > 2) return {false, "edge " + key.first.str() + " " + key.second.str() + " listed thrice"};
    if (who.size() == 2) {
      ++internal;
      uf.unite(static_cast<int>(who[0]), static_cast<int>(who[1]));
    }
  }
  if (internal + 1 != cert.triangles.size()) return {false, "triangles do not form a connected subtree"};
  for (std::size_t i = 1; i < cert.triangles.size(); ++i)
    if (uf.find(static_cast<int>(i)) != uf.find(0)) return {false, "triangles do not form a connected subtree"};

  std::map<EdgeKey, const BoundaryEdge*> boundary;
  for (const auto& b : cert.boundary) boundary[edge_key(b.left, b.right)] = &b;
  for (const auto& [key, who] : owners) {
    if (who.size() == 2) continue;
    auto it = boundary.find(key);
    if (it == boundary.end())
      return {false, "edge " + key.first.str() + " " + key.second.str() + " is open without a boundary record"};
    const auto& tri = cert.triangles[who[0]];
    const BoundaryEdge& b = *it->second;
    if (std::find(tri.begin(), tri.end(), b.behind) == tri.end() || b.behind == b.left || b.behind == b.right)
      return {false, "boundary edge " + b.left.str() + " " + b.right.str() + " faces the wrong way"};
    Slope ahead = farey_mediant_flip({b.left, b.right}, b.behind);
    EdgeTraces et{trace(b.left), trace(b.right), trace(b.behind), trace(ahead)};
    if (escape_check(et).kind == EscapeKind::None)
      return {false, "boundary edge " + b.left.str() + " " + b.right.str() + " does not escape"};
  }
  if (boundary.size() != cert.boundary.size()) return {false, "duplicate boundary records"};
  for (const auto& [key, b] : boundary)
    if (!owners.count(key) || owners[key].size() != 1)
      return {false, "boundary edge " + key.first.str() + " " + key.second.str() + " is not on the region's rim"};
  return {true, ""};
}

CheckResult check_witness(const Character& c, const BqWitness& w, BqVariant v) {
  TraceCache cache(c.triple());
  switch (w.evidence) {
    case Evidence::ReducibleKappa:
      if (std::abs(kappa(c.triple()) - 2.0) <= c.tol()) return {true, ""};
      return {false, "kappa is not 2"};
    case Evidence::ForbiddenTrace: {
      if (!w.slope) return {false, "witness without slope"};
      cplx t = trace_at_slope(c, *w.slope, cache);
      if (in_forbidden_set(t, v, 1e-9)) return {true, ""};
      return {false, "witness trace " + format_complex(t) + " is not forbidden"};
    }
    case Evidence::PeriodicBoundedOrbit: {
      if (!w.slope) {
        if (!flip_fixed(c.triple())) return {false, "triple is not fixed by every flip"};
        if (std::min({std::abs(c.triple().x), std::abs(c.triple().y), std::abs(c.triple().z)}) > 2.0 + 1e-9)
          return {false, "fixed triple has no small trace"};
        return {true, ""};
      }
      if (w.family.size() < 2) return {false, "periodic family too short"};
      cplx tp = trace_at_slope(c, *w.slope, cache);
      std::vector<cplx> tr;
      for (const auto& s : w.family) {
        if (!farey_adjacent(s, *w.slope)) return {false, "family slope not adjacent to pivot"};
        tr.push_back(trace_at_slope(c, s, cache));
      }
      // consecutive fan members whose trace pair closes up after one period
      std::size_t n = tr.size();
      double sc = scale_of(tr[0], tr[1]);
      for (std::size_t k = 1; k + 1 < n; ++k)
        if (std::abs(tp * tr[k] - tr[k - 1] - tr[k + 1]) > 1e-9 * sc) return {false, "family is not a fan"};
      if (std::abs(tr[n - 1] - tr[0]) > 1e-9 * sc || std::abs(tp * tr[n - 1] - tr[n - 2] - tr[1]) > 1e-9 * sc)
        return {false, "family does not repeat"};
      bool small = std::any_of(tr.begin(), tr.end(), [](const cplx& t) { return std::abs(t) <= 2.0 + 1e-9; });
      if (!small) return {false, "periodic family has no small trace"};
      return {true, ""};
    }
  }
  return {false, "unknown evidence"};
}

CheckResult check_verdict(const Character& c, const BqVerdict& v) {
  switch (v.status) {
    case BqStatus::Satisfies:
      if (!v.certificate) return {false, "Satisfies without certificate"};
      return check_certificate(c, *v.certificate, v.variant);
    case BqStatus::Fails:
      if (!v.witness) return {false, "Fails without witness"};
      return check_witness(c, *v.witness, v.variant);
    case BqStatus::Inconclusive:
      return {true, ""};
  }
  return {false, "unknown status"};
}

constexpr int kSubgraphDepthCap = 22;

BoundedSubgraph bounded_subgraph(const Character& c, double K, int depth) {
  if (!(K > 0)) throw ArgumentError("bound K must be positive");
  if (depth < 0) throw ArgumentError("depth must be non-negative");
  if (depth > kSubgraphDepthCap) throw ResourceLimitError("bounded subgraph depth above " + std::to_string(kSubgraphDepthCap));
  BoundedSubgraph g;
  g.bound = K;
  g.depth = depth;
  const TraceTriple& t = c.triple();
  auto tri = base_triangle();
  std::unordered_map<Slope, bool, SlopeHash> inside;
  auto visit = [&](const Slope& s, const cplx& tr) {
    bool in = std::abs(tr) <= K;
    inside[s] = in;
    if (in) g.vertices.push_back(s);
  };
  auto link = [&](const Slope& a, const Slope& b) {
    if (inside[a] && inside[b]) g.edges.push_back({a, b});
  };
  visit(tri.a, t.x);
  visit(tri.b, t.y);
  visit(tri.c, t.z);
  link(tri.a, tri.b);
  link(tri.b, tri.c);
  link(tri.a, tri.c);
  std::vector<QueuedEdge> layer;
  for (auto& e : base_edges()) {
    TraceCache cache(t);
    layer.push_back({e, trace_at_slope(c, e.left, cache), trace_at_slope(c, e.right, cache),
                     trace_at_slope(c, e.behind, cache)});
  }
  for (int d = 1; d <= depth; ++d) {
    std::vector<QueuedEdge> next;
    next.reserve(layer.size() * 2);
    for (const auto& q : layer) {
      Slope s = q.e.ahead();
      cplx ts = q.tl * q.tr - q.tb;
      visit(s, ts);
      link(q.e.left, s);
      link(s, q.e.right);
      next.push_back({{q.e.left, s, q.e.right}, q.tl, ts, q.tr});
      next.push_back({{s, q.e.right, q.e.left}, ts, q.tr, q.tl});
    }
    layer = std::move(next);
  }
  return g;
}

ConnectivityReport check_connectivity(const Character& c, double K, int depth, int margin) {
  if (!(K >= 2)) throw ArgumentError("connectivity needs K >= 2");
  BoundedSubgraph g = bounded_subgraph(c, K, depth);
  std::unordered_map<Slope, int, SlopeHash> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = static_cast<int>(i);
  UnionFind uf(g.vertices.size());
  for (const auto& [a, b] : g.edges) uf.unite(index[a], index[b]);
  ConnectivityReport r;
  std::vector<int> roots;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (farey_depth(g.vertices[i]) > depth - margin) continue;
    ++r.interior_vertices;
    roots.push_back(uf.find(static_cast<int>(i)));
  }
  std::sort(roots.begin(), roots.end());
  r.components = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
  r.connected_within_truncation = r.components <= 1;
  return r;
}

}  // namespace fricke
