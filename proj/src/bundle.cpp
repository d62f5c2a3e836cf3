#include "fricke/bundle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <thread>
#include <unordered_set>

#include "fricke/errors.hpp"
#include "series_engine.hpp"

namespace fricke {

std::string side_name(ArcSide s) { return s == ArcSide::Left ? "L" : "R"; }

namespace {

constexpr int kShiftCap = 100000;

// least-denominator rational strictly between lo < hi (ties to the smaller numerator)
Slope simplest_between(const QuadraticIrrational& lo, const QuadraticIrrational& hi) {
  for (Int q = 1; q < 10'000'000; ++q) {
    Int p = static_cast<Int>(std::floor(lo.value() * static_cast<double>(q))) - 1;
    while (lo.compare(Slope(p, q)) >= 0) ++p;
    if (hi.compare(Slope(p, q)) > 0) return Slope(p, q);
  }
  throw ResourceLimitError("no small rational found between the axis endpoints");
}

}  // namespace

OrbitDomain::OrbitDomain(const MappingClass& theta)
    : theta_(theta), axis_(axis_points(theta.matrix())), s0_(Slope(0, 1)), s1_(Slope::infinity()) {
  inv_ = theta_.matrix().inverse();
  const auto& mm = axis_.mu_minus;
  const auto& mp = axis_.mu_plus;
  if (mm.compare(mp) > 0) {
    s0_ = Slope::infinity();
    s1_ = simplest_between(mp, mm);
  } else {
    s0_ = simplest_between(mm, mp);
    s1_ = Slope::infinity();
  }
  ts0_ = act_on_slope(theta_.matrix(), s0_);
  ts1_ = act_on_slope(theta_.matrix(), s1_);
}

ArcSide OrbitDomain::side(const Slope& s) const {
  return in_increasing_arc(axis_.mu_minus, axis_.mu_plus, s, false, false) ? ArcSide::Left : ArcSide::Right;
}

bool OrbitDomain::upstream(const Slope& s, ArcSide sd) const {
  if (sd == ArcSide::Left) return in_increasing_arc(axis_.mu_minus, s0_, s, false, false);
  return in_increasing_arc(s1_, axis_.mu_minus, s, false, false);
}

int OrbitDomain::shift(const Slope& s) const {
  ArcSide sd = side(s);
  Slope cur = s;
  for (int k = 0, steps = 0; steps < kShiftCap; ++steps) {
    bool inside = sd == ArcSide::Left ? in_increasing_arc(s0_, ts0_, cur, true, false)
                                      : in_increasing_arc(ts1_, s1_, cur, false, true);
    if (inside) return k;
    if (upstream(cur, sd)) {
      cur = act_on_slope(theta_.matrix(), cur);
      ++k;
    } else {
      cur = act_on_slope(inv_, cur);
      --k;
    }
  }
  throw ResourceLimitError("slope " + s.str() + " did not reach the fundamental domain");
}

Slope OrbitDomain::act(const Slope& s, int k) const {
  Slope cur = s;
  const Matrix2i& m = k >= 0 ? theta_.matrix() : inv_;
  for (int i = 0; i < std::abs(k); ++i) cur = act_on_slope(m, cur);
  return cur;
}

Slope OrbitDomain::canonical(const Slope& s) const { return act(s, shift(s)); }

bool OrbitDomain::crosses_axis(const Slope& a, const Slope& b) const { return side(a) != side(b); }

bool OrbitDomain::beyond_holds_axis_end(const Slope& a, const Slope& b, const Slope& behind) const {
  bool behind_in_ab = in_increasing_arc(a, b, behind, false, false);
  LinePoint from = behind_in_ab ? LinePoint(b) : LinePoint(a);
  LinePoint to = behind_in_ab ? LinePoint(a) : LinePoint(b);
  return in_increasing_arc(from, to, axis_.mu_minus, false, false) ||
         in_increasing_arc(from, to, axis_.mu_plus, false, false);
}

std::array<Slope, 3> OrbitDomain::canonical_triangle(const Slope& a, const Slope& b, const Slope& c) const {
  std::array<Slope, 3> v{a, b, c};
  int pick = -1;
  for (ArcSide want : {ArcSide::Left, ArcSide::Right}) {
    const LinePoint origin = want == ArcSide::Left ? LinePoint(axis_.mu_minus) : LinePoint(axis_.mu_plus);
    for (int i = 0; i < 3; ++i) {
      if (side(v[i]) != want) continue;
      if (pick < 0 || in_increasing_arc(origin, v[pick], v[i], false, false)) pick = i;
    }
    if (pick >= 0) break;
  }
  int k = shift(v[pick]);
  for (auto& s : v) s = act(s, k);
  std::sort(v.begin(), v.end());
  return v;
}

OrbitRepresentatives orbit_representatives(const MappingClass& theta, int depth) {
  if (!theta.is_anosov()) throw ArgumentError("orbit representatives need an Anosov mapping class");
  OrbitDomain dom(theta);
  OrbitRepresentatives out;
  for (const auto& s : enumerate_slopes(depth)) {
    if (!dom.in_domain(s)) continue;
    ArcSide sd = dom.side(s);
    out.all.push_back(s);
    out.sides.push_back(sd);
    if (sd == ArcSide::Left) out.left.push_back(s);
  }
  return out;
}

// ---- fixed characters ----

namespace {

struct Jet {
  cplx v;
  std::array<cplx, 3> d;
};

Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, {a.d[0] * b.v + a.v * b.d[0], a.d[1] * b.v + a.v * b.d[1], a.d[2] * b.v + a.v * b.d[2]}};
}

Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, {a.d[0] - b.d[0], a.d[1] - b.d[1], a.d[2] - b.d[2]}}; }

using JetTriple = std::array<Jet, 3>;

JetTriple apply_letter(const JetTriple& t, Letter l, bool inverse) {
  const Jet &x = t[0], &y = t[1], &z = t[2];
  if (l == Letter::R) return inverse ? JetTriple{z, y, y * z - x} : JetTriple{x * y - z, y, x};
  return inverse ? JetTriple{x, z, x * z - y} : JetTriple{x, x * y - z, y};
}

JetTriple apply_jet(const TraceTriple& t, const GeneratorWord& g) {
  JetTriple r{Jet{t.x, {1, 0, 0}}, Jet{t.y, {0, 1, 0}}, Jet{t.z, {0, 0, 1}}};
  for (auto it = g.powers.rbegin(); it != g.powers.rend(); ++it) {
    Int k = it->second;
    for (Int i = 0; i < std::abs(k); ++i) r = apply_letter(r, it->first, k < 0);
  }
  return r;
}

double max_abs(const Eigen::Matrix<cplx, 4, 1>& f) { return f.cwiseAbs().maxCoeff(); }

Eigen::Matrix<cplx, 4, 1> system_value(const TraceTriple& t, const GeneratorWord& g, const cplx& kap) {
  TraceTriple a = apply_mapping_class(t, g);
  Eigen::Matrix<cplx, 4, 1> f;
  f << a.x - t.x, a.y - t.y, a.z - t.z, kappa(t) - kap;
  return f;
}

std::optional<FixedCharacter> newton_from(TraceTriple t, const GeneratorWord& g, const cplx& kap,
                                          const FixedPointOptions& opts) {
  auto f = system_value(t, g, kap);
  double norm = max_abs(f);
  // keep going until no progress: multiple roots converge only linearly
  for (int it = 0; it < opts.max_iterations && norm > 0; ++it) {
    JetTriple a = apply_jet(t, g);
    Eigen::Matrix<cplx, 4, 3> J;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) J(i, j) = a[i].d[j] - (i == j ? 1.0 : 0.0);
    J(3, 0) = 2.0 * t.x - t.y * t.z;
    J(3, 1) = 2.0 * t.y - t.x * t.z;
    J(3, 2) = 2.0 * t.z - t.x * t.y;
    Eigen::Matrix<cplx, 3, 1> step = J.colPivHouseholderQr().solve(-f);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls, alpha /= 2) {
      TraceTriple trial{t.x + alpha * step(0), t.y + alpha * step(1), t.z + alpha * step(2)};
      auto ft = system_value(trial, g, kap);
      double nt = max_abs(ft);
      if (std::isfinite(nt) && nt < norm) {
        t = trial;
        f = ft;
        norm = nt;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (std::abs(t.x) + std::abs(t.y) + std::abs(t.z) > 1e8) return std::nullopt;
  }
  if (!(norm < opts.newton_tol)) return std::nullopt;
  return FixedCharacter{t, norm};
}

double triple_distance(const TraceTriple& a, const TraceTriple& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace

double fixed_point_residual(const TraceTriple& t, const MappingClass& theta) {
  TraceTriple a = apply_mapping_class(t, theta.lift());
  return std::max({std::abs(a.x - t.x), std::abs(a.y - t.y), std::abs(a.z - t.z)});
}

std::vector<FixedCharacter> fixed_characters(const MappingClass& theta, const cplx& kap, const FixedPointOptions& opts) {
  if (!theta.is_anosov()) throw ArgumentError("fixed characters need an Anosov mapping class");
  if (opts.grid < 1 || !(opts.radius > 0) || !(opts.newton_tol > 0))
    throw ArgumentError("invalid fixed-point search options");
  // starting values on a Fermat spiral filling the disk of the given radius
  std::vector<cplx> pts;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int j = 0; j < opts.grid; ++j)
    pts.push_back(std::polar(opts.radius * std::sqrt((j + 0.5) / opts.grid), j * golden + 0.3));
  std::size_t n = pts.size();
  std::size_t total = n * n * n;
  std::vector<std::optional<FixedCharacter>> found(total);
  const GeneratorWord& g = theta.lift();
  unsigned jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < total; i += jobs) {
      TraceTriple start{pts[i / (n * n)], pts[(i / n) % n], pts[i % n]};
      found[i] = newton_from(start, g, kap, opts);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();

  std::vector<FixedCharacter> roots;
  for (const auto& f : found) {
    if (!f) continue;
    // multiple roots only converge to about sqrt(tol), so merge on that scale
    const double merge = std::max(10 * opts.newton_tol, std::sqrt(opts.newton_tol));
    auto it = std::find_if(roots.begin(), roots.end(), [&](const FixedCharacter& r) {
      return triple_distance(r.triple, f->triple) <= merge * std::max(1.0, std::abs(r.triple.x));
    });
    if (it == roots.end()) roots.push_back(*f);
    else if (f->residual < it->residual) *it = *f;
  }
  auto key = [](const FixedCharacter& r) {
    const auto& t = r.triple;
    return std::array<double, 6>{t.x.real(), t.x.imag(), t.y.real(), t.y.imag(), t.z.real(), t.z.imag()};
  };
  std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  if (roots.size() > opts.max_roots) roots.resize(opts.max_roots);
  return roots;
}

// ---- relative BQ ----

namespace {

void require_fixed(const Character& c, const MappingClass& theta) {
  if (!theta.is_anosov()) throw ArgumentError("mapping class " + theta.matrix().str() + " is not Anosov");
  const TraceTriple& t = c.triple();
  TraceTriple a = apply_mapping_class(t, theta.lift());
  for (int i = 0; i < 3; ++i)
    if (std::abs(a[i] - t[i]) > 1e-8 * std::max(1.0, std::abs(t[i])))
      throw PreconditionError("character is not fixed by " + theta.str());
}

struct QEdge {
  DirectedEdge e;
  cplx tl, tr, tb;
};

}  // namespace

BqVerdict relative_bq(const Character& c, const MappingClass& theta, long fuel) {
  if (fuel <= 0) throw ArgumentError("fuel must be positive");
  require_fixed(c, theta);
  BqVerdict out;
  out.variant = BqVariant::Standard;
  if (std::abs(c.kappa() - 2.0) <= c.tol()) {
    out.status = BqStatus::Fails;
    out.witness = BqWitness{Evidence::ReducibleKappa, std::nullopt, c.kappa(), {}};
    return out;
  }
  OrbitDomain dom(theta);
  const TraceTriple& t = c.triple();
  auto tri = base_triangle();
  std::array<Slope, 3> base{tri.a, tri.b, tri.c};
  std::array<cplx, 3> bt{t.x, t.y, t.z};
  for (int i = 0; i < 3; ++i)
    if (in_forbidden_set(bt[i], BqVariant::Standard, c.tol())) {
      out.status = BqStatus::Fails;
      out.witness = BqWitness{Evidence::ForbiddenTrace, base[i], bt[i], {}};
      return out;
    }
  std::set<std::array<Slope, 3>> visited{dom.canonical_triangle(tri.a, tri.b, tri.c)};
  SinkCertificate cert;
  cert.triangles.push_back(base);
  std::deque<QEdge> queue;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    queue.push_back({{base[j], base[k], base[i]}, bt[j], bt[k], bt[i]});
  }
  long spent = 0;
  while (!queue.empty()) {
    QEdge q = queue.front();
    queue.pop_front();
    Slope d = q.e.ahead();
    auto key = dom.canonical_triangle(q.e.left, q.e.right, d);
    if (visited.count(key)) continue;
    EdgeTraces et = make_edge_traces(q.tl, q.tr, q.tb);
    if (!dom.crosses_axis(q.e.left, q.e.right) && !dom.beyond_holds_axis_end(q.e.left, q.e.right, q.e.behind)) {
      EscapeCheck esc = escape_check(et);
      if (esc.kind != EscapeKind::None) {
        visited.insert(key);
        cert.boundary.push_back({q.e.left, q.e.right, q.e.behind, esc.kind});
        continue;
      }
    }
    if (spent >= fuel) {
      out.fuel_spent = spent;
      return out;
    }
    ++spent;
    if (in_forbidden_set(et.ahead, BqVariant::Standard, c.tol())) {
      out.status = BqStatus::Fails;
      out.witness = BqWitness{Evidence::ForbiddenTrace, d, et.ahead, {}};
      out.fuel_spent = spent;
      return out;
    }
    visited.insert(key);
    cert.triangles.push_back({q.e.left, q.e.right, d});
    queue.push_back({{q.e.left, d, q.e.right}, q.tl, et.ahead, q.tr});
    queue.push_back({{d, q.e.right, q.e.left}, et.ahead, q.tr, q.tl});
  }
  out.status = BqStatus::Satisfies;
  out.certificate = std::move(cert);
  out.fuel_spent = spent;
  return out;
}

CheckResult check_relative_certificate(const Character& c, const MappingClass& theta, const SinkCertificate& cert) {
  if (cert.triangles.empty()) return {false, "certificate lists no triangles"};
  OrbitDomain dom(theta);
  TraceCache cache(c.triple());
  auto trace = [&](const Slope& s) { return trace_at_slope(c, s, cache); };
  std::set<std::array<Slope, 3>> keys;
  for (const auto& tri : cert.triangles) {
    for (int a = 0; a < 3; ++a)
      if (!farey_adjacent(tri[a], tri[(a + 1) % 3])) return {false, "triangle with non-adjacent vertices"};
    for (const auto& s : tri)
      if (in_forbidden_set(trace(s), BqVariant::Standard, c.tol()))
        return {false, "slope " + s.str() + " has a forbidden trace"};
    if (!keys.insert(dom.canonical_triangle(tri[0], tri[1], tri[2])).second)
      return {false, "two listed triangles lie in one orbit"};
  }
  std::map<std::array<Slope, 3>, const BoundaryEdge*> bound;
  for (const auto& b : cert.boundary) {
    Slope l = std::min(b.left, b.right), r = std::max(b.left, b.right);
    bound[{l, r, b.behind}] = &b;
  }
  for (const auto& tri : cert.triangles) {
    for (int i = 0; i < 3; ++i) {
      const Slope& a = tri[(i + 1) % 3];
      const Slope& b = tri[(i + 2) % 3];
      const Slope& behind = tri[i];
      Slope d = farey_mediant_flip({a, b}, behind);
      if (keys.count(dom.canonical_triangle(a, b, d))) continue;
      auto it = bound.find({std::min(a, b), std::max(a, b), behind});
      if (it == bound.end()) return {false, "edge " + a.str() + " " + b.str() + " leaves the region unbounded"};
      if (dom.crosses_axis(a, b) || dom.beyond_holds_axis_end(a, b, behind))
        return {false, "boundary edge " + a.str() + " " + b.str() + " faces the axis"};
      EdgeTraces et{trace(a), trace(b), trace(behind), trace(d)};
      if (escape_check(et).kind == EscapeKind::None)
        return {false, "boundary edge " + a.str() + " " + b.str() + " does not escape"};
    }
  }
  return {true, ""};
}

// ---- conjugator ----

ConjugatorReport recover_conjugator(const Character& c, const MappingClass& theta, double tol) {
  require_fixed(c, theta);
  if (std::abs(c.kappa() - 2.0) <= c.tol())
    throw RankDeficientError("reducible character: the conjugator is not determined");
  MatrixPair mp = realize_matrices(c.triple(), c.tol());
  MatrixPair img = apply_automorphism(mp, theta.lift());
  // B M - M' B = 0 for (M, M') = (A, A'), (B, B'), unknowns B00 B01 B10 B11
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(8, 4);
  auto fill = [&](int row0, const Mat2c& M, const Mat2c& Mi) {
    cplx m[2][2] = {{M.a, M.b}, {M.c, M.d}};
    cplx mi[2][2] = {{Mi.a, Mi.b}, {Mi.c, Mi.d}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        int row = row0 + 2 * i + j;
        for (int l = 0; l < 2; ++l) sys(row, 2 * i + l) += m[l][j];
        for (int k = 0; k < 2; ++k) sys(row, 2 * k + j) -= mi[i][k];
      }
  };
  fill(0, mp.A, img.A);
  fill(4, mp.B, img.B);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv(0);
  if (!(sv(2) > 1e-8 * top)) throw RankDeficientError("conjugation system has a null space of dimension > 1");
  if (!(sv(3) <= 1e-6 * top)) throw PreconditionError("conjugation system has no non-trivial solution");
  Eigen::VectorXcd v = svd.matrixV().col(3);
  Mat2c A{v(0), v(1), v(2), v(3)};
  cplx s = std::sqrt(A.det());
  if (std::abs(s) == 0.0) throw RankDeficientError("conjugator is singular");
  A = {A.a / s, A.b / s, A.c / s, A.d / s};
  ConjugatorReport rep;
  rep.A = A;
  Mat2c Ai = A.inverse();
  double res = std::max((A * mp.A * Ai - img.A).norm(), (A * mp.B * Ai - img.B).norm());
  rep.equation_residual = res;
  if (!(res <= std::max(tol, 1e-12) * (1.0 + img.A.norm() + img.B.norm())))
    throw PreconditionError("conjugation equations not satisfied (residual " + std::to_string(res) + ")");
  cplx tr = A.trace();
  if (tr.real() < 0 || (tr.real() == 0 && tr.imag() < 0)) tr = -tr;
  rep.trace_A = tr;
  rep.length_A = complex_length(tr);
  return rep;
}

// ---- bundle identities ----

BundleReport evaluate_bundle_identities(const Character& c, const MappingClass& theta, double tol,
                                        std::size_t max_terms, bool require_relative_bq, long fuel) {
  if (!(tol > 0)) throw ArgumentError("tolerance must be positive");
  require_fixed(c, theta);
  if (require_relative_bq) {
    BqVerdict v = relative_bq(c, theta, fuel);
    if (v.status != BqStatus::Satisfies)
      throw PreconditionError("relative BQ conditions not established (" + status_name(v.status) + ")");
  }
  OrbitDomain dom(theta);
  BundleReport rep;
  rep.experimental = std::abs(c.kappa() + 2.0) <= c.tol();
  SeriesVariant var = rep.experimental ? SeriesVariant::Cusp : SeriesVariant::General;
  cplx n = nu(c.kappa());

  std::set<std::array<Slope, 3>> visited;
  std::unordered_set<Slope, SlopeHash> summed;
  auto tri = base_triangle();
  visited.insert(dom.canonical_triangle(tri.a, tri.b, tri.c));
  detail::SumHooks hooks;
  hooks.admit = [&](const DirectedEdge& e, const Slope& d) {
    return visited.insert(dom.canonical_triangle(e.left, e.right, d)).second;
  };
  hooks.prunable = [&](const DirectedEdge& e) {
    return !dom.crosses_axis(e.left, e.right) && !dom.beyond_holds_axis_end(e.left, e.right, e.behind);
  };
  hooks.weigh = [&](const Slope& s) -> std::optional<bool> {
    Slope cs = dom.canonical(s);
    if (!summed.insert(cs).second) return std::nullopt;
    return dom.side(cs) == ArcSide::Left;
  };
  hooks.secondary_subtree = [&](const DirectedEdge& e) { return dom.side(e.left) == ArcSide::Left; };

  const TraceTriple& t = c.triple();
  std::vector<detail::SumVertex> verts{{tri.a, t.x}, {tri.b, t.y}, {tri.c, t.z}};
  std::vector<detail::SumEdge> edges;
  TraceCache cache(t);
  for (const auto& e : base_edges())
    edges.push_back({e, trace_at_slope(c, e.left, cache), trace_at_slope(c, e.right, cache),
                     trace_at_slope(c, e.behind, cache)});
  auto r = detail::pruned_tree_sum(verts, edges, n, var, tol, max_terms, hooks);

  for (SeriesReport* s : {&rep.full, &rep.half}) {
    s->variant = var;
    s->nu = n;
    s->term_count = r.terms;
    s->converged = r.converged;
    s->diverged = r.diverged;
    s->layers = r.layers;
    if (r.diverged) s->note = "divergence: largest term per depth stopped shrinking";
    if (r.budget_hit) s->note = "term budget exhausted";
  }
  rep.full.partial_sum = r.sum;
  rep.full.tail_bound = r.tail;
  rep.half.partial_sum = r.secondary;
  rep.half.tail_bound = r.secondary_tail;
  rep.half.layers.clear();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (rep.experimental) {
    rep.full.target = rep.half.target = cplx(nan, nan);
    rep.full.residual = rep.half.residual = cplx(nan, nan);
    rep.full.note = rep.half.note = "experimental: kappa = -2 uses cusp summands, target unverified";
  } else {
    rep.full.target = 0;
    rep.full.residual = residual_mod_2pi_i(r.sum, 0);
  }
  try {
    rep.conjugator = recover_conjugator(c, theta);
  } catch (const std::exception& e) {
    rep.half.note = std::string("conjugator unavailable: ") + e.what();
  }
  if (rep.conjugator && !rep.experimental) {
    cplx l = rep.conjugator->length_A;
    rep.residual_plus = residual_mod_2pi_i(r.secondary, l);
    rep.residual_minus = residual_mod_2pi_i(r.secondary, -l);
    rep.sign = std::abs(rep.residual_plus) <= std::abs(rep.residual_minus) ? 1 : -1;
    rep.half.target = rep.sign > 0 ? l : -l;
    rep.half.residual = rep.sign > 0 ? rep.residual_plus : rep.residual_minus;
  } else if (!rep.experimental) {
    rep.half.target = rep.half.residual = cplx(nan, nan);
  }
  return rep;
}

}  // namespace fricke
