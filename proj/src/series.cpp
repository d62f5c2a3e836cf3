#include <cmath>
#include <numbers>

#include "fricke/errors.hpp"
#include "fricke/tree_bounds.hpp"
#include "series_engine.hpp"

namespace fricke {

std::string variant_name(SeriesVariant v) { return v == SeriesVariant::General ? "general" : "cusp"; }

cplx nu(const cplx& kappa) { return acosh_branch(-kappa / 2.0); }

namespace {

// log(1 + u) without losing digits when u is small
cplx log1p_complex(const cplx& u) {
  double re = 0.5 * std::log1p(2.0 * u.real() + std::norm(u));
  double im = std::atan2(u.imag(), 1.0 + u.real());
  return {re, im};
}

}  // namespace

cplx series_term(const cplx& trace, const cplx& nu, SeriesVariant v) {
  cplx h = half_length_exp(trace);
  cplx E = 1.0 / (h * h);
  if (v == SeriesVariant::Cusp) {
    cplx den = 1.0 + E;
    if (std::abs(den) < 1e-300) throw SingularTermError("cusp term has a pole at trace " + format_complex(trace));
    return E / den;
  }
  if (nu == cplx(0, 0)) return 0;
  cplx ep = std::exp(nu), em = std::exp(-nu);
  cplx den = 1.0 + em * E;
  if (std::abs(den) < 1e-300 || std::abs(1.0 + ep * E) < 1e-300)
    throw SingularTermError("general term is singular at trace " + format_complex(trace));
  cplx u = (ep - em) * E / den;
  if (std::abs(u) < 0.5) return log1p_complex(u);
  return std::log((1.0 + ep * E) / den);
}

cplx residual_mod_2pi_i(const cplx& value, const cplx& target) {
  cplx diff = value - target;
  double x = diff.imag() / (2 * std::numbers::pi);
  double k = std::round(x);
  if (std::abs(std::abs(x - std::trunc(x)) - 0.5) == 0.0) k = std::trunc(x);
  return diff - cplx(0, 2 * std::numbers::pi * k);
}

std::optional<double> term_ratio_bound(double e, const cplx& nu, SeriesVariant v) {
  if (v == SeriesVariant::Cusp) {
    if (!(e < 0.5)) return std::nullopt;
    return 1.0 / (1.0 - e);
  }
  double a = std::abs(std::exp(-nu)) * e;
  if (!(a < 0.5)) return std::nullopt;
  double s = std::abs(std::exp(nu) - std::exp(-nu));
  double umax = s * e / (1.0 - a);
  if (!(umax < 0.5)) return std::nullopt;
  // |u| <= s e'/(1 - a) and |log(1+u)| <= |u|/(1 - |u|)
  return s / (1.0 - a) / (1.0 - umax);
}

namespace detail {

namespace {

struct Neumaier {
  double s = 0, c = 0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

struct ComplexSum {
  Neumaier re, im;
  void add(const cplx& z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

struct LiveEdge {
  SumEdge e;
  std::optional<double> bound;  // bound on the summed |term| beyond the edge
};

constexpr int kDivergenceWindow = 4;
constexpr int kDivergenceRun = 5;
constexpr double kDivergenceRatio = 0.99;

std::optional<double> edge_bound(const EdgeTraces& et, const cplx& nu, SeriesVariant v) {
  auto db = subtree_decay(et);
  if (!db) return std::nullopt;
  double e = 1.0 / ((db->floor - 1) * (db->floor - 1));
  auto ratio = term_ratio_bound(e, nu, v);
  if (!ratio) return std::nullopt;
  return *ratio * db->sum;
}

LiveEdge make_live(const SumEdge& e, const cplx& nu, SeriesVariant v, const SumHooks& hooks) {
  LiveEdge le{e, std::nullopt};
  if (!hooks.prunable || hooks.prunable(e.e)) le.bound = edge_bound(make_edge_traces(e.tl, e.tr, e.tb), nu, v);
  return le;
}

cplx term_at(const Slope& s, const cplx& t, const cplx& nu, SeriesVariant v) {
  try {
    return series_term(t, nu, v);
  } catch (const SingularTermError& err) {
    throw SingularTermError(std::string(err.what()) + " (slope " + s.str() + ")");
  }
}

SumResult run(const std::vector<SumVertex>& start_vertices, const std::vector<SumEdge>& start_edges, const cplx& nu,
              SeriesVariant v, double tol, double eps, std::size_t max_terms, const SumHooks& hooks) {
  SumResult r;
  ComplexSum sum, sec;
  Neumaier tail, sec_tail;

  LayerRecord first;
  for (const auto& sv : start_vertices) {
    auto w = hooks.weigh ? hooks.weigh(sv.s) : std::optional<bool>(false);
    if (!w) continue;
    cplx t = term_at(sv.s, sv.t, nu, v);
    sum.add(t);
    if (*w) sec.add(t);
    first.layer_sum += t;
    first.layer_abs += std::abs(t);
    first.layer_max = std::max(first.layer_max, std::abs(t));
    ++first.terms;
    ++r.terms;
  }
  first.cumulative = sum.value();
  r.layers.push_back(first);

  std::vector<LiveEdge> live;
  for (const auto& e : start_edges) live.push_back(make_live(e, nu, v, hooks));
  std::vector<double> maxes;
  int flagged_run = 0;
  bool vetoed = false;

  auto finish = [&] {
    r.sum = sum.value();
    r.secondary = sec.value();
    r.tail += tail.value();
    r.secondary_tail += sec_tail.value();
    return r;
  };

  for (int depth = 1;; ++depth) {
    std::vector<LiveEdge> next;
    next.reserve(live.size() * 2);
    LayerRecord layer;
    layer.depth = depth;
    ComplexSum layer_sum;
    for (const auto& le : live) {
      const SumEdge& q = le.e;
      Slope d = q.e.ahead();
      if (hooks.admit && !hooks.admit(q.e, d)) continue;
      if (le.bound && *le.bound <= eps) {
        tail.add(*le.bound);
        if (hooks.secondary_subtree && hooks.secondary_subtree(q.e)) sec_tail.add(*le.bound);
        continue;
      }
      cplx td = q.tl * q.tr - q.tb;
      auto w = hooks.weigh ? hooks.weigh(d) : std::optional<bool>(false);
      if (w) {
        cplx t = term_at(d, td, nu, v);
        sum.add(t);
        if (*w) sec.add(t);
        layer_sum.add(t);
        layer.layer_abs += std::abs(t);
        layer.layer_max = std::max(layer.layer_max, std::abs(t));
        ++layer.terms;
        ++r.terms;
      }
      next.push_back(make_live({{q.e.left, d, q.e.right}, q.tl, td, q.tr}, nu, v, hooks));
      next.push_back(make_live({{d, q.e.right, q.e.left}, td, q.tr, q.tl}, nu, v, hooks));
      if (r.terms >= max_terms) {
        layer.layer_sum = layer_sum.value();
        layer.cumulative = sum.value();
        r.layers.push_back(layer);
        r.budget_hit = true;
        r.tail = HUGE_VAL;
        return finish();
      }
    }
    layer.layer_sum = layer_sum.value();
    layer.cumulative = sum.value();
    r.layers.push_back(layer);

    if (next.empty()) {
      r.converged = tail.value() < tol;
      return finish();
    }
    double live_bound = 0;
    bool bounded = true;
    for (const auto& le : next) {
      if (!le.bound) {
        bounded = false;
        break;
      }
      live_bound += *le.bound;
    }
    if (bounded && tail.value() + live_bound < tol && layer.layer_abs < tol) {
      r.converged = true;
      r.tail = live_bound;
      if (hooks.secondary_subtree)
        for (const auto& le : next)
          if (hooks.secondary_subtree(le.e.e)) r.secondary_tail += *le.bound;
      return finish();
    }
    if (layer.terms > 0) {
      maxes.push_back(layer.layer_max);
      std::size_t n = maxes.size();
      if (n > kDivergenceWindow) {
        double lo = maxes[n - 2];
        for (std::size_t k = n - 1 - kDivergenceWindow; k < n - 1; ++k) lo = std::min(lo, maxes[k]);
        bool flagged = maxes.back() >= kDivergenceRatio * lo && maxes.back() > 0;
        flagged_run = flagged ? flagged_run + 1 : 0;
        if (flagged_run >= kDivergenceRun && !vetoed) {
          if (hooks.divergence_vetoed && hooks.divergence_vetoed()) {
            vetoed = true;
          } else {
            r.diverged = true;
            r.tail = HUGE_VAL;
            return finish();
          }
        }
      }
    }
    live = std::move(next);
  }
}

}  // namespace

SumResult pruned_tree_sum(const std::vector<SumVertex>& start_vertices, const std::vector<SumEdge>& start_edges,
                          const cplx& nu, SeriesVariant v, double tol, std::size_t max_terms, const SumHooks& hooks) {
  double eps = tol * 1e-3;
  SumResult r;
  for (int attempt = 0; attempt < 4; ++attempt) {
    r = run(start_vertices, start_edges, nu, v, tol, eps, max_terms, hooks);
    if (r.converged || r.diverged || r.budget_hit) return r;
    eps /= 100;
  }
  return r;
}

}  // namespace detail
}  // namespace fricke
