#include "fricke/identity.hpp"

#include <cmath>

#include "fricke/bq.hpp"
#include "fricke/errors.hpp"
#include "series_engine.hpp"

namespace fricke {

namespace {

constexpr long kDivergenceCheckFuel = 20000;

}  // namespace

SeriesReport evaluate_identity(const Character& c, SeriesVariant v, double tol, std::size_t max_terms) {
  if (!(tol > 0)) throw ArgumentError("tolerance must be positive");
  if (max_terms == 0) throw ArgumentError("max_terms must be positive");
  if (v == SeriesVariant::General && std::abs(c.kappa() - 2.0) <= c.tol())
    throw PreconditionError("general identity is undefined for reducible characters (kappa = 2)");
  if (v == SeriesVariant::Cusp && std::abs(c.kappa() + 2.0) > c.tol())
    throw PreconditionError("cusp identity needs kappa = -2, got " + format_complex(c.kappa()));

  SeriesReport rep;
  rep.variant = v;
  rep.nu = nu(c.kappa());
  rep.target = v == SeriesVariant::General ? rep.nu : cplx(0.5, 0);

  const TraceTriple& t = c.triple();
  auto tri = base_triangle();
  std::vector<detail::SumVertex> verts{{tri.a, t.x}, {tri.b, t.y}, {tri.c, t.z}};
  std::vector<detail::SumEdge> edges;
  TraceCache cache(t);
  for (const auto& e : base_edges())
    edges.push_back({e, trace_at_slope(c, e.left, cache), trace_at_slope(c, e.right, cache),
                     trace_at_slope(c, e.behind, cache)});
  detail::SumHooks hooks;
  hooks.weigh = [](const Slope&) { return std::optional<bool>(false); };
  // a stall is only a transient when the extended conditions hold, so ask for a certificate first
  std::optional<bool> certified;
  hooks.divergence_vetoed = [&] {
    if (!certified) {
      try {
        certified = decide_extended_bq(c, kDivergenceCheckFuel).status == BqStatus::Satisfies;
      } catch (const OverflowError&) {
        certified = false;
      }
    }
    return *certified;
  };

  auto r = detail::pruned_tree_sum(verts, edges, rep.nu, v, tol, max_terms, hooks);
  rep.partial_sum = r.sum;
  rep.term_count = r.terms;
  rep.tail_bound = r.tail;
  rep.converged = r.converged;
  rep.diverged = r.diverged;
  rep.layers = std::move(r.layers);
  rep.residual = v == SeriesVariant::General ? residual_mod_2pi_i(rep.partial_sum, rep.target)
                                             : rep.partial_sum - rep.target;
  if (r.diverged) {
    rep.note = "divergence: largest term per depth stopped shrinking";
  } else if (r.budget_hit) {
    rep.note = "term budget exhausted";
  } else if (!r.converged) {
    rep.note = "tail bound did not drop below tolerance";
  }
  return rep;
}

}  // namespace fricke
