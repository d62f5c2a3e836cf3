#pragma once

// Breadth-first summation of series terms over the Farey tree with subtree pruning.
// Shared by the global identities and the bundle sums over a fundamental domain.

#include <functional>
#include <optional>
#include <vector>

#include "fricke/identity.hpp"
#include "fricke/slope.hpp"

namespace fricke::detail {

struct SumEdge {
  DirectedEdge e;
  cplx tl, tr, tb;
};

struct SumVertex {
  Slope s;
  cplx t;
};

struct SumHooks {
  // false: the triangle across the edge was already covered; skip it and everything beyond
  std::function<bool(const DirectedEdge&, const Slope& ahead)> admit;
  // whether the subtree beyond the edge may be replaced by its tail bound
  std::function<bool(const DirectedEdge&)> prunable;
  // nullopt: do not sum this vertex; otherwise true when it also belongs to the secondary sum
  std::function<std::optional<bool>(const Slope&)> weigh;
  // whether the subtree beyond a prunable edge lies in the secondary region
  std::function<bool(const DirectedEdge&)> secondary_subtree;
  // asked once when the stall rule fires; true means the series is known to converge, keep summing
  std::function<bool()> divergence_vetoed;
};

struct SumResult {
  cplx sum{}, secondary{};
  double tail = 0, secondary_tail = 0;
  std::size_t terms = 0;
  bool converged = false;
  bool diverged = false;
  bool budget_hit = false;
  std::vector<LayerRecord> layers;
};

SumResult pruned_tree_sum(const std::vector<SumVertex>& start_vertices, const std::vector<SumEdge>& start_edges,
                          const cplx& nu, SeriesVariant v, double tol, std::size_t max_terms, const SumHooks& hooks);

}  // namespace fricke::detail
