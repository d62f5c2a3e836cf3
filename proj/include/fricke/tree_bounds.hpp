#pragma once

#include <optional>

#include "fricke/character.hpp"

namespace fricke {

constexpr double kEscapeMargin = 1e-6;

// Traces around one directed edge of the dual tree: the edge joins `left` and `right`,
// `behind` is the third vertex on our side and `ahead` = left*right - behind is across.
struct EdgeTraces {
  cplx left, right, behind, ahead;
};

EdgeTraces make_edge_traces(const cplx& left, const cplx& right, const cplx& behind);

// t_k = A lambda^k + B lambda^-k is the trace sequence around a fixed pivot with pivot trace
// lambda + 1/lambda, |lambda| > 1, normalised so t_0 and t_1 are the first two fan traces.
struct FanGrowth {
  cplx lambda, A, B;
  // |A||lambda|^k - |B||lambda|^-k: a lower bound on |t_k|, increasing in k
  double lower(int k) const;
};

std::optional<FanGrowth> fan_growth(const cplx& pivot, const cplx& t0, const cplx& t1);

enum class EscapeKind { None, Plain, Fan };

struct EscapeCheck {
  EscapeKind kind = EscapeKind::None;
  // every trace strictly beyond the edge (ahead included) has modulus at least this
  double floor = 0;
};

// Plain: min(|left|,|right|) >= 2+margin and |ahead| >= max(|behind|, min(|left|,|right|)).
// Fan: one side is a pivot with |t| < 2+margin and |lambda| > 1, the other side and the
// first fan trace clear 2+margin; the whole fan and its side branches then stay above it.
EscapeCheck escape_check(const EdgeTraces& e, double margin = kEscapeMargin);

// Bound on the sum of 1/(|t|-1)^2 over every vertex beyond the edge. Needs the traces
// around the edge to grow fast enough (clearance 2.5); nullopt otherwise.
struct DecayBound {
  double sum = 0;
  double floor = 0;  // lower bound on |t| beyond the edge
};

std::optional<DecayBound> subtree_decay(const EdgeTraces& e);

}  // namespace fricke
