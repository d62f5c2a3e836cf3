#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fricke/character.hpp"

namespace fricke {

enum class EndClass { Empty, SingleCurve, CantorLike, FullPL, Unknown };

std::string end_class_name(EndClass c);

// The arc of the projective line cut out by the branch of the dual tree beyond the edge
// left--right, i.e. the arc between the two endpoints that avoids `behind`.
struct FareyInterval {
  Slope left, right, behind;
};

// angular length of the arc, with the projective line mapped to a circle of length 2 pi
double interval_length(const FareyInterval& iv);
// whether the slope lies in the closed arc
bool interval_contains(const FareyInterval& iv, const Slope& s);

using EndCandidate = std::variant<Slope, FareyInterval>;

struct SurvivorLayer {
  int depth = 0;
  std::size_t count = 0;
  double length = 0;
};

struct EndInvariantReport {
  std::vector<EndCandidate> candidates;  // rationals first (increasing), then intervals
  EndClass classification = EndClass::Unknown;
  double bound = 0;
  int depth_used = 0;
  std::string theorem_basis = "none";
  std::vector<std::string> notes;
  std::vector<SurvivorLayer> layers;
  std::size_t pruned = 0;

  std::vector<Slope> rationals() const;
  std::vector<FareyInterval> intervals() const;
};

constexpr std::size_t kDefaultFrontierCap = std::size_t{1} << 16;
constexpr double kDefaultEndBound = 2.5;
constexpr int kDefaultEndDepth = 30;

// Depth-bounded exploration of the dual tree. A branch is dropped only once every trace
// beyond it is provably at least K. Throws ResourceLimitError when the frontier outgrows
// the cap and something had already been dropped (with nothing dropped the pattern is
// reported as FullPL at the depth reached).
EndInvariantReport search_end_invariants(const Character& c, double K, int depth,
                                         std::size_t frontier_cap = kDefaultFrontierCap);

EndInvariantReport classify_end_set(const Character& c, long fuel);

// traces at the slopes of enumerate_slopes(depth)
std::vector<std::pair<Slope, cplx>> traces_to_depth(const TraceTriple& t, int depth);

// real, coordinates in [-2,2], and every trace to the given depth in [-2,2]
bool su2_proxy(const Character& c, int depth = 10);

// distinct traces to the given depth are separated by more than 10 tol
bool discrete_proxy(const Character& c, int depth = 10);

}  // namespace fricke
