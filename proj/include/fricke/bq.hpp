#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fricke/character.hpp"
#include "fricke/tree_bounds.hpp"

namespace fricke {

enum class BqStatus { Satisfies, Fails, Inconclusive };
enum class BqVariant { Standard, Extended };
enum class Evidence { ForbiddenTrace, ReducibleKappa, PeriodicBoundedOrbit };

std::string status_name(BqStatus s);
std::string evidence_name(Evidence e);

// closed interval [-2,2] for the standard conditions, open (-2,2) for the extended ones
bool in_forbidden_set(const cplx& t, BqVariant v, double tol = kDefaultClassTol);

struct BoundaryEdge {
  Slope left, right, behind;
  EscapeKind kind = EscapeKind::Plain;
};

// A finite connected set of triangles of the dual tree. Every edge of a listed triangle
// is either shared with another listed triangle or is a boundary edge that escapes.
struct SinkCertificate {
  std::vector<std::array<Slope, 3>> triangles;
  std::vector<BoundaryEdge> boundary;
};

struct BqWitness {
  Evidence evidence = Evidence::ForbiddenTrace;
  std::optional<Slope> slope;
  cplx trace{};
  // slopes of a repeating bounded family, for periodic evidence
  std::vector<Slope> family;
};

struct BqVerdict {
  BqStatus status = BqStatus::Inconclusive;
  BqVariant variant = BqVariant::Standard;
  std::optional<SinkCertificate> certificate;
  std::optional<BqWitness> witness;
  long fuel_spent = 0;
};

BqVerdict decide_bq(const Character& c, long fuel);
BqVerdict decide_extended_bq(const Character& c, long fuel);
BqVerdict decide(const Character& c, long fuel, BqVariant v);

struct CheckResult {
  bool ok = false;
  std::string reason;
};

// Re-validates a verdict without trusting the search: traces recomputed from the base triple.
CheckResult check_certificate(const Character& c, const SinkCertificate& cert, BqVariant v);
CheckResult check_witness(const Character& c, const BqWitness& w, BqVariant v);
CheckResult check_verdict(const Character& c, const BqVerdict& v);

struct BoundedSubgraph {
  double bound = 0;
  int depth = 0;
  std::vector<Slope> vertices;
  std::vector<std::pair<Slope, Slope>> edges;
};

BoundedSubgraph bounded_subgraph(const Character& c, double K, int depth);

struct ConnectivityReport {
  bool connected_within_truncation = true;
  int components = 0;
  int interior_vertices = 0;
};

constexpr int kConnectivityMargin = 2;

ConnectivityReport check_connectivity(const Character& c, double K, int depth, int margin = kConnectivityMargin);

}  // namespace fricke
