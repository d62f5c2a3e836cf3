#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fricke/bq.hpp"
#include "fricke/identity.hpp"
#include "fricke/mapping_class.hpp"

namespace fricke {

enum class ArcSide { Left, Right };
std::string side_name(ArcSide s);

// The two arcs of the line minus the axis endpoints and a fundamental interval for <theta> on
// each: Left is the arc swept increasingly from mu- to mu+, with domain [s0, theta s0); Right
// is the other arc, with domain (theta s1, s1]. The anchor of an arc is 1/0 if the arc holds
// it, otherwise the rational of least denominator in it (ties to the smaller numerator).
class OrbitDomain {
 public:
  explicit OrbitDomain(const MappingClass& theta);

  const MappingClass& theta() const { return theta_; }
  const AxisPair& axis() const { return axis_; }
  const Slope& left_anchor() const { return s0_; }
  const Slope& right_anchor() const { return s1_; }

  ArcSide side(const Slope& s) const;
  // k with theta^k s in the fundamental domain of its arc
  int shift(const Slope& s) const;
  Slope canonical(const Slope& s) const;
  Slope act(const Slope& s, int k) const;
  bool in_domain(const Slope& s) const { return shift(s) == 0; }

  // edge endpoints on opposite arcs
  bool crosses_axis(const Slope& a, const Slope& b) const;
  // whether the far side of edge (a, b) away from `behind` contains mu- or mu+
  bool beyond_holds_axis_end(const Slope& a, const Slope& b, const Slope& behind) const;
  // key of the <theta>-orbit of a triangle
  std::array<Slope, 3> canonical_triangle(const Slope& a, const Slope& b, const Slope& c) const;

 private:
  bool upstream(const Slope& s, ArcSide side) const;
  MappingClass theta_;
  Matrix2i inv_;
  AxisPair axis_;
  Slope s0_, s1_, ts0_, ts1_;
};

struct OrbitRepresentatives {
  std::vector<Slope> all;
  std::vector<ArcSide> sides;  // parallel to `all`
  std::vector<Slope> left;
};

OrbitRepresentatives orbit_representatives(const MappingClass& theta, int depth);

struct FixedPointOptions {
  int grid = 13;  // starts per coordinate
  double radius = 6.0;
  double newton_tol = 1e-10;
  std::size_t max_roots = 64;
  int max_iterations = 200;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

struct FixedCharacter {
  TraceTriple triple;
  double residual = 0;  // max of |apply(t) - t| and |kappa(t) - kappa|
};

std::vector<FixedCharacter> fixed_characters(const MappingClass& theta, const cplx& kappa,
                                             const FixedPointOptions& opts = {});

double fixed_point_residual(const TraceTriple& t, const MappingClass& theta);

// BQ conditions over the orbit space of <theta>; the certificate's triangles are orbit
// representatives and its closure holds modulo theta.
BqVerdict relative_bq(const Character& c, const MappingClass& theta, long fuel);
CheckResult check_relative_certificate(const Character& c, const MappingClass& theta, const SinkCertificate& cert);

struct ConjugatorReport {
  Mat2c A;
  cplx trace_A{};
  cplx length_A{};
  double equation_residual = 0;
};

ConjugatorReport recover_conjugator(const Character& c, const MappingClass& theta, double tol = 1e-8);

struct BundleReport {
  SeriesReport full;
  SeriesReport half;
  std::optional<ConjugatorReport> conjugator;
  int sign = 0;  // +1 or -1: which of +-l(A) the half sum is closer to
  cplx residual_plus{}, residual_minus{};
  bool experimental = false;
};

BundleReport evaluate_bundle_identities(const Character& c, const MappingClass& theta, double tol,
                                        std::size_t max_terms = kDefaultMaxTerms, bool require_relative_bq = true,
                                        long fuel = 100000);

}  // namespace fricke
