#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fricke/bq.hpp"
#include "fricke/errors.hpp"
#include "fricke/identity.hpp"
#include "oracles.hpp"

using namespace fricke;

namespace {

const double pi = std::numbers::pi;

}  // namespace

TEST_CASE("nu examples") {
  CHECK(std::abs(nu(-2)) < 1e-12);
  CHECK(std::abs(nu(-4) - cplx(1.3169578969248166)) < 1e-12);
  CHECK(std::abs(nu(2) - cplx(0, pi)) < 1e-12);
  oracle::Gen g(6);
  for (int i = 0; i < 200; ++i) {
    cplx k = g.disk(20);
    CHECK(std::abs(2.0 * std::cosh(nu(k)) + k) < 1e-9 * std::max(1.0, std::abs(k)));
  }
}

TEST_CASE("series term examples") {
  CHECK(std::abs(series_term(3, 0, SeriesVariant::Cusp) - cplx(0.12732200375003502)) < 1e-12);
  CHECK(std::abs(series_term(2, 0, SeriesVariant::Cusp) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(series_term(3, 0, SeriesVariant::General)) < 1e-15);
  CHECK(std::abs(series_term(7, 0.3, SeriesVariant::General)) > 0);
}

TEST_CASE("series term matches the long double oracle") {
  oracle::Gen g(60);
  for (int i = 0; i < 2000; ++i) {
    cplx t = g.disk(40), n = g.box(2);
    if (std::abs(t * t - 4.0) < 1e-3) continue;
    cplx a = series_term(t, n, SeriesVariant::General), b = oracle::general_term(t, n);
    // compare modulo 2 pi i, the branch of the log is the principal one on both sides
    cplx d = a - b;
    d.imag(std::remainder(d.imag(), 2 * pi));
    CHECK(std::abs(d) < 1e-9 * std::max(1.0, std::abs(b)));
    CHECK(std::abs(series_term(t, 0, SeriesVariant::Cusp) - oracle::cusp_term(t)) < 1e-12);
  }
}

TEST_CASE("derivative of the general term in nu is twice the cusp term") {
  const double h = 1e-4;
  for (cplx t : {cplx(3), cplx(4), cplx(10), cplx(3, 2)}) {
    cplx fd = series_term(t, h, SeriesVariant::General) / h;
    CHECK(std::abs(fd - 2.0 * series_term(t, 0, SeriesVariant::Cusp)) < 1e-6);
  }
}

TEST_CASE("residual modulo 2 pi i") {
  CHECK(std::abs(residual_mod_2pi_i(cplx(1, 2 * pi), 1)) < 1e-12);
  CHECK(std::abs(residual_mod_2pi_i(cplx(0, -4 * pi + 0.1), 0) - cplx(0, 0.1)) < 1e-12);
  // an exact half turn is a tie and stays at k = 0
  CHECK(residual_mod_2pi_i(cplx(0, pi), 0) == cplx(0, pi));
  CHECK(residual_mod_2pi_i(cplx(0, -pi), 0) == cplx(0, -pi));
  oracle::Gen g(61);
  for (int i = 0; i < 500; ++i) {
    cplx v = g.box(50), t = g.box(5);
    cplx r = residual_mod_2pi_i(v, t);
    CHECK(std::abs(r.imag()) <= pi + 1e-9);
    CHECK(r.real() == doctest::Approx((v - t).real()));
    double k = (v - t - r).imag() / (2 * pi);
    CHECK(std::abs(k - std::round(k)) < 1e-9);
  }
}

TEST_CASE("term ratio bound dominates sampled terms") {
  oracle::Gen g(62);
  for (int i = 0; i < 200; ++i) {
    cplx n = g.box(1.5);
    double e = g.uniform(0.01, 0.3);
    auto b = term_ratio_bound(e, n, SeriesVariant::General);
    if (!b) continue;
    for (int j = 0; j < 50; ++j) {
      cplx E = g.disk(e);
      if (std::abs(E) < 1e-12) continue;
      cplx term = std::log((1.0 + E * std::exp(n)) / (1.0 + E * std::exp(-n)));
      CHECK(std::abs(term) / std::abs(E) <= *b * (1 + 1e-9));
    }
  }
  auto c = term_ratio_bound(0.2, 0, SeriesVariant::Cusp);
  REQUIRE(c);
  CHECK(*c >= 1.0);
}

TEST_CASE("identity examples") {
  auto r = evaluate_identity(Character({3, 3, 3}), SeriesVariant::Cusp, 1e-8);
  CHECK(r.converged);
  CHECK(std::abs(r.partial_sum - 0.5) < 1e-6);
  CHECK(std::abs(r.residual) < 1e-6);

  auto a = evaluate_identity(Character({3, 3, 4}), SeriesVariant::General, 1e-8);
  auto b = evaluate_identity(Character({3, 3, 5}), SeriesVariant::General, 1e-8);
  CHECK(a.converged);
  CHECK(b.converged);
  // equal kappa, equal target
  CHECK(std::abs(a.target - b.target) < 1e-12);
  CHECK(std::abs(a.target - cplx(1.3169578969248166)) < 1e-12);
  CHECK(std::abs(a.residual) < 1e-6);
  CHECK(std::abs(b.residual) < 1e-6);

  auto d = evaluate_identity(Character({1, 1, 1}), SeriesVariant::General, 1e-8, 200000);
  CHECK(d.diverged);
  CHECK_FALSE(d.converged);

  CHECK_THROWS_AS(evaluate_identity(Character({2, 2, 2}), SeriesVariant::General, 1e-8), PreconditionError);
  CHECK_THROWS_AS(evaluate_identity(Character({3, 3, 4}), SeriesVariant::Cusp, 1e-8), PreconditionError);
  CHECK_THROWS_AS(evaluate_identity(Character({3, 3, 3}), SeriesVariant::Cusp, 0), ArgumentError);
}

TEST_CASE("layer sums agree with a brute force sum over the tree") {
  oracle::Gen g(63);
  for (int i = 0; i < 8; ++i) {
    TraceTriple t = g.triple_disk(5);
    Character c(t);
    if (decide_extended_bq(c, 20000).status != BqStatus::Satisfies) continue;
    auto r = evaluate_identity(c, SeriesVariant::General, 1e-8);
    for (const auto& layer : r.layers) {
      if (layer.depth > 10) break;
      // all_traces(t, d - 1) covers the same slopes as the depth d enumeration
      auto traces = layer.depth == 0 ? std::vector<cplx>{t.x, t.y, t.z} : oracle::all_traces(t, layer.depth - 1);
      cplx sum = 0;
      for (const auto& tr : traces) sum += oracle::general_term(tr, r.nu);
      CHECK(std::abs(sum - layer.cumulative) < 1e-9 * std::max(1.0, std::abs(sum)));
    }
  }
}

TEST_CASE("layer sums eventually decrease and terms decay quadratically") {
  for (TraceTriple t : {TraceTriple{3, 3, 3}, TraceTriple{3, 3, 4}, TraceTriple{cplx(3, 1), 3, 4}}) {
    Character c(t);
    REQUIRE(decide_bq(c, 10000).status == BqStatus::Satisfies);
    // nu = 0 makes every general term vanish at kappa = -2, the cusp series is the interesting one there
    auto v = std::abs(c.kappa() + 2.0) < 1e-12 ? SeriesVariant::Cusp : SeriesVariant::General;
    auto r = evaluate_identity(c, v, 1e-10);
    REQUIRE(r.layers.size() >= 8);
    for (std::size_t i = r.layers.size() - 5; i < r.layers.size(); ++i)
      CHECK(r.layers[i].layer_abs < r.layers[i - 1].layer_abs);

    // fit C on shallow terms, then the bound must hold deeper down
    auto term = [&](cplx tr) { return v == SeriesVariant::Cusp ? oracle::cusp_term(tr) : oracle::general_term(tr, r.nu); };
    auto shallow = oracle::all_traces(t, 6), deep = oracle::all_traces(t, 13);
    double C = 0;
    for (const auto& tr : shallow)
      if (std::abs(tr) >= 10) C = std::max(C, std::abs(term(tr)) * std::norm(tr));
    REQUIRE(C > 0);
    // beyond 1e100 the term underflows and |t|^2 overflows
    for (const auto& tr : deep)
      if (std::abs(tr) >= 10 && std::abs(tr) <= 1e100) CHECK(std::abs(term(tr)) <= 1.5 * C / std::norm(tr));
  }
}

TEST_CASE("satisfying characters converge to their target") {
  oracle::Gen g(64);
  int n = 0;
  for (int i = 0; i < 40 && n < 6; ++i) {
    Character c(g.triple_disk(5));
    if (decide_extended_bq(c, 20000).status != BqStatus::Satisfies) continue;
    ++n;
    auto r = evaluate_identity(c, SeriesVariant::General, 1e-9);
    CHECK(r.converged);
    CHECK(std::abs(r.residual) < 1e-5);
  }
  CHECK(n == 6);
}

TEST_CASE("a long transient near an elliptic trace is not reported as divergence") {
  // y is close to 0, the twist family about 1/0 grows very slowly and layer sums rise for dozens of depths
  Character c({cplx(-2.20650584837, -2.86527994426), cplx(0.0190988719903, 0.0470923637413),
               cplx(-4.27757617879, 0.724200550493)});
  REQUIRE(decide_extended_bq(c, 20000).status == BqStatus::Satisfies);
  auto r = evaluate_identity(c, SeriesVariant::General, 1e-9);
  CHECK_FALSE(r.diverged);
  CHECK(r.converged);
  CHECK(std::abs(r.residual) < 1e-6);
  std::size_t rising = 0;
  for (std::size_t i = 1; i < r.layers.size() && i < 30; ++i)
    if (std::abs(r.layers[i].layer_sum) > std::abs(r.layers[i - 1].layer_sum)) ++rising;
  CHECK(rising >= 5);
}
