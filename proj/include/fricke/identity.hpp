#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fricke/character.hpp"

namespace fricke {

enum class SeriesVariant { General, Cusp };
std::string variant_name(SeriesVariant v);

// cosh^-1(-kappa/2) on the complex-length branch
cplx nu(const cplx& kappa);

// General: log((e^nu + e^l)/(e^-nu + e^l)), principal branch. Cusp: 1/(1 + e^l).
cplx series_term(const cplx& trace, const cplx& nu, SeriesVariant v);

// value - target - 2 pi i k for the k of least modulus (ties go to the smaller |k|)
cplx residual_mod_2pi_i(const cplx& value, const cplx& target);

// sup over |E| <= e of |term| / |E|, where E = e^{-l}; nullopt when e is too large to bound
std::optional<double> term_ratio_bound(double e, const cplx& nu, SeriesVariant v);

struct LayerRecord {
  int depth = 0;
  cplx layer_sum{};
  double layer_abs = 0;
  double layer_max = 0;
  std::size_t terms = 0;
  cplx cumulative{};
};

struct SeriesReport {
  SeriesVariant variant = SeriesVariant::General;
  cplx nu{};
  cplx partial_sum{};
  std::size_t term_count = 0;
  double tail_bound = 0;
  cplx target{};
  cplx residual{};
  bool converged = false;
  bool diverged = false;
  std::string note;
  std::vector<LayerRecord> layers;
};

constexpr std::size_t kDefaultMaxTerms = 2'000'000;

SeriesReport evaluate_identity(const Character& c, SeriesVariant v, double tol,
                               std::size_t max_terms = kDefaultMaxTerms);

}  // namespace fricke
