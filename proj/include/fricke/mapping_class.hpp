#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fricke/character.hpp"
#include "fricke/quadratic.hpp"
#include "fricke/slope.hpp"

namespace fricke {

// m = (-1)^negate * prod letter^power, read left to right
struct GeneratorWord {
  bool negate = false;
  std::vector<std::pair<Letter, Int>> powers;
};

GeneratorWord factor_matrix(const Matrix2i& m);
GeneratorWord generator_word(const LRWord& w);
Matrix2i generator_matrix(const GeneratorWord& g);

class MappingClass {
 public:
  static MappingClass from_matrix(const Matrix2i& m);
  static MappingClass from_word(const LRWord& w);
  // "a,b,c,d" or a word over {L,R}
  static MappingClass parse(std::string_view text);

  const Matrix2i& matrix() const { return m_; }
  Int trace() const { return m_.trace(); }
  bool is_anosov() const;
  // cyclic LR word of the conjugacy class (Anosov, det 1 only)
  const std::optional<LRWord>& word() const { return word_; }
  // the automorphism of the free group used for matrix-level computations
  const GeneratorWord& lift() const { return lift_; }
  std::string str() const;

 private:
  Matrix2i m_;
  std::optional<LRWord> word_;
  GeneratorWord lift_;
};

// canonical rotation (lexicographically least, L < R) of a positive word conjugate to +-m
LRWord lr_word(const Matrix2i& m);
// exact R/L factorisation of a matrix with non-negative entries and det 1
LRWord positive_factorization(const Matrix2i& m);

struct AxisPair {
  QuadraticIrrational mu_minus;
  QuadraticIrrational mu_plus;  // attracting
};

AxisPair axis_points(const Matrix2i& m);

// triple of the character rho o phi^-1, i.e. t'(g s) = t(s) for the matrix g of phi
TraceTriple apply_mapping_class(const TraceTriple& t, const LRWord& w);
TraceTriple apply_mapping_class(const TraceTriple& t, const Matrix2i& m);
TraceTriple apply_mapping_class(const TraceTriple& t, const GeneratorWord& g);

// images (rho(phi X), rho(phi Y)) of the generators under the automorphism phi
MatrixPair apply_automorphism(const MatrixPair& mp, const GeneratorWord& g);

}  // namespace fricke
