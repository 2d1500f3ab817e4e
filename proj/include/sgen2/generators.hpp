#pragma once

// 2x2 matrices over K, the Case 1 / Case 2 classification and the generator
// triple (gamma, psi1, psi2).

#include "sgen2/s_units.hpp"

namespace sgen2 {

struct Mat2 {
  FieldElement a, b, c, d;  // [[a, b], [c, d]]

  static Mat2 identity(const FieldPtr& K);
  static Mat2 diag(const FieldElement& x, const FieldElement& y);
  static Mat2 upper(const FieldElement& x);  // [[1, x], [0, 1]]
  static Mat2 lower(const FieldElement& x);  // [[1, 0], [x, 1]]

  FieldElement det() const;
  bool is_sl2() const { return det().is_one(); }
  Mat2 inverse() const;  // throws DivisionByZero when singular
  Mat2 pow(const Int& e) const;
  std::string to_string() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

// g x g^{-1}, in GL_2(K).
Mat2 conjugate(const Mat2& g, const Mat2& x);

enum class CaseTag { Case1, Case2 };

struct RankRow {
  std::string subfield;
  int intersection_rank = 0;
  int s_unit_rank = 0;
};

struct CaseClassification {
  CaseTag tag = CaseTag::Case1;
  std::optional<size_t> witness;  // index into the subfield list (Case 2)
  std::vector<RankRow> rank_table;
};

// True iff no prime of S(F) splits in K (each is inert or ramified).
bool split_prime_check(const PrimeSet& S, const SubfieldDescriptor& F);

// Errors: CardinalityTooSmall, InconsistentCM.
CaseClassification classify_case(const PrimeSet& S, const std::vector<SubfieldDescriptor>& subfields);

struct CMData {
  SubfieldDescriptor F;
  FieldElement d;
  FieldElement sqrt_minus_d;
};

struct GeneratorTriple {
  PrimeSet S;
  CaseClassification classification;
  long h = 1;
  FieldElement base_alpha;  // output of the alpha search, embedded in K
  FieldElement alpha;       // base_alpha^h
  Mat2 gamma, psi1, psi2;
  std::optional<CMData> cm;

  // Data of the field where alpha was chosen (K in Case 1, F in Case 2).
  PrimeSet alpha_S;
  SUnitBasis alpha_basis;
  AlphaCertificate certificate;

  Filtration ring;     // O_S of the field of alpha, embedded in K
  Filtration ambient;  // O_S of K, with the same clearing element
};

// Errors: ConfigInvalid (h < 1), CardinalityTooSmall, HypothesisFails,
// SearchExhausted, InconsistentCM.
GeneratorTriple build_generators(const PrimeSet& S, long h = 1, long coefficient_bound = 32);

}  // namespace sgen2
