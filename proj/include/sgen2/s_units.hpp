#pragma once

// S-unit groups, subfield rank comparison, the choice of a good S-unit alpha
// and the additive index of Z[alpha^n] in O_S.

#include <functional>
#include <optional>
#include <string>

#include "sgen2/ideal.hpp"
#include "sgen2/lattice.hpp"
#include "sgen2/units.hpp"

namespace sgen2 {

// S = S_inf together with a list of distinct finite primes of K.
struct PrimeSet {
  FieldPtr field;
  std::vector<PrimeIdeal> finite;

  static PrimeSet make(const FieldPtr& K, std::vector<PrimeIdeal> finite);

  size_t infinite_count() const { return static_cast<size_t>(field->r1() + field->r2()); }
  size_t card() const { return infinite_count() + finite.size(); }
  std::optional<size_t> find(const PrimeIdeal& P) const;
  bool contains(const PrimeIdeal& P) const { return find(P).has_value(); }
};

// Generators of a finite-index subgroup of the S-units: torsion, fundamental
// units and one class-order generator beta_i per finite prime, with
// beta_i O_K = P_i^{a_i}.
struct SUnitBasis {
  FieldPtr field;
  Torsion torsion;
  std::vector<FieldElement> fund_units;
  std::vector<ClassOrderWitness> witnesses;
  std::vector<FieldElement> s_gens;
  IntMatrix valuation_matrix;  // rows: fund units then s_gens; columns: finite primes of S

  size_t rank() const { return fund_units.size() + s_gens.size(); }
  // B = prod beta_i: an integral S-unit whose support is exactly S - S_inf.
  FieldElement clearing_element() const;
  // zeta^t * prod eps_j^{f_j} * prod beta_i^{c_i}
  FieldElement element(long torsion_exp, const IntVec& fund_exps, const IntVec& s_exps) const;
};

// Errors: CardinalityTooSmall, DatasheetRequired, OrderBoundExceeded.
SUnitBasis s_unit_basis(const PrimeSet& S);

// Rational coordinates of an S-unit over (fund units, s_gens), torsion
// dropped. Throws NotContained if x is not an S-unit.
RatVec s_unit_coordinates(const SUnitBasis& B, const PrimeSet& S, const FieldElement& x);

// A prime q of a subfield F below the finite primes of S.
struct ContractedPrime {
  PrimeIdeal prime;             // prime of F
  std::vector<size_t> in_S;     // indices into S.finite of the K-primes above q
  size_t primes_above = 0;      // number of K-primes above q
  std::vector<int> ramification;  // e(P|q) for the entries of in_S
  bool all_above_in_S() const { return in_S.size() == primes_above; }
};

struct SubfieldDescriptor {
  FieldPtr field;
  FieldElement embedding;  // image in K of the generator of F
  std::vector<ContractedPrime> contracted;  // S(F) minus its infinite part

  FieldElement embed(const FieldElement& x) const { return sgen2::embed(x, embedding); }
  std::string label() const;
};

// Errors: NotASubfield.
SubfieldDescriptor describe_subfield(const PrimeSet& S, const FieldPtr& F, const FieldElement& embedding);
// All proper subfields known to K (always Q when n > 1).
std::vector<SubfieldDescriptor> proper_subfields(const PrimeSet& S);

// rank(O_{S(F)}^* cap O_S^*) = rank(O_F^*) + #{q in S(F) : every prime above q is in S}.
int rank_of_intersection(const PrimeSet& S, const SubfieldDescriptor& F);

struct CMStructure {
  size_t subfield = 0;  // index into K->subfields()
  FieldPtr F;
  FieldElement embedding;
  FieldElement d;             // totally positive, lies in F
  FieldElement sqrt_minus_d;  // squares to -d
};

// K totally imaginary with a declared totally real subfield of index 2.
std::optional<CMStructure> is_cm(const FieldPtr& K);

// The additive filtration O_S = union_k B^{-k} O, where O is an order given by
// a Z-basis in K (O_K itself, or an embedded O_F).
struct Filtration {
  std::vector<FieldElement> order_basis;
  FieldElement clearing;  // B
  size_t degree = 0;      // rank of O

  static Filtration of(const SUnitBasis& B);
  Lattice level(int k) const;
};

// Lattice spanned by m * a^j for m in mults and 0 <= j <= max_power.
Lattice monomial_lattice(const FieldElement& a, const std::vector<FieldElement>& mults, size_t max_power);

struct LevelValue {
  int level = 0;
  std::optional<Int> index;  // nullopt: infinite at this level
};

struct StableIndex {
  Int index = 0;
  int level = 0;  // first level of the stable run
  std::vector<LevelValue> history;
};

// Index [outer(k) : inner(k, D)] with D = degree * (k + 2). Stable at level k
// once the values at k, k+1, k+2 are finite and equal and raising D by
// `degree` at level k leaves the value unchanged. Errors: NotStabilized.
StableIndex stabilized_index(const std::function<Lattice(int)>& outer,
                             const std::function<Lattice(int, size_t)>& inner, size_t degree,
                             int max_level = 12);

// [O_S : sum_m m Z[a]] where a = alpha^n and O_S is described by L.
StableIndex zalpha_index(const Filtration& L, const FieldElement& alpha, long n,
                         const std::vector<FieldElement>& mults = {}, int max_level = 12);

struct AvoidanceCheck {
  std::string subspace;  // "V[...]" or "W[...]"
  std::string witness;
  bool passed = false;
};

struct IndexEntry {
  long n = 1;
  Int index = 0;
  int level = 0;
};

struct AlphaCertificate {
  FieldElement alpha;
  long torsion_exponent = 0;
  IntVec fund_exponents;
  IntVec s_exponents;  // c_i > 0 with alpha = ... * prod beta_i^{-c_i}
  long search_norm = 0;
  std::vector<int> valuations;  // v_P(alpha) for P in S - S_inf
  QPoly minimal_poly;
  bool generates_K = false;
  std::vector<AvoidanceCheck> avoidance;

  // alpha^m = u * prod beta_i^{-b_i}; each beta_i^{-1} = cofactor_i * alpha^m.
  long m = 1;
  IntVec b;
  FieldElement absorbed_unit;
  std::vector<FieldElement> inverse_cofactors;

  std::vector<IndexEntry> index_table;
};

// Errors: HypothesisFails, SearchExhausted.
AlphaCertificate choose_alpha(const PrimeSet& S, const SUnitBasis& B, const std::vector<SubfieldDescriptor>& subfields,
                              long coefficient_bound = 32, const std::vector<long>& index_powers = {});

}  // namespace sgen2
