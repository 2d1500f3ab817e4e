#pragma once

#include <optional>

#include "sgen2/fp_poly.hpp"
#include "sgen2/lattice.hpp"
#include "sgen2/number_field.hpp"

namespace sgen2 {

// Nonzero ideal of O_K: canonical row HNF in integral-basis coordinates.
class Ideal {
 public:
  Ideal() = default;

  // Validates that the rows span an O_K-ideal of full rank.
  static Ideal from_hnf(const FieldPtr& K, const IntMatrix& rows);
  // Ideal generated by integral elements (throws ZeroElement if all are zero).
  static Ideal generated_by(const FieldPtr& K, const std::vector<FieldElement>& gens);
  static Ideal principal(const FieldElement& x);
  static Ideal whole(const FieldPtr& K);

  const FieldPtr& field() const { return K_; }
  const IntMatrix& hnf() const { return hnf_; }
  Int norm() const;
  Int minimum() const;  // positive generator of I cap Z
  std::vector<FieldElement> basis() const;
  Lattice lattice() const;  // in power-basis coordinates

  bool contains(const FieldElement& x) const;
  bool contains(const Ideal& other) const;

  Ideal pow(unsigned long k) const;
  friend Ideal operator*(const Ideal& a, const Ideal& b);
  friend Ideal operator+(const Ideal& a, const Ideal& b);
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.hnf_ == b.hnf_; }

 private:
  FieldPtr K_;
  IntMatrix hnf_;
};

struct PrimeIdeal {
  Ideal ideal;
  Int p;
  int e = 1;
  int f = 1;
  FieldElement pi;  // P = (p, pi)

  // Valuation helper: tau in p P^{-1} minus p O_K, so that y in P iff y*tau in p O_K.
  FieldElement tau;
  // Residue field F_p[x]/(modulus); residues of the integral basis elements.
  fp::Poly modulus;
  std::vector<fp::Poly> basis_residues;

  Int residue_size() const { return sgen2::pow(p, static_cast<unsigned long>(f)); }
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal == b.ideal; }
};

struct PrimeFactor {
  PrimeIdeal prime;
  int multiplicity;
};

// Kummer-Dedekind factorization of p O_K, verified (product equals p O_K and
// sum of e*f equals n). Factors are ordered by their residue polynomial
// (degree, then coefficients from the top), which is deterministic.
std::vector<PrimeFactor> factor_rational_prime(const FieldPtr& K, const Int& p);

// Factorization of an ideal into the primes above the divisors of its norm.
std::vector<PrimeFactor> factor_ideal(const Ideal& I);

int valuation(const FieldElement& x, const PrimeIdeal& P);
int valuation(const Ideal& I, const PrimeIdeal& P);

// Image of an integral element in the residue field at P.
fp::Poly residue(const FieldElement& x, const PrimeIdeal& P);

// Smallest positive integer t with t*x integral.
Int integral_denominator(const FieldElement& x);

struct ClassOrderWitness {
  Ideal ideal;
  long order = 1;
  FieldElement generator;
  std::string method;  // "rational", "norm-search", "datasheet"
  Int search_bound = 0;  // largest |b| examined by the norm search at the final power
};

// Exact principality test for Q and quadratic fields: returns a canonical
// generator if the ideal is principal.
std::optional<FieldElement> principal_generator(const Ideal& I, Int* bound_used = nullptr);

// Errors: OrderBoundExceeded, DatasheetRequired, DatasheetInvalid.
ClassOrderWitness class_order(const Ideal& I, long bound = 10000);

}  // namespace sgen2
