#pragma once

// Dense univariate polynomials over Q, coefficients in ascending order.

#include <utility>
#include <vector>

#include "sgen2/arith.hpp"

namespace sgen2 {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(RatVec coeffs);
  static QPoly from_ints(const IntVec& coeffs);
  static QPoly monomial(const Rat& c, size_t deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const RatVec& coeffs() const { return c_; }
  Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& leading() const { return c_.back(); }

  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rat& s, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  RatVec c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);  // monic, or zero

// Sturm chain of a squarefree polynomial.
std::vector<QPoly> sturm_chain(const QPoly& f);
int sign_changes_at(const std::vector<QPoly>& chain, const Rat& x);
int sign_changes_at_infinity(const std::vector<QPoly>& chain, bool positive);
int count_real_roots(const QPoly& f);  // distinct real roots

// Disjoint rational intervals (lo, hi], one per real root.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f);

// Integer roots of a monic integer polynomial (rational root theorem).
std::vector<Int> integer_roots(const IntVec& monic_coeffs);

}  // namespace sgen2
