#pragma once

// Shared helpers for the unit tests: deterministic sampling and small
// constructors that keep test bodies readable.

#include <random>

#include "sgen2/number_field.hpp"

namespace testsupport {

using namespace sgen2;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rat small_rat(long num_bound, long den_bound) {
    Rat r(Int(range(-num_bound, num_bound)), Int(range(1, den_bound)));
    r.canonicalize();
    return r;
  }

  FieldElement element(const FieldPtr& K, long num_bound = 9, long den_bound = 5) {
    RatVec c(K->degree());
    for (auto& x : c) x = small_rat(num_bound, den_bound);
    return K->element(std::move(c));
  }

  FieldElement nonzero_element(const FieldPtr& K) {
    for (;;) {
      auto x = element(K);
      if (!x.is_zero()) return x;
    }
  }

  IntMatrix int_matrix(size_t rows, size_t cols, long bound) {
    IntMatrix m(rows, IntVec(cols));
    for (auto& row : m)
      for (auto& x : row) x = range(-bound, bound);
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

inline IntVec ints(std::initializer_list<long> v) {
  IntVec out;
  for (long x : v) out.emplace_back(x);
  return out;
}

inline RatVec rats(std::initializer_list<Rat> v) { return RatVec(v); }

// Element a + b*theta of a quadratic field.
inline FieldElement quad(const FieldPtr& K, const Rat& a, const Rat& b) { return K->element({a, b}); }

// Q(2^(1/3)): maximal order Z[theta], unit theta - 1.
inline Datasheet cube_root_two_sheet() {
  Datasheet ds;
  ds.integral_basis = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  ds.fundamental_units = {{-1, 1, 0}};
  return ds;
}

// Q(zeta_8) = Q[x]/(x^4 + 1): Z[zeta], unit 1 + zeta - zeta^3, roots of unity of
// order 8, subfields Q(sqrt 2) and Q(i).
inline Datasheet cyclotomic8_sheet() {
  Datasheet ds;
  ds.integral_basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  ds.fundamental_units = {{1, 1, 0, -1}};
  ds.torsion = Datasheet::Torsion{8, {0, 1, 0, 0}};
  ds.subfields.push_back({ints({-2, 0, 1}), {0, 1, 0, -1}, nullptr});
  ds.subfields.push_back({ints({1, 0, 1}), {0, 0, 1, 0}, nullptr});
  return ds;
}

}  // namespace testsupport
