#pragma once

// Polynomials over a prime field F_p with p < 2^62, ascending coefficients.

#include <cstdint>
#include <utility>
#include <vector>

#include "sgen2/arith.hpp"

namespace sgen2::fp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;

u64 add(u64 a, u64 b, u64 p);
u64 sub(u64 a, u64 b, u64 p);
u64 mul(u64 a, u64 b, u64 p);
u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);
u64 reduce(const Int& a, u64 p);
u64 reduce(const Rat& a, u64 p);  // denominator must be a unit mod p

void trim(Poly& f);
int degree(const Poly& f);
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p);
Poly rem(const Poly& a, const Poly& b, u64 p);
Poly monic(const Poly& f, u64 p);
Poly gcd(Poly a, Poly b, u64 p);
Poly derivative(const Poly& f, u64 p);
Poly powmod(const Poly& base, const Int& e, const Poly& m, u64 p);

Poly from_ints(const IntVec& c, u64 p);

bool is_squarefree(const Poly& f, u64 p);
bool is_irreducible(const Poly& f, u64 p);

struct Factor {
  Poly g;  // monic irreducible
  int multiplicity;
};

// Complete factorization of a monic polynomial; factors sorted by (degree,
// coefficients) for reproducibility.
std::vector<Factor> factor(const Poly& f, u64 p);

}  // namespace sgen2::fp
