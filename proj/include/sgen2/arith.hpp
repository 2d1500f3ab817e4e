#pragma once

// Arbitrary-precision integer/rational helpers on top of GMP's C++ bindings.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sgen2 {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMatrix = std::vector<IntVec>;
using RatMatrix = std::vector<RatVec>;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int abs(const Int& a);
Int pow(const Int& base, unsigned long exp);
Rat pow(const Rat& base, long exp);

// Floor division / non-negative remainder for b > 0.
Int floor_div(const Int& a, const Int& b);
Int mod(const Int& a, const Int& b);

Int isqrt(const Int& a);  // floor(sqrt(a)), a >= 0
bool is_square(const Int& a);
bool is_probable_prime(const Int& a);

// p-adic valuation of a nonzero integer.
int valuation_int(Int a, const Int& p);

// Trial-division factorization; intended for desk-scale inputs.
std::vector<std::pair<Int, int>> factor_int(Int a);

// Squarefree kernel with sign: a = s * f^2, s squarefree. Returns (s, f).
std::pair<Int, Int> squarefree_decomposition(const Int& a);

std::vector<std::int64_t> primes_up_to(std::int64_t bound);

// Common denominator of a rational vector.
Int denominator_lcm(const RatVec& v);

std::string to_string(const Int& a);
std::string to_string(const Rat& a);
Rat parse_rat(const std::string& s);

std::int64_t to_i64(const Int& a);

}  // namespace sgen2
