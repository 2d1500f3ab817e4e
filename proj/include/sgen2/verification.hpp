#pragma once

// Exact replay of the matrix identities behind the construction, the ideal
// ladder a -> b -> c -> q, word witnesses for elementary matrices and
// surjectivity of the generators onto SL_2 of residue fields.

#include "sgen2/generators.hpp"
#include "sgen2/modp.hpp"

namespace sgen2 {

// ---------------------------------------------------------------- identities

struct IdentityCheck {
  std::string name;
  long instances = 0;
  long failures = 0;
  std::string first_failure;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool passed() const;
};

struct IdentityRanges {
  long r_lo = -5, r_hi = 5;
  long s_lo = -5, s_hi = 5;
};

// `ideal_samples` are elements x, y of the ideal a; `ladder_powers` are the
// exponents N for which the Case 2 commutator identities are replayed.
IdentityReport identity_suite(const GeneratorTriple& T, const IdentityRanges& ranges,
                              const std::vector<FieldElement>& ideal_samples, const std::vector<long>& ladder_powers);

// ---------------------------------------------------------------- ladder

struct IdealLadder {
  // a = m O_S with m = [O_S : h Z[alpha^2]] (O_S of the field of alpha).
  Int m = 0;
  int a_level = 0;
  bool a_in_hZ = false;  // m Lambda_k lies in h Z[alpha^2] at the stable level

  // Case 2 only.
  bool has_case2 = false;
  long N = 0;
  FieldElement b_factor;  // h^2 d, so that b = h^2 d a
  Int a_over_b = 0;       // [a : b] at the stable level
  Int c_index = 0;        // [O_S(F) : c], c = (alpha^{2N} - 1) Z[alpha^2] cap a
  int c_level = 0;
  bool c_in_a = false;
  Int q_scale = 0;        // q = M O_S with M = [O_S : c + sqrt(-d) c]
  int q_level = 0;
  bool q_contained = false;

  bool passed() const;
};

// Errors: NotStabilized.
IdealLadder ideal_ladder(const GeneratorTriple& T, long N, int max_level = 12);

// Elements m * x for x sampled from the level lattices of the ring of alpha.
std::vector<FieldElement> sample_ideal(const GeneratorTriple& T, const Int& m, size_t count, std::uint64_t seed);

// ---------------------------------------------------------------- witnesses

enum class Letter { Gamma, Psi1, Psi2 };
enum class Side { Upper, Lower };

struct WitnessWord {
  std::vector<std::pair<Letter, Int>> letters;
  std::vector<std::pair<long, Int>> terms;  // (r_j, s_j): target = unit * h * sum s_j alpha^{2 r_j}
};

// Upper side: target in h Z[alpha^2] (Case 1) or h sqrt(-d) Z[alpha^2] (Case 2),
// realized as prod gamma^r psi2^s gamma^-r. Lower side: target in h Z[alpha^2]
// as prod gamma^-r psi1^s gamma^r. Errors: NotInLattice.
WitnessWord elementary_witness(const GeneratorTriple& T, const FieldElement& target, Side side,
                               size_t max_power = 64);

Mat2 evaluate(const GeneratorTriple& T, const WitnessWord& w);

// ---------------------------------------------------------------- mod P

struct ModPReport {
  PrimeIdeal P;
  Int q = 0;
  std::uint64_t reached = 0;
  std::uint64_t expected = 0;
  bool pass = false;
  long radius = 0;
  std::uint64_t states = 0;
};

// Reduction of an element of O_S modulo P (P not in S), clearing denominators
// with powers of the clearing element.
fp::Poly reduce_mod(const GeneratorTriple& T, const FieldElement& x, const PrimeIdeal& P);

// Errors: PrimeInS, ResidueFieldTooLarge.
ModPReport modp_surjectivity(const GeneratorTriple& T, const PrimeIdeal& P, long q_bound = 10000);

// Independent checks for several primes. Reduction is done serially; the
// group-order kernels run in parallel (OpenMP) when `parallel` is set. The
// result order always follows the input order.
std::vector<ModPReport> modp_batch(const GeneratorTriple& T, const std::vector<PrimeIdeal>& primes, bool parallel = true,
                                   long q_bound = 10000);

// The first `count` primes P not in S with residue field size <= q_bound,
// by rational prime and then factor order.
std::vector<PrimeIdeal> admissible_primes(const GeneratorTriple& T, size_t count = 10, long q_bound = 100);

}  // namespace sgen2
