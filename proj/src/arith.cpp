#include "sgen2/arith.hpp"

#include <limits>
#include <stdexcept>

#include "sgen2/error.hpp"

namespace sgen2 {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotMonic: return "NotMonic";
    case Errc::Reducible: return "Reducible";
    case Errc::DatasheetInvalid: return "DatasheetInvalid";
    case Errc::DatasheetRequired: return "DatasheetRequired";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IndexDivisor: return "IndexDivisor";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::OrderBoundExceeded: return "OrderBoundExceeded";
    case Errc::NotContained: return "NotContained";
    case Errc::CardinalityTooSmall: return "CardinalityTooSmall";
    case Errc::HypothesisFails: return "HypothesisFails";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::NotStabilized: return "NotStabilized";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::InconsistentCM: return "InconsistentCM";
    case Errc::IdentityFailed: return "IdentityFailed";
    case Errc::NotInLattice: return "NotInLattice";
    case Errc::PrimeInS: return "PrimeInS";
    case Errc::ResidueFieldTooLarge: return "ResidueFieldTooLarge";
    case Errc::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rat pow(const Rat& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw Error(Errc::DivisionByZero, "negative power of zero");
    Rat inv = 1 / base;
    return pow(inv, -exp);
  }
  Rat r(pow(base.get_num(), static_cast<unsigned long>(exp)),
        pow(base.get_den(), static_cast<unsigned long>(exp)));
  r.canonicalize();
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r < 0) r += abs(b);
  return r;
}

Int isqrt(const Int& a) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

bool is_square(const Int& a) { return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0; }

bool is_probable_prime(const Int& a) { return a > 1 && mpz_probab_prime_p(a.get_mpz_t(), 30) > 0; }

int valuation_int(Int a, const Int& p) {
  if (a == 0) throw Error(Errc::ZeroElement, "valuation of zero integer");
  int v = 0;
  while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
    a /= p;
    ++v;
  }
  return v;
}

std::vector<std::pair<Int, int>> factor_int(Int a) {
  std::vector<std::pair<Int, int>> out;
  a = abs(a);
  if (a <= 1) return out;
  for (Int d = 2; d * d <= a; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) {
      int e = 0;
      while (mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) {
        a /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (a > 1) out.emplace_back(a, 1);
  return out;
}

std::pair<Int, Int> squarefree_decomposition(const Int& a) {
  Int s = a < 0 ? Int(-1) : Int(1);
  Int f = 1;
  for (const auto& [p, e] : factor_int(a)) {
    f *= pow(p, static_cast<unsigned long>(e / 2));
    if (e % 2) s *= p;
  }
  return {s, f};
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

Int denominator_lcm(const RatVec& v) {
  Int d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

std::string to_string(const Int& a) { return a.get_str(); }
std::string to_string(const Rat& a) { return a.get_str(); }

Rat parse_rat(const std::string& s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw Error(Errc::ConfigInvalid, "malformed rational '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::int64_t to_i64(const Int& a) {
  if (!a.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + a.get_str());
  return a.get_si();
}

}  // namespace sgen2
