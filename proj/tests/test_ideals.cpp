#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sgen2/error.hpp"
#include "sgen2/ideal.hpp"
#include "sgen2/units.hpp"
#include "support.hpp"

using namespace sgen2;
using testsupport::ints;
using testsupport::quad;
using testsupport::cube_root_two_sheet;

namespace {

FieldPtr gaussian() { return create_field(ints({1, 0, 1})); }


// Smallest u > 0 with disc*u^2 +- 4 a perfect square: the fundamental unit is
// (t + u sqrt(disc))/2. Independent brute force for small discriminants.
std::pair<Int, Int> brute_force_unit(long disc) {
  for (long u = 1;; ++u) {
    for (long sg : {-4L, 4L}) {
      Int t2 = Int(disc) * u * u + sg;
      if (t2 > 0 && is_square(t2)) return {isqrt(t2), Int(u)};
    }
  }
}

}  // namespace

TEST_CASE("factorization examples in Q(i)") {
  auto K = gaussian();
  auto f2 = factor_rational_prime(K, 2);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].prime.e == 2);
  CHECK(f2[0].prime.f == 1);
  CHECK(f2[0].prime.ideal == Ideal::principal(quad(K, 1, 1)));

  auto f5 = factor_rational_prime(K, 5);
  REQUIRE(f5.size() == 2);
  CHECK(f5[0].prime.ideal == Ideal::generated_by(K, {K->from_int(5), quad(K, 2, 1)}));
  CHECK(f5[1].prime.ideal == Ideal::generated_by(K, {K->from_int(5), quad(K, 2, -1)}));
  for (const auto& fac : f5) {
    CHECK(fac.prime.e == 1);
    CHECK(fac.prime.f == 1);
    CHECK(fac.prime.ideal.contains(fac.prime.pi));
  }

  auto f3 = factor_rational_prime(K, 3);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].prime.e == 1);
  CHECK(f3[0].prime.f == 2);
  CHECK(f3[0].prime.ideal.norm() == 9);
}

TEST_CASE("valuation examples") {
  auto K = gaussian();
  auto P = factor_rational_prime(K, 2)[0].prime;
  CHECK(valuation(quad(K, 1, 1), P) == 1);
  CHECK(valuation(K->from_int(2), P) == 2);
  CHECK(valuation(K->one(), P) == 0);
  CHECK(valuation(K->from_rat(Rat(1, 8)), P) == -6);
  CHECK_THROWS_AS(valuation(K->zero(), P), Error);
  auto Q = rational_field();
  CHECK(valuation(Q->from_rat(Rat(12, 5)), factor_rational_prime(Q, 2)[0].prime) == 2);
}

TEST_CASE("class order examples") {
  auto K = gaussian();
  auto P = factor_rational_prime(K, 2)[0].prime;
  auto w = class_order(P.ideal);
  CHECK(w.order == 1);
  CHECK(w.generator == quad(K, 1, 1));

  auto K5 = create_field(ints({5, 0, 1}));
  auto P2 = Ideal::generated_by(K5, {K5->from_int(2), quad(K5, 1, 1)});
  CHECK(factor_rational_prime(K5, 2)[0].prime.ideal == P2);
  auto w2 = class_order(P2);
  CHECK(w2.order == 2);
  CHECK(w2.generator == K5->from_int(2));
  CHECK_FALSE(principal_generator(P2).has_value());

  auto unit = class_order(Ideal::whole(K));
  CHECK(unit.order == 1);
  CHECK(unit.generator == K->one());

  // Canonical generators of the primes above 5 and 7.
  auto f5 = factor_rational_prime(K, 5);
  CHECK(class_order(f5[0].prime.ideal).generator == quad(K, 2, 1));
  CHECK(class_order(f5[1].prime.ideal).generator == quad(K, 2, -1));
  auto Q2 = create_field(ints({-2, 0, 1}));
  auto f7 = factor_rational_prime(Q2, 7);
  CHECK(class_order(f7[0].prime.ideal).generator == quad(Q2, 3, 1));

  // Class group of Q(sqrt -23) is cyclic of order 3.
  auto K23 = create_field(ints({6, -1, 1}));  // x^2 - x + 6, disc -23
  auto p2 = factor_rational_prime(K23, 2);
  REQUIRE(p2.size() == 2);
  CHECK(class_order(p2[0].prime.ideal).order == 3);
}

TEST_CASE("lattice index of Z[sqrt 5] in the maximal order") {
  auto K = create_field(ints({-5, 0, 1}));
  auto OK = Ideal::whole(K).lattice();
  auto Zs5 = Lattice::from_generators({K->one().coords(), K->gen().coords()}, 2);
  CHECK(lattice_index(OK, Zs5) == Int(2));
}

TEST_CASE("factorization invariants for small primes") {
  std::vector<FieldPtr> fields{gaussian(), create_field(ints({-2, 0, 1})), create_field(ints({-5, 0, 1})),
                               create_field(ints({5, 0, 1})), create_field(ints({-2, 0, 0, 1}), cube_root_two_sheet())};
  for (const auto& K : fields) {
    for (auto p : primes_up_to(50)) {
      auto facs = factor_rational_prime(K, Int(p));
      long sum = 0;
      Ideal prod = Ideal::whole(K);
      for (const auto& fac : facs) {
        sum += fac.prime.e * fac.prime.f;
        prod = prod * fac.prime.ideal.pow(static_cast<unsigned long>(fac.multiplicity));
        CHECK(fac.prime.ideal.contains(Ideal::principal(K->from_int(p))));
        CHECK(valuation(K->from_int(p), fac.prime) == fac.prime.e);
        CHECK(valuation(fac.prime.pi, fac.prime) >= 1);
      }
      CHECK(sum == static_cast<long>(K->degree()));
      CHECK(prod == Ideal::principal(K->from_int(p)));
    }
  }
}

TEST_CASE("valuation is additive and ideal norms factor") {
  testsupport::Sampler rng(31);
  std::vector<FieldPtr> fields{gaussian(), create_field(ints({-2, 0, 1})), create_field(ints({-1, -1, 1}))};
  for (const auto& K : fields) {
    std::vector<PrimeIdeal> primes;
    for (long p : {2L, 3L, 5L, 7L})
      for (auto& f : factor_rational_prime(K, p)) primes.push_back(f.prime);
    for (int t = 0; t < 25; ++t) {
      auto x = rng.nonzero_element(K), y = rng.nonzero_element(K);
      for (const auto& P : primes) CHECK(valuation(x * y, P) == valuation(x, P) + valuation(y, P));
      RatVec c(K->degree());
      for (auto& v : c) v = rng.range(-30, 30);
      c[0] += 1;
      auto z = K->element(K->from_basis(c));
      if (z.is_zero()) continue;
      auto I = Ideal::principal(z);
      Int prod = 1;
      for (const auto& fac : factor_ideal(I)) prod *= pow(fac.prime.p, static_cast<unsigned long>(fac.prime.f * fac.multiplicity));
      CHECK(prod == I.norm());
      CHECK(Rat(I.norm()) == (z.norm() < 0 ? Rat(-z.norm()) : z.norm()));
    }
  }
}

TEST_CASE("class order generators have the right valuations") {
  for (long D : {-1L, 2L, -5L, 10L, -23L}) {
    auto K = create_field(ints({-D, 0, 1}));
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
      auto facs = factor_rational_prime(K, p);
      for (size_t i = 0; i < facs.size(); ++i) {
        auto w = class_order(facs[i].prime.ideal);
        CHECK(facs[i].prime.ideal.pow(static_cast<unsigned long>(w.order)) == Ideal::principal(w.generator));
        for (size_t j = 0; j < facs.size(); ++j)
          CHECK(valuation(w.generator, facs[j].prime) == (i == j ? w.order : 0));
        for (long k = 1; k < w.order; ++k)
          CHECK_FALSE(principal_generator(facs[i].prime.ideal.pow(static_cast<unsigned long>(k))).has_value());
      }
    }
  }
}

TEST_CASE("datasheet class orders are verified") {
  Datasheet ds = cube_root_two_sheet();
  ds.class_orders.push_back({{ints({2, 0, 0}), ints({0, 1, 0}), ints({0, 0, 1})}, 1, {0, 1, 0}});
  auto K = create_field(ints({-2, 0, 0, 1}), ds);
  auto f2 = factor_rational_prime(K, 2);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].prime.e == 3);
  auto w = class_order(f2[0].prime.ideal);
  CHECK(w.generator == K->gen());
  CHECK(w.method == "datasheet");
  auto f3 = factor_rational_prime(K, 3);
  CHECK_THROWS_WITH_AS(class_order(f3[0].prime.ideal), doctest::Contains("DatasheetRequired"), Error);

  Datasheet wrong = ds;
  wrong.class_orders[0].generator = {2, 0, 0};
  auto K2 = create_field(ints({-2, 0, 0, 1}), wrong);
  CHECK_THROWS_WITH_AS(class_order(factor_rational_prime(K2, 2)[0].prime.ideal), doctest::Contains("DatasheetInvalid"), Error);
}

TEST_CASE("index divisors are rejected in the datasheet tier") {
  // x^3 - 12 has index 2 ... use x^3 + x^2 - 2x + 8 style example: theta/2-type basis.
  Datasheet ds;
  // K = Q(theta), theta^3 = 8*2 = 16 -> (theta/2)^3 = 2; O_K = Z[theta/2].
  ds.integral_basis = {{1, 0, 0}, {0, Rat(1, 2), 0}, {0, 0, Rat(1, 4)}};
  ds.fundamental_units = {{-1, Rat(1, 2), 0}};
  auto K = create_field(ints({-16, 0, 0, 1}), ds);
  CHECK(K->index() == 8);
  CHECK_THROWS_WITH_AS(factor_rational_prime(K, 2), doctest::Contains("IndexDivisor"), Error);
  CHECK(factor_rational_prime(K, 5).size() == 2);
}

TEST_CASE("units") {
  auto K = gaussian();
  auto t = torsion_subgroup(K);
  CHECK(t.order == 4);
  CHECK(t.generator == K->gen());
  CHECK(torsion_subgroup(create_field(ints({1, -1, 1}))).order == 6);
  CHECK(torsion_subgroup(create_field(ints({5, 0, 1}))).order == 2);
  CHECK(torsion_subgroup(rational_field()).order == 2);

  auto Q2 = create_field(ints({-2, 0, 1}));
  CHECK(real_quadratic_fundamental_unit(Q2) == quad(Q2, 1, 1));
  auto Q5 = create_field(ints({-5, 0, 1}));
  CHECK(real_quadratic_fundamental_unit(Q5) == quad(Q5, Rat(1, 2), Rat(1, 2)));

  for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 14L, 15L, 17L, 19L, 21L, 22L, 23L, 29L, 31L, 46L, 61L, 94L}) {
    auto F = create_field(ints({-d, 0, 1}));
    auto eps = real_quadratic_fundamental_unit(F);
    auto [t0, u0] = brute_force_unit(static_cast<long>(F->discriminant().get_si()));
    // eps = (t + u sqrt(disc))/2 with t, u > 0.
    Rat sqrt_disc_coeff = F->discriminant() == F->quadratic_d() ? Rat(1) : Rat(2);
    auto expect = Rat(t0, 2) * F->one() + Rat(u0, 2) * sqrt_disc_coeff * F->sqrt_d();
    CHECK_MESSAGE(eps == expect, "d = " << d);
  }

  // unit_log round trip.
  auto eps = real_quadratic_fundamental_unit(Q2);
  auto tq = torsion_subgroup(Q2);
  for (long k = -6; k <= 6; ++k)
    for (long s : {1L, -1L}) {
      auto u = Rat(s) * eps.pow(k);
      auto lg = unit_log(u, tq, {eps});
      CHECK(lg.exponents[0] == k);
      CHECK(lg.torsion_exponent == (s == 1 ? 0 : 1));
    }
  auto Kc = create_field(ints({-2, 0, 0, 1}), cube_root_two_sheet());
  auto uc = fundamental_units(Kc);
  REQUIRE(uc.size() == 1);
  auto lg = unit_log(uc[0].pow(-3), torsion_subgroup(Kc), uc);
  CHECK(lg.exponents[0] == -3);
  CHECK_THROWS_AS(unit_log(Kc->from_int(2), torsion_subgroup(Kc), uc), Error);
}
