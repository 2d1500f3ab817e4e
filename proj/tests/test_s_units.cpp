#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sgen2/error.hpp"
#include "sgen2/s_units.hpp"
#include "support.hpp"

using namespace sgen2;
using testsupport::ints;
using testsupport::quad;

namespace {

FieldPtr gaussian() { return create_field(ints({1, 0, 1})); }

PrimeSet primes_over(const FieldPtr& K, long p, std::vector<size_t> which) {
  auto f = factor_rational_prime(K, p);
  std::vector<PrimeIdeal> out;
  for (size_t i : which) out.push_back(f.at(i).prime);
  return PrimeSet::make(K, out);
}

PrimeSet all_over(const FieldPtr& K, std::vector<long> ps) {
  std::vector<PrimeIdeal> out;
  for (long p : ps)
    for (const auto& f : factor_rational_prime(K, p)) out.push_back(f.prime);
  return PrimeSet::make(K, out);
}

// Oracle value of [Lambda_k : Z[a]_{<=D} cap Lambda_k] by coset enumeration.
std::optional<Int> oracle_level(const Filtration& L, const FieldElement& a, int k, size_t D) {
  std::vector<RatVec> lam, mono;
  for (const auto& w : L.order_basis) lam.push_back((w * L.clearing.pow(-k)).coords());
  FieldElement p = a.K().one();
  for (size_t j = 0; j <= D; ++j, p = p * a) mono.push_back(p.coords());
  return oracle::coset_count(lam, mono, a.K().degree());
}

}  // namespace

TEST_CASE("S-unit bases of the worked examples") {
  auto K = gaussian();
  auto S1 = primes_over(K, 2, {0});
  CHECK(S1.card() == 2);
  auto B1 = s_unit_basis(S1);
  CHECK(B1.rank() == 1);
  CHECK(B1.torsion.order == 4);
  CHECK(B1.torsion.generator == K->gen());
  REQUIRE(B1.s_gens.size() == 1);
  CHECK(B1.s_gens[0] == quad(K, 1, 1));

  auto S2 = primes_over(K, 5, {0, 1});
  CHECK(S2.card() == 3);
  auto B2 = s_unit_basis(S2);
  CHECK(B2.rank() == 2);
  CHECK(B2.s_gens[0] == quad(K, 2, 1));
  CHECK(B2.s_gens[1] == quad(K, 2, -1));
  CHECK(B2.valuation_matrix == IntMatrix{{1, 0}, {0, 1}});

  auto Q = rational_field();
  auto B3 = s_unit_basis(all_over(Q, {2}));
  CHECK(B3.rank() == 1);
  CHECK(B3.torsion.generator == Q->from_int(-1));
  CHECK(B3.s_gens[0] == Q->from_int(2));

  CHECK_THROWS_WITH_AS(s_unit_basis(PrimeSet::make(K, {})), doctest::Contains("CardinalityTooSmall"), Error);
  CHECK_THROWS_AS(PrimeSet::make(K, {S1.finite[0], S1.finite[0]}), Error);
}

TEST_CASE("rank of the S-unit group is card(S) - 1") {
  std::vector<FieldPtr> fields{rational_field(), gaussian(), create_field(ints({-2, 0, 1})),
                               create_field(ints({-5, 0, 1})), create_field(ints({5, 0, 1})),
                               create_field(ints({6, -1, 1})), create_field(ints({-10, 0, 1}))};
  testsupport::Sampler rng(11);
  int checked = 0;
  for (const auto& K : fields)
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<PrimeIdeal> fin;
      for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        for (const auto& f : factor_rational_prime(K, p))
          if (rng.range(0, 2) == 0) fin.push_back(f.prime);
      }
      auto S = PrimeSet::make(K, fin);
      if (S.card() < 2) continue;
      auto B = s_unit_basis(S);
      CHECK(B.rank() == S.card() - 1);
      // Every generator is an S-unit: valuations vanish at primes outside S.
      for (long p : {17L, 19L, 23L})
        for (const auto& f : factor_rational_prime(K, p))
          for (const auto& g : B.s_gens) CHECK(valuation(g, f.prime) == 0);
      ++checked;
    }
  CHECK(checked > 20);
}

TEST_CASE("S-unit coordinates") {
  auto K = create_field(ints({-2, 0, 1}));
  auto S = primes_over(K, 7, {0});
  auto B = s_unit_basis(S);
  auto x = B.element(1, ints({3}), ints({-2}));
  CHECK(s_unit_coordinates(B, S, x) == RatVec{3, -2});
  CHECK_THROWS_AS(s_unit_coordinates(B, S, K->from_int(3)), Error);
  // Q(sqrt -5): the prime over 2 has class order 2, so coordinates are halves.
  auto K5 = create_field(ints({5, 0, 1}));
  auto S5 = primes_over(K5, 2, {0});
  auto B5 = s_unit_basis(S5);
  CHECK(s_unit_coordinates(B5, S5, K5->from_int(2)) == RatVec{1});
}

TEST_CASE("CM detection") {
  auto K = gaussian();
  auto cm = is_cm(K);
  REQUIRE(cm);
  CHECK(cm->F->degree() == 1);
  CHECK(cm->d == K->one());
  CHECK(cm->sqrt_minus_d * cm->sqrt_minus_d == -cm->d);
  CHECK_FALSE(is_cm(create_field(ints({-2, 0, 1}))));
  CHECK_FALSE(is_cm(rational_field()));
  auto K3 = create_field(ints({-2, 0, 0, 1}), testsupport::cube_root_two_sheet());
  CHECK_FALSE(is_cm(K3));

  auto Z8 = create_field(ints({1, 0, 0, 0, 1}), testsupport::cyclotomic8_sheet());
  auto c8 = is_cm(Z8);
  REQUIRE(c8);
  CHECK(c8->F->defining_poly() == ints({-2, 0, 1}));
  CHECK(c8->sqrt_minus_d * c8->sqrt_minus_d == -c8->d);
  CHECK_FALSE(c8->sqrt_minus_d.is_rational());
  // d lies in the real subfield and is totally positive there.
  for (size_t i = 0; i < 2; ++i) CHECK(Z8->approx_embed(c8->d, i).real() > 0);
}

TEST_CASE("rank of the intersection with subfield S-units") {
  auto K = gaussian();
  auto S1 = primes_over(K, 2, {0});
  auto subs1 = proper_subfields(S1);
  REQUIRE(subs1.size() == 1);
  CHECK(rank_of_intersection(S1, subs1[0]) == 1);

  auto S2 = primes_over(K, 5, {0, 1});
  auto subs2 = proper_subfields(S2);
  CHECK(rank_of_intersection(S2, subs2[0]) == 1);
  REQUIRE(subs2[0].contracted.size() == 1);
  CHECK(subs2[0].contracted[0].primes_above == 2);

  auto Q2 = create_field(ints({-2, 0, 1}));
  auto S3 = primes_over(Q2, 7, {0});
  CHECK(rank_of_intersection(S3, proper_subfields(S3)[0]) == 0);

  // One prime above a split 5 only: the rational prime 5 does not count.
  auto S4 = primes_over(K, 5, {0});
  CHECK(rank_of_intersection(S4, proper_subfields(S4)[0]) == 0);

  // Valuations in K are e times valuations in F.
  auto Kr = create_field(ints({-3, 0, 1}));
  auto Sr = all_over(Kr, {2, 3, 11});
  auto subs_r = proper_subfields(Sr);
  for (const auto& c : subs_r[0].contracted)
    for (size_t t = 0; t < c.in_S.size(); ++t)
      CHECK(valuation(Kr->from_int(c.prime.p), Sr.finite[c.in_S[t]]) == c.ramification[t]);
}

TEST_CASE("non-CM fields satisfy the strict rank inequality") {
  testsupport::Sampler rng(5);
  for (long d : {2L, 3L, 5L, 6L, 7L, 10L}) {
    auto K = create_field(ints({-d, 0, 1}));
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<PrimeIdeal> fin;
      for (long p : {2L, 3L, 5L, 7L, 11L})
        for (const auto& f : factor_rational_prime(K, p))
          if (rng.range(0, 1) == 0) fin.push_back(f.prime);
      auto S = PrimeSet::make(K, fin);
      auto B = s_unit_basis(S);
      for (const auto& sub : proper_subfields(S))
        CHECK(static_cast<size_t>(rank_of_intersection(S, sub)) < B.rank());
    }
  }
}

TEST_CASE("choice of alpha on the worked examples") {
  auto K = gaussian();
  auto S2 = primes_over(K, 5, {0, 1});
  auto B2 = s_unit_basis(S2);
  auto cert = choose_alpha(S2, B2, proper_subfields(S2));
  CHECK(cert.alpha == (quad(K, 2, 1) * quad(K, 2, -1).pow(2)).inverse());
  CHECK(cert.valuations == std::vector<int>{-1, -2});
  CHECK(cert.generates_K);
  CHECK(cert.minimal_poly.degree() == 2);
  CHECK(cert.absorbed_unit == K->one());

  auto S1 = primes_over(K, 2, {0});
  CHECK_THROWS_WITH_AS(choose_alpha(S1, s_unit_basis(S1), proper_subfields(S1)), doctest::Contains("HypothesisFails"),
                       Error);

  auto Q = rational_field();
  auto SQ = all_over(Q, {2});
  auto cq = choose_alpha(SQ, s_unit_basis(SQ), proper_subfields(SQ), 32, {1, 2});
  CHECK(cq.alpha == Q->from_rat(Rat(1, 2)));
  CHECK(cq.valuations == std::vector<int>{-1});
  REQUIRE(cq.index_table.size() == 2);
  CHECK(cq.index_table[0].index == 1);
  CHECK(cq.index_table[1].index == 1);

  // Exponent bound exhaustion is reported, not retried.
  CHECK_THROWS_WITH_AS(choose_alpha(S2, B2, proper_subfields(S2), 1), doctest::Contains("SearchExhausted"), Error);
}

TEST_CASE("alpha certificates hold on random prime sets") {
  testsupport::Sampler rng(23);
  std::vector<FieldPtr> fields{gaussian(), create_field(ints({-2, 0, 1})), create_field(ints({-1, -1, 1})),
                               create_field(ints({5, 0, 1})), create_field(ints({-7, 0, 1}))};
  int built = 0;
  for (const auto& K : fields)
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<PrimeIdeal> fin;
      for (long p : {2L, 3L, 5L, 7L})
        for (const auto& f : factor_rational_prime(K, p))
          if (rng.range(0, 1) == 0) fin.push_back(f.prime);
      auto S = PrimeSet::make(K, fin);
      if (S.card() < 2) continue;
      auto B = s_unit_basis(S);
      auto subs = proper_subfields(S);
      bool hyp = true;
      for (const auto& s : subs)
        if (static_cast<size_t>(rank_of_intersection(S, s)) >= B.rank()) hyp = false;
      if (!hyp) {
        CHECK_THROWS_AS(choose_alpha(S, B, subs), Error);
        continue;
      }
      auto cert = choose_alpha(S, B, subs);
      ++built;
      for (const auto& P : S.finite) CHECK(valuation(cert.alpha, P) < 0);
      CHECK(cert.alpha.minimal_poly().degree() == static_cast<int>(K->degree()));
      int sampled = 0;
      for (long p = 2; sampled < 20; ++p) {
        if (!is_probable_prime(Int(p))) continue;
        for (const auto& f : factor_rational_prime(K, p)) {
          if (S.contains(f.prime) || sampled >= 20) continue;
          CHECK(valuation(cert.alpha, f.prime) == 0);
          ++sampled;
        }
      }
      for (size_t i = 0; i < B.s_gens.size(); ++i)
        CHECK(cert.inverse_cofactors[i] * cert.alpha.pow(cert.m) * B.s_gens[i] == K->one());
    }
  CHECK(built >= 8);
}

TEST_CASE("index of Z[alpha] in the S-integers") {
  auto Q = rational_field();
  auto SQ = all_over(Q, {2});
  auto L = Filtration::of(s_unit_basis(SQ));
  auto half = Q->from_rat(Rat(1, 2));
  CHECK(zalpha_index(L, half, 1).index == 1);
  CHECK(zalpha_index(L, half, 2).index == 1);
  // Z[1/3] is not contained in Z[1/2]: the level lattices reject it.
  CHECK_THROWS_AS(zalpha_index(L, Q->from_rat(Rat(1, 3)), 1), Error);

  auto K = create_field(ints({-2, 0, 1}));
  auto S = primes_over(K, 7, {0});
  CHECK(S.finite[0].ideal == Ideal::generated_by(K, {quad(K, 3, 1)}));
  auto B = s_unit_basis(S);
  auto LK = Filtration::of(B);
  auto alpha = quad(K, 1, 1) / quad(K, 3, 1);
  for (long n : {1L, 2L, 3L}) {
    auto r = zalpha_index(LK, alpha, n);
    auto a = alpha.pow(n);
    // Levels are monotone up to the stable run.
    for (size_t k = 1; k < r.history.size(); ++k)
      if (r.history[k - 1].index && r.history[k].index) CHECK(*r.history[k - 1].index <= *r.history[k].index);
    for (int k = 0; k <= 4; ++k) {
      size_t D = 2 * static_cast<size_t>(k + 2);
      auto lib = lattice_index(LK.level(k), monomial_lattice(a, {K->one()}, D).intersect(LK.level(k)));
      auto orc = oracle_level(LK, a, k, D);
      CHECK(lib == orc);
    }
    CHECK(oracle_level(LK, a, 4, 2 * 7) == r.index);
  }
}

TEST_CASE("alpha index tables are finite on the Case 1 instances") {
  auto K = gaussian();
  std::vector<PrimeSet> sets{all_over(rational_field(), {2}), primes_over(K, 5, {0, 1}),
                             primes_over(create_field(ints({-2, 0, 1})), 7, {0}),
                             all_over(create_field(ints({-1, -1, 1})), {2})};
  for (const auto& S : sets) {
    auto B = s_unit_basis(S);
    auto cert = choose_alpha(S, B, proper_subfields(S), 32, {1, 2, 3});
    REQUIRE(cert.index_table.size() == 3);
    auto L = Filtration::of(B);
    for (const auto& row : cert.index_table) {
      CHECK(row.index > 0);
      CHECK(row.level <= 4);
      size_t n = S.field->degree();
      CHECK(oracle_level(L, cert.alpha.pow(row.n), 4, n * 7) == row.index);
    }
  }
}
