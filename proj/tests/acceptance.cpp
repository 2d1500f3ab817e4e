// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "instances.hpp"
#include "oracles.hpp"
#include "sgen2/error.hpp"
#include "sgen2/linalg.hpp"
#include "sgen2/verification.hpp"
#include "support.hpp"

using namespace sgen2;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = true;
  long checks = 0;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (pass) detail << what;
      else detail << "; " << what;
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double t = seconds_since(t0);
  if (t >= limit_s) o.require(false, "runtime " + std::to_string(t) + " s over the limit");
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << std::fixed
            << std::setprecision(3) << t << " s, " << o.checks << " checks)";
  if (!o.pass) std::cout << " -- " << o.detail.str();
  std::cout << "\n";
  return o.pass;
}

void worked_example(Outcome& o, const PrimeSet& S, size_t card, size_t rank, int rank_F, CaseTag tag) {
  auto B = s_unit_basis(S);
  auto subs = proper_subfields(S);
  auto cls = classify_case(S, subs);
  o.require(S.card() == card, "card(S) = " + std::to_string(S.card()));
  o.require(B.rank() == rank, "rank = " + std::to_string(B.rank()));
  o.require(cls.rank_table.size() == 1 && cls.rank_table[0].subfield == "Q" &&
                cls.rank_table[0].intersection_rank == rank_F,
            "intersection rank with Q differs");
  o.require(cls.tag == tag, "wrong case");
}

FieldElement sample_target(const GeneratorTriple& T, Sampler& rng, bool upper) {
  const auto& K = T.S.field;
  FieldElement a2 = T.alpha * T.alpha, p = K->one(), x = K->zero();
  for (int j = 0; j <= 4; ++j, p = p * a2) x = x + Rat(rng.range(-5, 5)) * p;
  FieldElement unit = K->from_int(T.h);
  if (upper && T.cm) unit = unit * T.cm->sqrt_minus_d;
  return unit * x;
}

}  // namespace

int main() {
  bool all = true;

  all &= report(1, "Example (i): card 2, rank 1, intersection rank 1, Case 2", 1.0, [](Outcome& o) {
    worked_example(o, gaussian_at_two(), 2, 1, 1, CaseTag::Case2);
  });

  all &= report(2, "Example (ii): card 3, rank 2, rank over Q 1, Case 1", 1.0, [](Outcome& o) {
    worked_example(o, gaussian_at_five(), 3, 2, 1, CaseTag::Case1);
  });

  all &= report(3, "desk instances: generators, identities for r, s in [-5, 5], mod-P surjectivity at 10 primes", 60.0,
                [](Outcome& o) {
                  for (const auto& inst : desk_instances()) {
                    auto T = build_generators(inst.S);
                    auto L = ideal_ladder(T, 1);
                    auto ids = identity_suite(T, {}, sample_ideal(T, L.m, 6, 1), {1, 2, 3});
                    for (const auto& c : ids.checks)
                      o.require(c.failures == 0, inst.name + ": identity '" + c.name + "' fails at " + c.first_failure);
                    auto primes = admissible_primes(T, 10, 100);
                    o.require(primes.size() == 10, inst.name + ": fewer than 10 admissible primes");
                    for (const auto& r : modp_batch(T, primes, true, 100))
                      o.require(r.pass, inst.name + ": q = " + to_string(r.q) + " (p = " + to_string(r.P.p) +
                                            ") reached " + std::to_string(r.reached) + " of " +
                                            std::to_string(r.expected));
                  }
                });

  all &= report(4, "alpha certificates on the Case 1 instances, index oracle at levels k <= 4", 60.0, [](Outcome& o) {
    for (const auto& inst : desk_instances()) {
      const auto& S = inst.S;
      auto subs = proper_subfields(S);
      if (classify_case(S, subs).tag != CaseTag::Case1) continue;
      const auto& K = S.field;
      auto B = s_unit_basis(S);
      auto cert = choose_alpha(S, B, subs);
      for (const auto& P : S.finite)
        o.require(valuation(cert.alpha, P) < 0, inst.name + ": alpha is not negative at a prime of S");
      o.require(cert.alpha.minimal_poly().degree() == static_cast<int>(K->degree()), inst.name + ": minpoly degree");
      auto L = Filtration::of(B);
      for (long n : {1, 2, 3}) {
        FieldElement an = cert.alpha.pow(n);
        auto r = zalpha_index(L, cert.alpha, n);
        o.require(r.index > 0, inst.name + ": index not finite");
        for (int k = 0; k <= 4; ++k) {
          size_t D = K->degree() * static_cast<size_t>(k + 2);
          Lattice level = L.level(k);
          auto lib = lattice_index(level, monomial_lattice(an, {K->one()}, D).intersect(level));
          std::vector<RatVec> lam, mono;
          for (const auto& b : level.basis()) lam.push_back(b);
          FieldElement p = K->one();
          for (size_t j = 0; j <= D; ++j, p = p * an) mono.push_back(p.coords());
          auto orc = oracle::coset_count(lam, mono, K->degree());
          o.require(lib && orc && *lib == *orc,
                    inst.name + ": level " + std::to_string(k) + " n = " + std::to_string(n) + " disagrees");
        }
        // The stable value is the value at its own level.
        for (const auto& h : r.history)
          if (h.level == r.level) o.require(h.index && *h.index == r.index, inst.name + ": stable value mismatch");
      }
    }
  });

  all &= report(5, "witness words for 100 targets in h Z[alpha^2]", 10.0, [](Outcome& o) {
    Sampler rng(2024);
    size_t ok = 0, total = 0;
    auto insts = desk_instances();
    for (const auto& inst : insts) {
      auto T = build_generators(inst.S);
      for (int t = 0; t < 20; ++t, ++total) {
        Side side = t % 2 == 0 ? Side::Upper : Side::Lower;
        FieldElement x = sample_target(T, rng, side == Side::Upper);
        Mat2 expected = side == Side::Upper ? Mat2::upper(x) : Mat2::lower(x);
        if (evaluate(T, elementary_witness(T, x, side)) == expected) ++ok;
      }
    }
    o.require(total == 100 && ok == total, std::to_string(ok) + "/" + std::to_string(total) + " witnesses verified");
  });

  all &= report(6, "invariant battery: ranks, index multiplicativity, sum e f = n, det = 1", 60.0, [](Outcome& o) {
    Sampler rng(99);
    std::vector<FieldPtr> fields{rational_field(), create_field({1, 0, 1}), create_field({-2, 0, 1}),
                                 create_field({-1, -1, 1}), create_field({5, 0, 1}), create_field({-3, 0, 1})};
    for (const auto& K : fields)
      for (int t = 0; t < 6; ++t) {
        std::vector<PrimeIdeal> ps;
        for (long p : {2, 3, 5, 7, 11, 13})
          for (const auto& f : factor_rational_prime(K, p))
            if (rng.range(0, 2) == 0) ps.push_back(f.prime);
        auto S = PrimeSet::make(K, ps);
        if (S.card() < 2) continue;
        o.require(s_unit_basis(S).rank() + 1 == S.card(), K->describe() + ": rank differs from card(S) - 1");
      }
    for (int t = 0; t < 50; ++t) {
      auto random_sublattice = [&](const Lattice& L) {
        std::vector<RatVec> gens;
        auto basis = L.basis();
        for (;;) {
          IntMatrix c = rng.int_matrix(3, 3, 4);
          RatMatrix cr(3, RatVec(3));
          for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) cr[i][j] = c[i][j];
          if (determinant(cr) == 0) continue;
          for (size_t i = 0; i < 3; ++i) {
            RatVec v(3, 0);
            for (size_t j = 0; j < 3; ++j)
              for (size_t k = 0; k < 3; ++k) v[k] += cr[i][j] * basis[j][k];
            gens.push_back(v);
          }
          return Lattice::from_generators(gens, 3);
        }
      };
      std::vector<RatVec> g;
      for (int i = 0; i < 3; ++i) g.push_back({rng.small_rat(9, 4), rng.small_rat(9, 4), rng.small_rat(9, 4)});
      Lattice L1 = Lattice::from_generators(g, 3);
      if (L1.rank() < 3) continue;
      Lattice L2 = random_sublattice(L1), L3 = random_sublattice(L2);
      auto a = lattice_index(L1, L2), b = lattice_index(L2, L3), c = lattice_index(L1, L3);
      o.require(a && b && c && *a * *b == *c, "index multiplicativity fails");
    }
    for (const auto& K : {create_field({1, 0, 1}), create_field({-2, 0, 1}), create_field({-1, -1, 1})})
      for (auto p : primes_up_to(49)) {
        long sum = 0;
        for (const auto& f : factor_rational_prime(K, p)) sum += f.prime.e * f.prime.f;
        o.require(sum == 2, K->describe() + ": sum e f != 2 at p = " + std::to_string(p));
      }
    for (const auto& inst : desk_instances())
      for (long h : {1, 2, 3}) {
        auto T = build_generators(inst.S, h);
        for (const auto* m : {&T.gamma, &T.psi1, &T.psi2}) o.require(m->is_sl2(), inst.name + ": det != 1");
      }
  });

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
