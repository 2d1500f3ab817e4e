#include "sgen2/verification.hpp"

#include <random>

#include "sgen2/error.hpp"
#include "sgen2/linalg.hpp"

namespace sgen2 {

namespace {

Lattice times(const Lattice& L, const FieldElement& x) {
  std::vector<RatVec> gens;
  for (const auto& b : L.basis()) gens.push_back((x * x.K().element(b)).coords());
  return Lattice::from_generators(gens, x.K().degree());
}

size_t monomial_bound(size_t degree, int k) { return degree * static_cast<size_t>(k + 2); }

}  // namespace

// ---------------------------------------------------------------- identities

bool IdentityReport::passed() const {
  for (const auto& c : checks)
    if (c.failures != 0) return false;
  return true;
}

IdentityReport identity_suite(const GeneratorTriple& T, const IdentityRanges& ranges,
                              const std::vector<FieldElement>& ideal_samples, const std::vector<long>& ladder_powers) {
  const auto& K = T.S.field;
  FieldElement hK = K->from_int(T.h);
  FieldElement a2 = T.alpha * T.alpha;
  IdentityReport rep;
  auto run = [&](const std::string& name, auto&& body) {
    IdentityCheck c{name, 0, 0, {}};
    body([&](bool ok, const std::string& where) {
      ++c.instances;
      if (!ok) {
        if (c.failures == 0) c.first_failure = where;
        ++c.failures;
      }
    });
    rep.checks.push_back(std::move(c));
  };

  run("determinant one", [&](auto&& rec) {
    rec(T.gamma.is_sl2(), "gamma");
    rec(T.psi1.is_sl2(), "psi1");
    rec(T.psi2.is_sl2(), "psi2");
  });

  FieldElement upper_unit = T.cm ? hK * T.cm->sqrt_minus_d : hK;
  run("gamma^-r psi1^s gamma^r = E21(s alpha^2r h)", [&](auto&& rec) {
    for (long r = ranges.r_lo; r <= ranges.r_hi; ++r) {
      Mat2 g = T.gamma.pow(r), gi = T.gamma.pow(-r);
      FieldElement ar = a2.pow(r);
      for (long s = ranges.s_lo; s <= ranges.s_hi; ++s) {
        Mat2 lhs = gi * T.psi1.pow(s) * g;
        rec(lhs == Mat2::lower(Rat(s) * ar * hK), "r=" + std::to_string(r) + " s=" + std::to_string(s));
      }
    }
  });
  run(T.cm ? "gamma^r psi2^s gamma^-r = E12(s alpha^2r h sqrt(-d))" : "gamma^r psi2^s gamma^-r = E12(s alpha^2r h)",
      [&](auto&& rec) {
        for (long r = ranges.r_lo; r <= ranges.r_hi; ++r) {
          Mat2 g = T.gamma.pow(r), gi = T.gamma.pow(-r);
          FieldElement ar = a2.pow(r);
          for (long s = ranges.s_lo; s <= ranges.s_hi; ++s) {
            Mat2 lhs = g * T.psi2.pow(s) * gi;
            rec(lhs == Mat2::upper(Rat(s) * ar * upper_unit), "r=" + std::to_string(r) + " s=" + std::to_string(s));
          }
        }
      });
  if (!T.cm) return rep;

  const FieldElement& sq = T.cm->sqrt_minus_d;
  const FieldElement& d = T.cm->d;
  FieldElement h2d = hK * hK * d;
  Mat2 u = Mat2::lower((hK * sq).inverse());
  Mat2 v = Mat2::upper(hK.inverse());
  Mat2 phi = Mat2::diag(K->one(), sq.inverse());
  Mat2 vphi = v * phi;

  run("psi2 E21(x) psi2^-1 = u E12(h^2 d x) u^-1", [&](auto&& rec) {
    for (const auto& x : ideal_samples)
      rec(conjugate(T.psi2, Mat2::lower(x)) == conjugate(u, Mat2::upper(h2d * x)), "x=" + x.to_string());
  });
  run("u E21(y) u^-1 = E21(y)", [&](auto&& rec) {
    for (const auto& x : ideal_samples) {
      FieldElement y = h2d * x;
      rec(conjugate(u, Mat2::lower(y)) == Mat2::lower(y), "y=" + y.to_string());
    }
  });
  run("psi1 E12(y sqrt(-d)) psi1^-1 = (v phi) E21(h^2 y d) (v phi)^-1", [&](auto&& rec) {
    for (const auto& y : ideal_samples)
      rec(conjugate(T.psi1, Mat2::upper(y * sq)) == conjugate(vphi, Mat2::lower(h2d * y)), "y=" + y.to_string());
  });
  run("u gamma^-N u^-1 gamma^N = E21((alpha^2N - 1) sqrt(-d) / (h d))", [&](auto&& rec) {
    for (long N : ladder_powers) {
      FieldElement e = (a2.pow(N) - K->one()) * sq / (hK * d);
      rec(conjugate(u, T.gamma.pow(-N)) * T.gamma.pow(N) == Mat2::lower(e), "N=" + std::to_string(N));
    }
  });
  run("(v phi) gamma^N (v phi)^-1 gamma^-N = E12((1 - alpha^2N) / h)", [&](auto&& rec) {
    for (long N : ladder_powers) {
      FieldElement e = (K->one() - a2.pow(N)) / hK;
      rec(conjugate(vphi, T.gamma.pow(N)) * T.gamma.pow(-N) == Mat2::upper(e), "N=" + std::to_string(N));
    }
  });
  return rep;
}

// ---------------------------------------------------------------- ladder

bool IdealLadder::passed() const {
  if (!a_in_hZ) return false;
  if (has_case2 && (!c_in_a || !q_contained || q_scale == 0)) return false;
  return true;
}

IdealLadder ideal_ladder(const GeneratorTriple& T, long N, int max_level) {
  const auto& K = T.S.field;
  const Filtration& R = T.ring;
  FieldElement hK = K->from_int(T.h);
  FieldElement a2 = T.alpha * T.alpha;
  IdealLadder L;

  auto hz = [&](int k, size_t D) { return monomial_lattice(a2, {hK}, D).intersect(R.level(k)); };
  auto sm = stabilized_index([&](int k) { return R.level(k); }, hz, R.degree, max_level);
  L.m = sm.index;
  L.a_level = sm.level;
  Rat mr(L.m);
  L.a_in_hZ = hz(sm.level, monomial_bound(R.degree, sm.level)).contains(R.level(sm.level).scaled(mr));
  if (!T.cm) return L;

  L.has_case2 = true;
  L.N = N;
  L.b_factor = hK * hK * T.cm->d;
  Lattice a_k = R.level(sm.level).scaled(mr);
  L.a_over_b = *lattice_index(a_k, times(a_k, L.b_factor));

  FieldElement shift = a2.pow(N) - K->one();
  auto c_at = [&](int k, size_t D) { return monomial_lattice(a2, {shift}, D).intersect(R.level(k).scaled(mr)); };
  auto sc = stabilized_index([&](int k) { return R.level(k); }, c_at, R.degree, max_level);
  L.c_index = sc.index;
  L.c_level = sc.level;
  L.c_in_a = R.level(sc.level).scaled(mr).contains(c_at(sc.level, monomial_bound(R.degree, sc.level)));

  const FieldElement& s = T.cm->sqrt_minus_d;
  auto q_at = [&](int k, size_t D) {
    Lattice c = c_at(k, D);
    return c + times(c, s);
  };
  auto sq = stabilized_index([&](int k) { return T.ambient.level(k); }, q_at, R.degree, max_level);
  L.q_scale = sq.index;
  L.q_level = sq.level;
  L.q_contained = q_at(sq.level, monomial_bound(R.degree, sq.level))
                      .contains(T.ambient.level(sq.level).scaled(Rat(L.q_scale)));
  return L;
}

std::vector<FieldElement> sample_ideal(const GeneratorTriple& T, const Int& m, size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-3, 3), lvl(0, 2);
  std::vector<FieldElement> out;
  const auto& R = T.ring;
  while (out.size() < count) {
    FieldElement x = R.clearing.K().zero();
    for (const auto& w : R.order_basis) x = x + Rat(coef(rng)) * w;
    x = Rat(m) * x * R.clearing.pow(-lvl(rng));
    if (!x.is_zero()) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------- witnesses

WitnessWord elementary_witness(const GeneratorTriple& T, const FieldElement& target, Side side, size_t max_power) {
  const auto& K = T.S.field;
  FieldElement unit = K->from_int(T.h);
  if (side == Side::Upper && T.cm) unit = unit * T.cm->sqrt_minus_d;
  WitnessWord w;
  if (target.is_zero()) return w;
  FieldElement y = target / unit;
  FieldElement a2 = T.alpha * T.alpha;
  std::vector<RatVec> rows;
  FieldElement p = K->one();
  for (size_t D = 0; D <= max_power; ++D, p = p * a2) {
    rows.push_back(p.coords());
    Int den = denominator_lcm(y.coords());
    for (const auto& r : rows) den = lcm(den, denominator_lcm(r));
    IntMatrix M;
    for (const auto& r : rows) {
      IntVec v;
      for (const auto& x : r) v.push_back(Rat(x * den).get_num());
      M.push_back(std::move(v));
    }
    IntVec target_int;
    for (const auto& x : y.coords()) target_int.push_back(Rat(x * den).get_num());
    auto ht = hnf_with_transform(M);
    IntMatrix ech(ht.h.begin(), ht.h.begin() + static_cast<long>(ht.rank));
    auto x = echelon_coordinates(ech, target_int);
    if (!x) continue;
    IntVec s(rows.size(), 0);
    for (size_t i = 0; i < ht.rank; ++i)
      for (size_t j = 0; j < rows.size(); ++j) s[j] += (*x)[i] * ht.u[i][j];
    // The monomials are dependent over Z; shorten s by the relation lattice
    // (rows of u past the rank) so the word stays small. Any s is correct, so
    // a bounded number of passes suffices.
    bool improved = true;
    for (int pass = 0; improved && pass < 32; ++pass) {
      improved = false;
      for (size_t i = ht.rank; i < ht.u.size(); ++i) {
        const IntVec& k = ht.u[i];
        Int sk = 0, kk = 0;
        for (size_t j = 0; j < s.size(); ++j) {
          sk += s[j] * k[j];
          kk += k[j] * k[j];
        }
        Int t = floor_div(2 * sk + kk, 2 * kk);
        if (t == 0 || t * t * kk >= 2 * t * sk) continue;  // no strict decrease
        for (size_t j = 0; j < s.size(); ++j) s[j] -= t * k[j];
        improved = true;
      }
    }
    for (size_t j = 0; j < s.size(); ++j) {
      if (s[j] == 0) continue;
      long r = static_cast<long>(j);
      w.terms.push_back({r, s[j]});
      if (side == Side::Upper) {
        if (r != 0) w.letters.push_back({Letter::Gamma, Int(r)});
        w.letters.push_back({Letter::Psi2, s[j]});
        if (r != 0) w.letters.push_back({Letter::Gamma, Int(-r)});
      } else {
        if (r != 0) w.letters.push_back({Letter::Gamma, Int(-r)});
        w.letters.push_back({Letter::Psi1, s[j]});
        if (r != 0) w.letters.push_back({Letter::Gamma, Int(r)});
      }
    }
    return w;
  }
  throw Error(Errc::NotInLattice, "target is not in the span of h alpha^2j for j <= " + std::to_string(max_power));
}

Mat2 evaluate(const GeneratorTriple& T, const WitnessWord& w) {
  Mat2 acc = Mat2::identity(T.S.field);
  for (const auto& [g, e] : w.letters) {
    const Mat2& m = g == Letter::Gamma ? T.gamma : g == Letter::Psi1 ? T.psi1 : T.psi2;
    acc = acc * m.pow(e);
  }
  return acc;
}

// ---------------------------------------------------------------- mod P

fp::Poly reduce_mod(const GeneratorTriple& T, const FieldElement& x, const PrimeIdeal& P) {
  if (T.S.contains(P)) throw Error(Errc::PrimeInS, "prime lies in S");
  const auto& K = T.S.field;
  const FieldElement& B = T.ambient.clearing;
  FieldElement y = x;
  long k = 0;
  while (!K->is_integral(y)) {
    if (++k > 256) throw Error(Errc::NotContained, "element is not an S-integer");
    y = y * B;
  }
  auto ps = static_cast<fp::u64>(P.p.get_ui());
  fp::Poly r = fp::rem(residue(y, P), P.modulus, ps);
  if (k == 0) return r;
  fp::Poly rb = fp::rem(residue(B, P), P.modulus, ps);
  Int q = P.residue_size();
  fp::Poly inv = fp::powmod(rb, (q - 2) * k, P.modulus, ps);
  return fp::rem(fp::mul(r, inv, ps), P.modulus, ps);
}

namespace {

struct ModPJob {
  modp::FiniteField F;
  std::vector<modp::Mat> gens;
};

ModPJob prepare(const GeneratorTriple& T, const PrimeIdeal& P, long q_bound) {
  if (T.S.contains(P)) throw Error(Errc::PrimeInS, "prime lies in S");
  if (P.residue_size() > q_bound)
    throw Error(Errc::ResidueFieldTooLarge, "residue field of size " + to_string(P.residue_size()) + " exceeds " +
                                                std::to_string(q_bound));
  modp::FiniteField F(P.p.get_ui(), P.modulus);
  std::vector<modp::Mat> gens;
  for (const auto* g : {&T.gamma, &T.psi1, &T.psi2}) {
    modp::Mat m;
    const FieldElement* e[4] = {&g->a, &g->b, &g->c, &g->d};
    for (size_t i = 0; i < 4; ++i) m[i] = F.from_poly(reduce_mod(T, *e[i], P));
    gens.push_back(m);
  }
  return {std::move(F), std::move(gens)};
}

ModPReport finish(const PrimeIdeal& P, const modp::FiniteField& F, const modp::GroupOrder& g) {
  ModPReport r;
  r.P = P;
  r.q = P.residue_size();
  r.expected = F.q() * (F.q() * F.q() - 1);
  r.reached = g.order;
  r.pass = r.reached == r.expected;
  r.radius = g.radius;
  r.states = g.states;
  return r;
}

}  // namespace

ModPReport modp_surjectivity(const GeneratorTriple& T, const PrimeIdeal& P, long q_bound) {
  auto job = prepare(T, P, q_bound);
  return finish(P, job.F, modp::orbit_stabilizer_order(job.F, job.gens));
}

std::vector<ModPReport> modp_batch(const GeneratorTriple& T, const std::vector<PrimeIdeal>& primes, bool parallel,
                                   long q_bound) {
  std::vector<ModPJob> jobs;
  jobs.reserve(primes.size());
  for (const auto& P : primes) jobs.push_back(prepare(T, P, q_bound));
  std::vector<modp::GroupOrder> orders(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < n; ++i) orders[static_cast<size_t>(i)] = modp::orbit_stabilizer_order(jobs[i].F, jobs[i].gens);
  std::vector<ModPReport> out;
  for (size_t i = 0; i < jobs.size(); ++i) out.push_back(finish(primes[i], jobs[i].F, orders[i]));
  return out;
}

std::vector<PrimeIdeal> admissible_primes(const GeneratorTriple& T, size_t count, long q_bound) {
  std::vector<PrimeIdeal> out;
  for (auto p : primes_up_to(q_bound)) {
    std::vector<PrimeFactor> fac;
    try {
      fac = factor_rational_prime(T.S.field, Int(static_cast<long>(p)));
    } catch (const Error& e) {
      if (e.code() == Errc::IndexDivisor) continue;
      throw;
    }
    for (const auto& f : fac) {
      if (T.S.contains(f.prime) || f.prime.residue_size() > q_bound) continue;
      out.push_back(f.prime);
      if (out.size() == count) return out;
    }
  }
  return out;
}

}  // namespace sgen2
