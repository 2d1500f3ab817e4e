#include "sgen2/s_units.hpp"

#include <algorithm>

#include "sgen2/error.hpp"
#include "sgen2/linalg.hpp"

namespace sgen2 {

namespace {

RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

size_t rank_of(const std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  return sgen2::rank(RatMatrix(rows.begin(), rows.end()));
}

// Odometer over exponent vectors in lexicographic order: the first `free`
// coordinates range over [-m, m], the rest over [1, m]; only vectors of
// max-norm exactly m are visited.
template <class Visit>
bool for_each_vector(size_t free, size_t positive, long m, Visit&& visit) {
  size_t len = free + positive;
  IntVec v(len);
  for (size_t i = 0; i < len; ++i) v[i] = i < free ? -m : 1;
  while (true) {
    bool at_norm = false;
    for (const auto& x : v)
      if (abs(x) == m) at_norm = true;
    if (at_norm && visit(v)) return true;
    size_t i = len;
    while (i > 0) {
      --i;
      if (v[i] < m) {
        ++v[i];
        for (size_t j = i + 1; j < len; ++j) v[j] = j < free ? -m : 1;
        break;
      }
      if (i == 0) return false;
    }
    if (len == 0) return false;
  }
}

}  // namespace

// ---------------------------------------------------------------- prime sets

PrimeSet PrimeSet::make(const FieldPtr& K, std::vector<PrimeIdeal> finite) {
  for (size_t i = 0; i < finite.size(); ++i) {
    if (finite[i].ideal.field() != K) throw Error(Errc::ConfigInvalid, "prime ideal belongs to another field");
    for (size_t j = 0; j < i; ++j)
      if (finite[i] == finite[j]) throw Error(Errc::ConfigInvalid, "prime listed twice in S");
  }
  return PrimeSet{K, std::move(finite)};
}

std::optional<size_t> PrimeSet::find(const PrimeIdeal& P) const {
  for (size_t i = 0; i < finite.size(); ++i)
    if (finite[i] == P) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------- S-unit basis

FieldElement SUnitBasis::clearing_element() const {
  FieldElement b = field->one();
  for (const auto& g : s_gens) b = b * g;
  return b;
}

FieldElement SUnitBasis::element(long torsion_exp, const IntVec& fund_exps, const IntVec& s_exps) const {
  FieldElement x = torsion.generator.pow(torsion_exp);
  for (size_t j = 0; j < fund_units.size(); ++j)
    if (fund_exps[j] != 0) x = x * fund_units[j].pow(fund_exps[j].get_si());
  for (size_t i = 0; i < s_gens.size(); ++i)
    if (s_exps[i] != 0) x = x * s_gens[i].pow(s_exps[i].get_si());
  return x;
}

SUnitBasis s_unit_basis(const PrimeSet& S) {
  const auto& K = S.field;
  if (S.card() < 2)
    throw Error(Errc::CardinalityTooSmall, "card(S) = " + std::to_string(S.card()) + " < 2");
  SUnitBasis B;
  B.field = K;
  B.torsion = torsion_subgroup(K);
  B.fund_units = fundamental_units(K);
  for (const auto& P : S.finite) {
    B.witnesses.push_back(class_order(P.ideal));
    B.s_gens.push_back(B.witnesses.back().generator);
  }
  auto row_for = [&](const FieldElement& x) {
    IntVec row;
    for (const auto& P : S.finite) row.push_back(valuation(x, P));
    return row;
  };
  for (const auto& u : B.fund_units) {
    IntVec row = row_for(u);
    if (std::any_of(row.begin(), row.end(), [](const Int& v) { return v != 0; }))
      throw Error(Errc::DatasheetInvalid, "fundamental unit has nonzero valuation");
    B.valuation_matrix.push_back(std::move(row));
  }
  for (size_t i = 0; i < B.s_gens.size(); ++i) {
    IntVec row = row_for(B.s_gens[i]);
    for (size_t j = 0; j < row.size(); ++j) {
      Int expect = i == j ? Int(B.witnesses[i].order) : Int(0);
      if (row[j] != expect) throw Error(Errc::DatasheetInvalid, "class-order generator has unexpected valuations");
    }
    B.valuation_matrix.push_back(std::move(row));
  }
  return B;
}

RatVec s_unit_coordinates(const SUnitBasis& B, const PrimeSet& S, const FieldElement& x) {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "zero is not an S-unit");
  size_t r = B.s_gens.size();
  RatVec c(r);
  Int t = 1;
  for (size_t i = 0; i < r; ++i) {
    c[i] = Rat(valuation(x, S.finite[i]), B.witnesses[i].order);
    c[i].canonicalize();
    t = lcm(t, c[i].get_den());
  }
  long tl = t.get_si();
  FieldElement y = x.pow(tl);
  for (size_t i = 0; i < r; ++i) {
    Rat e = c[i] * tl;
    y = y * B.s_gens[i].pow(-e.get_num().get_si());
  }
  if (!is_unit(y)) throw Error(Errc::NotContained, "element is not an S-unit");
  UnitLog lg = unit_log(y, B.torsion, B.fund_units);
  RatVec out;
  for (const auto& e : lg.exponents) {
    Rat v(e, t);
    v.canonicalize();
    out.push_back(v);
  }
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

// ---------------------------------------------------------------- subfields

std::string SubfieldDescriptor::label() const {
  if (field->degree() == 1) return "Q";
  return "Q[x]/(" + field->poly().to_string() + ")";
}

SubfieldDescriptor describe_subfield(const PrimeSet& S, const FieldPtr& F, const FieldElement& embedding) {
  const auto& K = S.field;
  if (F->degree() >= K->degree() || K->degree() % F->degree() != 0)
    throw Error(Errc::NotASubfield, "degree of F does not properly divide [K:Q]");
  if (F->degree() > 1 && !(embedding.minimal_poly() == F->poly()))
    throw Error(Errc::NotASubfield, "embedding does not satisfy the defining polynomial of F");
  SubfieldDescriptor D{F, embedding, {}};
  for (const auto& P : S.finite) {
    auto below = factor_rational_prime(F, P.p);
    const PrimeIdeal* q = nullptr;
    for (const auto& cand : below)
      if (P.ideal.contains(D.embed(cand.prime.pi))) {
        q = &cand.prime;
        break;
      }
    if (!q) throw Error(Errc::NotASubfield, "no prime of F below a prime of S");
    if (std::any_of(D.contracted.begin(), D.contracted.end(),
                    [&](const ContractedPrime& c) { return c.prime == *q; }))
      continue;
    int e_q = 1;
    for (const auto& cand : below)
      if (cand.prime == *q) e_q = cand.multiplicity;
    ContractedPrime cp{*q, {}, 0, {}};
    FieldElement pi = D.embed(q->pi);
    for (const auto& above : factor_rational_prime(K, P.p)) {
      if (!above.prime.ideal.contains(pi)) continue;
      ++cp.primes_above;
      if (auto idx = S.find(above.prime)) {
        cp.in_S.push_back(*idx);
        cp.ramification.push_back(above.multiplicity / e_q);
      }
    }
    D.contracted.push_back(std::move(cp));
  }
  return D;
}

std::vector<SubfieldDescriptor> proper_subfields(const PrimeSet& S) {
  std::vector<SubfieldDescriptor> out;
  for (const auto& sf : S.field->subfields())
    out.push_back(describe_subfield(S, sf.field, S.field->element(sf.embedding)));
  return out;
}

int rank_of_intersection(const PrimeSet& S, const SubfieldDescriptor& F) {
  int r = F.field->unit_rank();
  for (const auto& c : F.contracted)
    if (c.all_above_in_S()) ++r;
  (void)S;
  return r;
}

// ---------------------------------------------------------------- CM fields

std::optional<CMStructure> is_cm(const FieldPtr& K) {
  size_t n = K->degree();
  if (n == 1 || K->r1() > 0) return std::nullopt;
  const auto& subs = K->subfields();
  if (K->tier() == Tier::Automatic) {
    FieldElement s = K->sqrt_d();
    return CMStructure{0, subs[0].field, K->element(subs[0].embedding), K->from_int(-K->quadratic_d()), s};
  }
  FieldElement theta = K->gen();
  for (size_t i = 0; i < subs.size(); ++i) {
    const auto& F = subs[i].field;
    if (2 * F->degree() != n || F->r2() != 0) continue;
    FieldElement e = K->element(subs[i].embedding);
    // theta^2 = t theta - c with t, c in F.
    size_t m = F->degree();
    RatMatrix rows;
    std::vector<FieldElement> epow{K->one()};
    for (size_t j = 1; j < m; ++j) epow.push_back(epow.back() * e);
    for (const auto& ej : epow) rows.push_back((ej * theta).coords());
    for (const auto& ej : epow) rows.push_back(ej.coords());
    auto sol = solve_left(rows, (theta * theta).coords());
    if (!sol) continue;
    FieldElement t = K->zero(), c = K->zero();
    for (size_t j = 0; j < m; ++j) {
      t = t + (*sol)[j] * epow[j];
      c = c - (*sol)[m + j] * epow[j];
    }
    FieldElement s = Rat(2) * theta - t;
    if (s.is_rational()) continue;
    return CMStructure{i, F, e, -(s * s), s};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- filtration

Filtration Filtration::of(const SUnitBasis& B) {
  Filtration L;
  for (size_t i = 0; i < B.field->degree(); ++i) L.order_basis.push_back(B.field->basis_element(i));
  L.clearing = B.clearing_element();
  L.degree = B.field->degree();
  return L;
}

Lattice Filtration::level(int k) const {
  FieldElement scale = clearing.pow(-k);
  std::vector<RatVec> gens;
  for (const auto& w : order_basis) gens.push_back((w * scale).coords());
  return Lattice::from_generators(gens, clearing.K().degree());
}

Lattice monomial_lattice(const FieldElement& a, const std::vector<FieldElement>& mults, size_t max_power) {
  std::vector<RatVec> gens;
  FieldElement p = a.K().one();
  for (size_t j = 0; j <= max_power; ++j) {
    for (const auto& m : mults) gens.push_back((m * p).coords());
    p = p * a;
  }
  return Lattice::from_generators(gens, a.K().degree());
}

StableIndex stabilized_index(const std::function<Lattice(int)>& outer,
                             const std::function<Lattice(int, size_t)>& inner, size_t degree, int max_level) {
  StableIndex out;
  for (int k = 0; k <= max_level; ++k) {
    Lattice o = outer(k);
    out.history.push_back({k, lattice_index(o, inner(k, degree * static_cast<size_t>(k + 2)))});
    if (k < 2) continue;
    const auto& a = out.history[static_cast<size_t>(k - 2)].index;
    const auto& b = out.history[static_cast<size_t>(k - 1)].index;
    const auto& c = out.history[static_cast<size_t>(k)].index;
    if (!a || !b || !c || *a != *b || *b != *c) continue;
    int j = k - 2;
    auto enlarged = lattice_index(outer(j), inner(j, degree * static_cast<size_t>(j + 3)));
    if (enlarged && *enlarged == *a) {
      out.index = *a;
      out.level = j;
      return out;
    }
  }
  throw Error(Errc::NotStabilized, "index did not stabilize within " + std::to_string(max_level) + " levels");
}

StableIndex zalpha_index(const Filtration& L, const FieldElement& alpha, long n,
                         const std::vector<FieldElement>& mults, int max_level) {
  if (n < 1) throw Error(Errc::ConfigInvalid, "power must be positive");
  FieldElement a = alpha.pow(n);
  std::vector<FieldElement> ms = mults.empty() ? std::vector<FieldElement>{alpha.K().one()} : mults;
  return stabilized_index([&](int k) { return L.level(k); },
                          [&](int k, size_t D) { return monomial_lattice(a, ms, D).intersect(L.level(k)); },
                          L.degree, max_level);
}

// ---------------------------------------------------------------- alpha

AlphaCertificate choose_alpha(const PrimeSet& S, const SUnitBasis& B, const std::vector<SubfieldDescriptor>& subfields,
                              long coefficient_bound, const std::vector<long>& index_powers) {
  const auto& K = S.field;
  size_t n = K->degree();
  size_t rank = B.rank();
  size_t nf = B.fund_units.size(), ns = B.s_gens.size();

  // Generators of each W_j in exponent coordinates.
  std::vector<std::vector<RatVec>> w_gens;
  std::vector<size_t> w_rank;
  for (const auto& sub : subfields) {
    int ri = rank_of_intersection(S, sub);
    if (static_cast<size_t>(ri) >= rank)
      throw Error(Errc::HypothesisFails, "rank of the S-units from " + sub.label() + " is " + std::to_string(ri) +
                                             ", equal to rank(O_S^*) = " + std::to_string(rank));
    std::vector<RatVec> gens;
    for (const auto& u : fundamental_units(sub.field)) gens.push_back(s_unit_coordinates(B, S, sub.embed(u)));
    for (const auto& c : sub.contracted) {
      if (!c.all_above_in_S()) continue;
      auto w = class_order(c.prime.ideal);
      gens.push_back(s_unit_coordinates(B, S, sub.embed(w.generator)));
    }
    if (rank_of(gens) != static_cast<size_t>(ri))
      throw Error(Errc::DatasheetInvalid, "S-units of " + sub.label() + " do not have the expected rank");
    w_rank.push_back(static_cast<size_t>(ri));
    w_gens.push_back(std::move(gens));
  }

  AlphaCertificate cert;
  for (long m = 1; m <= coefficient_bound; ++m) {
    bool found = for_each_vector(nf, ns, m, [&](const IntVec& v) {
      IntVec f(v.begin(), v.begin() + static_cast<long>(nf));
      IntVec c(v.begin() + static_cast<long>(nf), v.end());
      RatVec coords = to_rat(f);
      for (const auto& ci : c) coords.push_back(Rat(-ci));
      std::vector<AvoidanceCheck> checks;
      for (size_t i = 0; i < ns; ++i)
        checks.push_back({"V[S - P" + std::to_string(i) + "]",
                          "v_P(alpha) = " + to_string(Int(-c[i] * B.witnesses[i].order)) + " != 0", true});
      for (size_t j = 0; j < subfields.size(); ++j) {
        auto rows = w_gens[j];
        rows.push_back(coords);
        size_t r = rank_of(rows);
        bool ok = r > w_rank[j];
        if (!ok) return false;
        checks.push_back({"W[" + subfields[j].label() + "]",
                          "rank " + std::to_string(w_rank[j]) + " -> " + std::to_string(r), true});
      }
      IntVec neg_c(ns);
      for (size_t i = 0; i < ns; ++i) neg_c[i] = -c[i];
      FieldElement base = B.element(0, f, neg_c);
      for (long t = 0; t < B.torsion.order; ++t) {
        FieldElement alpha = B.torsion.generator.pow(t) * base;
        QPoly mp = alpha.minimal_poly();
        if (static_cast<size_t>(mp.degree()) != n) continue;
        cert.alpha = alpha;
        cert.torsion_exponent = t;
        cert.fund_exponents = f;
        cert.s_exponents = c;
        cert.search_norm = m;
        cert.minimal_poly = mp;
        cert.generates_K = true;
        cert.avoidance = checks;
        return true;
      }
      return false;
    });
    if (found) break;
  }
  if (!cert.generates_K)
    throw Error(Errc::SearchExhausted, "no admissible alpha with exponents bounded by " + std::to_string(coefficient_bound));

  for (const auto& P : S.finite) {
    int v = valuation(cert.alpha, P);
    if (v >= 0) throw Error(Errc::DatasheetInvalid, "alpha has non-negative valuation at a prime of S");
    cert.valuations.push_back(v);
  }

  // alpha * prod beta_i^{c_i} = zeta^t prod eps^f is the absorbed unit.
  cert.m = 1;
  cert.b = cert.s_exponents;
  cert.absorbed_unit = B.element(cert.torsion_exponent, cert.fund_exponents, IntVec(ns, 0));
  if (!(cert.alpha * B.element(0, IntVec(nf, 0), cert.b) == cert.absorbed_unit) || !is_unit(cert.absorbed_unit))
    throw Error(Errc::DatasheetInvalid, "alpha^m = u prod beta^-b does not hold");
  FieldElement u_inv = cert.absorbed_unit.inverse();
  FieldElement full = B.element(0, IntVec(nf, 0), cert.b);
  for (size_t i = 0; i < ns; ++i) {
    FieldElement cof = u_inv * full / B.s_gens[i];
    if (!K->is_integral(cof) || !(cof * cert.alpha.pow(cert.m) == B.s_gens[i].inverse()))
      throw Error(Errc::DatasheetInvalid, "beta^-1 is not an O_K-multiple of alpha^m");
    cert.inverse_cofactors.push_back(cof);
  }

  if (!index_powers.empty()) {
    Filtration L = Filtration::of(B);
    for (long p : index_powers) {
      auto r = zalpha_index(L, cert.alpha, p);
      cert.index_table.push_back({p, r.index, r.level});
    }
  }
  return cert;
}

}  // namespace sgen2
