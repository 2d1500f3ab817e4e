#include "sgen2/ideal.hpp"

#include "sgen2/error.hpp"
#include "sgen2/linalg.hpp"
#include "sgen2/units.hpp"

namespace sgen2 {

namespace {

IntVec unit_vector(size_t n, size_t i) {
  IntVec e(n, 0);
  e[i] = 1;
  return e;
}

// A nonzero t (entries in [0, p)) with t * M == 0 mod p, if one exists.
std::optional<std::vector<fp::u64>> left_kernel_vector_mod(const IntMatrix& M, fp::u64 p) {
  size_t n = M.size();
  size_t m = n ? M[0].size() : 0;
  // Rows [M | I] reduced mod p; a row whose M part vanishes gives a kernel vector.
  std::vector<std::vector<fp::u64>> rows(n, std::vector<fp::u64>(m + n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) rows[i][j] = fp::reduce(M[i][j], p);
    rows[i][m + i] = 1;
  }
  size_t r = 0;
  for (size_t c = 0; c < m && r < n; ++c) {
    size_t piv = r;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(rows[r], rows[piv]);
    fp::u64 inv = fp::inv(rows[r][c], p);
    for (auto& x : rows[r]) x = fp::mul(x, inv, p);
    for (size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      fp::u64 f = rows[i][c];
      for (size_t j = 0; j < m + n; ++j) rows[i][j] = fp::sub(rows[i][j], fp::mul(f, rows[r][j], p), p);
    }
    ++r;
  }
  if (r == n) return std::nullopt;
  return std::vector<fp::u64>(rows[r].begin() + static_cast<long>(m), rows[r].end());
}

bool all_divisible(const IntVec& v, const Int& p) {
  for (const auto& x : v)
    if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) return false;
  return true;
}

FieldElement kummer_generator(const FieldPtr& K, const Int& p) {
  if (K->tier() == Tier::Automatic) return K->basis_element(K->degree() - 1);
  if (mpz_divisible_p(K->index().get_mpz_t(), p.get_mpz_t()))
    throw Error(Errc::IndexDivisor, to_string(p) + " divides the index [O_K : Z[theta]]");
  return K->gen();
}

}  // namespace

// ---------------------------------------------------------------- Ideal

Ideal Ideal::from_hnf(const FieldPtr& K, const IntMatrix& rows) {
  size_t n = K->degree();
  Ideal I;
  I.K_ = K;
  I.hnf_ = sgen2::hnf(rows);
  if (I.hnf_.size() != n) throw Error(Errc::ZeroElement, "ideal lattice must have full rank");
  for (const auto& b : I.basis())
    for (size_t j = 0; j < n; ++j)
      if (!I.contains(b * K->basis_element(j))) throw Error(Errc::DatasheetInvalid, "lattice is not an ideal of O_K");
  return I;
}

Ideal Ideal::generated_by(const FieldPtr& K, const std::vector<FieldElement>& gens) {
  size_t n = K->degree();
  IntMatrix rows;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      auto c = K->integral_coords(g * K->basis_element(j));
      if (!c) throw Error(Errc::NotContained, "ideal generators must be integral");
      rows.push_back(std::move(*c));
    }
  }
  if (rows.empty()) throw Error(Errc::ZeroElement, "zero ideal");
  Ideal I;
  I.K_ = K;
  I.hnf_ = sgen2::hnf(std::move(rows));
  return I;
}

Ideal Ideal::principal(const FieldElement& x) { return generated_by(x.field(), {x}); }

Ideal Ideal::whole(const FieldPtr& K) { return principal(K->one()); }

Int Ideal::norm() const {
  Int N = 1;
  for (size_t i = 0; i < hnf_.size(); ++i) N *= hnf_[i][i];
  return N;
}

Int Ideal::minimum() const {
  size_t n = K_->degree();
  auto I = Lattice::from_integer_rows(hnf_, n);
  auto Z = Lattice::from_integer_rows({unit_vector(n, 0)}, n);
  return I.intersect(Z).hnf()[0][0];
}

std::vector<FieldElement> Ideal::basis() const {
  std::vector<FieldElement> out;
  for (const auto& row : hnf_) {
    RatVec c(row.begin(), row.end());
    out.push_back(K_->element(K_->from_basis(c)));
  }
  return out;
}

Lattice Ideal::lattice() const {
  std::vector<RatVec> gens;
  for (const auto& b : basis()) gens.push_back(b.coords());
  return Lattice::from_generators(gens, K_->degree());
}

bool Ideal::contains(const FieldElement& x) const {
  auto c = K_->integral_coords(x);
  return c && echelon_coordinates(hnf_, *c).has_value();
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& row : other.hnf_)
    if (!echelon_coordinates(hnf_, row)) return false;
  return true;
}

Ideal operator*(const Ideal& a, const Ideal& b) {
  const auto& K = a.K_;
  IntMatrix rows;
  auto ba = a.basis(), bb = b.basis();
  for (const auto& x : ba)
    for (const auto& y : bb) rows.push_back(*K->integral_coords(x * y));
  Ideal I;
  I.K_ = K;
  I.hnf_ = sgen2::hnf(std::move(rows));
  return I;
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  IntMatrix rows = a.hnf_;
  rows.insert(rows.end(), b.hnf_.begin(), b.hnf_.end());
  Ideal I;
  I.K_ = a.K_;
  I.hnf_ = sgen2::hnf(std::move(rows));
  return I;
}

Ideal Ideal::pow(unsigned long k) const {
  Ideal result = whole(K_);
  Ideal base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- primes

Int integral_denominator(const FieldElement& x) {
  return denominator_lcm(x.K().to_basis(x.coords()));
}

std::vector<PrimeFactor> factor_rational_prime(const FieldPtr& K, const Int& p) {
  if (p < 2 || !is_probable_prime(p)) throw Error(Errc::ConfigInvalid, to_string(p) + " is not prime");
  if (!mpz_fits_ulong_p(p.get_mpz_t())) throw Error(Errc::ResidueFieldTooLarge, "prime too large");
  auto ps = static_cast<fp::u64>(p.get_ui());
  size_t n = K->degree();
  std::vector<PrimeFactor> out;
  if (n == 1) {
    PrimeIdeal P;
    P.ideal = Ideal::principal(K->from_int(p));
    P.p = p;
    P.pi = K->from_int(p);
    P.tau = K->one();
    P.modulus = {0, 1};
    P.basis_residues = {fp::Poly{1}};
    out.push_back({P, 1});
    return out;
  }
  FieldElement gamma = kummer_generator(K, p);
  QPoly h = gamma.minimal_poly();
  IntVec hint;
  for (const auto& c : h.coeffs()) hint.push_back(c.get_num());
  RatMatrix gpow;
  FieldElement acc = K->one();
  for (size_t k = 0; k < n; ++k, acc = acc * gamma) gpow.push_back(acc.coords());
  RatMatrix ginv = *inverse(gpow);

  Int check_n = 0;
  Ideal product = Ideal::whole(K);
  for (const auto& fac : fp::factor(fp::from_ints(hint, ps), ps)) {
    PrimeIdeal P;
    P.p = p;
    P.e = fac.multiplicity;
    P.f = fp::degree(fac.g);
    P.modulus = fac.g;
    FieldElement pi = K->zero();
    FieldElement g = K->one();
    for (size_t k = 0; k < fac.g.size(); ++k, g = g * gamma)
      if (fac.g[k] != 0) pi = pi + Rat(Int(static_cast<unsigned long>(fac.g[k]))) * g;
    if (all_divisible(*K->integral_coords(pi), p)) pi = K->from_int(p);
    P.pi = pi;
    P.ideal = Ideal::generated_by(K, {K->from_int(p), pi});

    auto t = left_kernel_vector_mod(K->int_mult_matrix(pi), ps);
    if (!t) throw Error(Errc::DatasheetInvalid, "no valuation helper for a prime above " + to_string(p));
    RatVec tc(n, 0);
    for (size_t i = 0; i < n; ++i) tc[i] = Rat(Int(static_cast<unsigned long>((*t)[i])));
    P.tau = K->element(K->from_basis(tc));

    for (size_t j = 0; j < n; ++j) {
      RatVec gc = vec_mat(K->integral_basis()[j], ginv);
      fp::Poly r;
      for (const auto& c : gc) r.push_back(fp::reduce(c, ps));
      fp::trim(r);
      P.basis_residues.push_back(fp::rem(r, P.modulus, ps));
    }
    if (P.ideal.norm() != P.residue_size())
      throw Error(Errc::DatasheetInvalid, "prime ideal norm mismatch above " + to_string(p));
    check_n += P.e * P.f;
    product = product * P.ideal.pow(static_cast<unsigned long>(P.e));
    out.push_back({P, P.e});
  }
  if (check_n != static_cast<long>(n) || !(product == Ideal::principal(K->from_int(p))))
    throw Error(Errc::DatasheetInvalid, "factorization of " + to_string(p) + " does not recombine");
  return out;
}

int valuation(const FieldElement& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "valuation of zero");
  const auto& K = x.K();
  if (K.degree() == 1) {
    const Rat& r = x.coords()[0];
    return valuation_int(r.get_num(), P.p) - valuation_int(r.get_den(), P.p);
  }
  Int t = integral_denominator(x);
  int v = t == 1 ? 0 : -P.e * valuation_int(t, P.p);
  FieldElement y = Rat(t) * x;
  Rat inv_p(1, P.p);
  for (;;) {
    FieldElement z = y * P.tau;
    auto c = K.integral_coords(z);
    if (!all_divisible(*c, P.p)) break;
    y = inv_p * z;
    ++v;
  }
  return v;
}

int valuation(const Ideal& I, const PrimeIdeal& P) {
  int v = -1;
  for (const auto& b : I.basis()) {
    int w = valuation(b, P);
    if (v < 0 || w < v) v = w;
  }
  return v;
}

std::vector<PrimeFactor> factor_ideal(const Ideal& I) {
  std::vector<PrimeFactor> out;
  for (const auto& [p, mult] : factor_int(I.norm())) {
    for (auto& fac : factor_rational_prime(I.field(), p)) {
      int v = valuation(I, fac.prime);
      if (v > 0) out.push_back({fac.prime, v});
    }
  }
  return out;
}

fp::Poly residue(const FieldElement& x, const PrimeIdeal& P) {
  auto c = x.K().integral_coords(x);
  if (!c) throw Error(Errc::NotContained, "residue of a non-integral element");
  auto ps = static_cast<fp::u64>(P.p.get_ui());
  fp::Poly acc;
  for (size_t j = 0; j < c->size(); ++j) {
    fp::u64 cj = fp::reduce((*c)[j], ps);
    if (cj == 0) continue;
    fp::Poly term = P.basis_residues[j];
    for (auto& t : term) t = fp::mul(t, cj, ps);
    acc = fp::add(acc, term, ps);
  }
  return acc;
}

// ---------------------------------------------------------------- classes

std::optional<FieldElement> principal_generator(const Ideal& I, Int* bound_used) {
  const auto& K = I.field();
  if (K->degree() == 1) return K->from_int(I.hnf()[0][0]);
  if (K->tier() != Tier::Automatic) throw Error(Errc::DatasheetRequired, "principality test needs a quadratic field");
  Int N = I.norm();
  Int d = K->quadratic_d();
  FieldElement s = K->sqrt_d();
  // Elements (a + b sqrt d)/2 of norm +-N. For real fields some generator lies in
  // the fundamental domain sqrt(N/eps) <= |x| <= sqrt(N eps), which forces
  // d b^2 <= N (Tr(eps^2) + 4).
  Int bmax;
  if (d < 0) {
    bmax = isqrt(4 * N / (-d));
  } else {
    FieldElement eps = real_quadratic_fundamental_unit(K);
    Rat T = (eps * eps).trace();
    bmax = isqrt(N * (T.get_num() + 4) / d);
  }
  if (bound_used) *bound_used = bmax;
  std::vector<int> signs = d < 0 ? std::vector<int>{1} : std::vector<int>{1, -1};
  for (Int babs = 0; babs <= bmax; ++babs) {
    std::optional<FieldElement> best;
    Int best_a, best_b;
    for (const Int& b : {babs, Int(-babs)}) {
      for (int sg : signs) {
        Int a2 = 4 * sg * N + d * b * b;
        if (a2 < 0 || !is_square(a2)) continue;
        Int r = isqrt(a2);
        for (const Int& a : {r, Int(-r)}) {
          FieldElement x = Rat(a, 2) * K->one() + Rat(b, 2) * s;
          if (!I.contains(x)) continue;
          if (!best || a > best_a || (a == best_a && b > best_b)) {
            best = x;
            best_a = a;
            best_b = b;
          }
        }
      }
      if (babs == 0) break;
    }
    if (best) return best;
  }
  return std::nullopt;
}

ClassOrderWitness class_order(const Ideal& I, long bound) {
  const auto& K = I.field();
  ClassOrderWitness w;
  w.ideal = I;
  if (I == Ideal::whole(K)) {
    w.generator = K->one();
    w.method = K->degree() == 1 ? "rational" : "trivial";
    return w;
  }
  if (K->tier() == Tier::Datasheet) {
    for (const auto& co : K->datasheet()->class_orders) {
      Ideal J = Ideal::from_hnf(K, co.hnf);
      if (!(J == I)) continue;
      FieldElement beta = K->element(co.generator);
      if (!(I.pow(static_cast<unsigned long>(co.order)) == Ideal::principal(beta)))
        throw Error(Errc::DatasheetInvalid, "class order entry: ideal power is not generated by the given element");
      w.order = co.order;
      w.generator = beta;
      w.method = "datasheet";
      return w;
    }
    throw Error(Errc::DatasheetRequired, "no class order entry for this ideal");
  }
  if (K->degree() == 1) {
    w.generator = K->from_int(I.hnf()[0][0]);
    w.method = "rational";
    return w;
  }
  Ideal J = I;
  for (long k = 1; k <= bound; ++k) {
    Int used = 0;
    if (auto g = principal_generator(J, &used)) {
      w.order = k;
      w.generator = *g;
      w.method = "norm-search";
      w.search_bound = used;
      return w;
    }
    J = J * I;
  }
  throw Error(Errc::OrderBoundExceeded, "no principal power up to " + std::to_string(bound));
}

}  // namespace sgen2
