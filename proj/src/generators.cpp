#include "sgen2/generators.hpp"

#include "sgen2/error.hpp"

namespace sgen2 {

// ---------------------------------------------------------------- matrices

Mat2 Mat2::identity(const FieldPtr& K) { return {K->one(), K->zero(), K->zero(), K->one()}; }

Mat2 Mat2::diag(const FieldElement& x, const FieldElement& y) {
  const auto& K = x.field();
  return {x, K->zero(), K->zero(), y};
}

Mat2 Mat2::upper(const FieldElement& x) {
  const auto& K = x.field();
  return {K->one(), x, K->zero(), K->one()};
}

Mat2 Mat2::lower(const FieldElement& x) {
  const auto& K = x.field();
  return {K->one(), K->zero(), x, K->one()};
}

FieldElement Mat2::det() const { return a * d - b * c; }

Mat2 Mat2::inverse() const {
  FieldElement D = det();
  if (D.is_zero()) throw Error(Errc::DivisionByZero, "singular matrix");
  FieldElement inv = D.inverse();
  return {d * inv, -b * inv, -c * inv, a * inv};
}

Mat2 Mat2::pow(const Int& e) const {
  Mat2 base = e < 0 ? inverse() : *this;
  Int k = e < 0 ? Int(-e) : e;
  Mat2 acc = identity(a.field());
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

std::string Mat2::to_string() const {
  return "[[" + a.to_string() + ", " + b.to_string() + "], [" + c.to_string() + ", " + d.to_string() + "]]";
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 conjugate(const Mat2& g, const Mat2& x) { return g * x * g.inverse(); }

// ---------------------------------------------------------------- classification

bool split_prime_check(const PrimeSet& S, const SubfieldDescriptor& F) {
  (void)S;
  for (const auto& c : F.contracted)
    if (c.primes_above > 1) return false;
  return true;
}

CaseClassification classify_case(const PrimeSet& S, const std::vector<SubfieldDescriptor>& subfields) {
  if (S.card() < 2) throw Error(Errc::CardinalityTooSmall, "card(S) = " + std::to_string(S.card()) + " < 2");
  int rank = static_cast<int>(S.card()) - 1;
  CaseClassification out;
  for (size_t i = 0; i < subfields.size(); ++i) {
    int r = rank_of_intersection(S, subfields[i]);
    out.rank_table.push_back({subfields[i].label(), r, rank});
    if (r >= rank && !out.witness) {
      out.tag = CaseTag::Case2;
      out.witness = i;
    }
  }
  if (out.tag == CaseTag::Case1) return out;
  const auto& W = subfields[*out.witness];
  auto cm = is_cm(S.field);
  if (!cm || !(cm->F->defining_poly() == W.field->defining_poly()) || !(cm->embedding == W.embedding))
    throw Error(Errc::InconsistentCM, "rank equality at " + W.label() + " but K is not a CM extension of it");
  if (!split_prime_check(S, W))
    throw Error(Errc::InconsistentCM, "a prime of S(F) splits in K although the ranks are equal");
  return out;
}

// ---------------------------------------------------------------- triple

GeneratorTriple build_generators(const PrimeSet& S, long h, long coefficient_bound) {
  if (h < 1) throw Error(Errc::ConfigInvalid, "h must be a positive integer");
  const auto& K = S.field;
  auto subfields = proper_subfields(S);
  GeneratorTriple T;
  T.S = S;
  T.h = h;
  T.classification = classify_case(S, subfields);
  FieldElement hK = K->from_int(h);

  if (T.classification.tag == CaseTag::Case1) {
    T.alpha_S = S;
    T.alpha_basis = s_unit_basis(S);
    T.certificate = choose_alpha(S, T.alpha_basis, subfields, coefficient_bound);
    T.base_alpha = T.certificate.alpha;
    T.ring = T.ambient = Filtration::of(T.alpha_basis);
    T.alpha = T.base_alpha.pow(h);
    T.psi2 = Mat2::upper(hK);
  } else {
    const auto& W = subfields[*T.classification.witness];
    auto cm = is_cm(K);
    T.cm = CMData{W, cm->d, cm->sqrt_minus_d};
    const auto& F = W.field;
    std::vector<PrimeIdeal> below;
    for (const auto& c : W.contracted) below.push_back(c.prime);
    T.alpha_S = PrimeSet::make(F, below);
    T.alpha_basis = s_unit_basis(T.alpha_S);
    T.certificate = choose_alpha(T.alpha_S, T.alpha_basis, proper_subfields(T.alpha_S), coefficient_bound);
    T.base_alpha = W.embed(T.certificate.alpha);

    // O_S = O_K[B^{-1}] with B the clearing element of F: the K-primes
    // dividing B are exactly the finite primes of S.
    FieldElement B = W.embed(T.alpha_basis.clearing_element());
    for (const auto& P : S.finite)
      if (valuation(B, P) <= 0) throw Error(Errc::InconsistentCM, "a prime of S does not divide the S(F) generators");
    for (const auto& f : factor_ideal(Ideal::principal(B)))
      if (!S.contains(f.prime)) throw Error(Errc::InconsistentCM, "S(F) generators are not S-units of K");

    T.ring.clearing = T.ambient.clearing = B;
    for (size_t i = 0; i < F->degree(); ++i) T.ring.order_basis.push_back(W.embed(F->basis_element(i)));
    T.ring.degree = F->degree();
    for (size_t i = 0; i < K->degree(); ++i) T.ambient.order_basis.push_back(K->basis_element(i));
    T.ambient.degree = K->degree();
    T.alpha = T.base_alpha.pow(h);
    T.psi2 = Mat2::upper(hK * T.cm->sqrt_minus_d);
  }
  T.gamma = Mat2::diag(T.alpha, T.alpha.inverse());
  T.psi1 = Mat2::lower(hK);
  for (const auto* g : {&T.gamma, &T.psi1, &T.psi2})
    if (!g->is_sl2()) throw Error(Errc::IdentityFailed, "generator does not have determinant 1");
  return T;
}

}  // namespace sgen2
