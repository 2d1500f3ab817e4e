#include "sgen2/units.hpp"

#include <cmath>

#include "sgen2/error.hpp"

namespace sgen2 {

namespace {

// Order of a root of unity z in K, or 0 if z is not one. Orders of roots of
// unity in a degree-n field satisfy phi(k) <= n, so k <= 2 n^2 suffices.
long root_order(const FieldElement& z) {
  size_t n = z.K().degree();
  FieldElement p = z;
  for (long k = 1; k <= static_cast<long>(2 * n * n + 2); ++k, p = p * z)
    if (p.is_one()) return k;
  return 0;
}

}  // namespace

bool is_unit(const FieldElement& x) {
  if (x.is_zero()) return false;
  const auto& K = x.K();
  if (!K.is_integral(x) || !K.is_integral(x.inverse())) return false;
  return true;
}

Torsion torsion_subgroup(const FieldPtr& K) {
  Torsion t{2, K->from_int(-1)};
  if (K->tier() == Tier::Datasheet) {
    const auto& ds = *K->datasheet();
    if (ds.torsion) t = {ds.torsion->order, K->element(ds.torsion->generator)};
    return t;
  }
  if (K->degree() != 2 || K->quadratic_d() > 0) return t;
  // Imaginary quadratic: x = (a + b sqrt d)/2 with a^2 + |d| b^2 = 4.
  Int ad = -K->quadratic_d();
  FieldElement s = K->sqrt_d();
  std::vector<FieldElement> roots;
  for (long b = 2; b >= -2; --b) {
    Int rest = 4 - ad * b * b;
    if (rest < 0 || !is_square(rest)) continue;
    Int a = isqrt(rest);
    for (const Int& av : {a, Int(-a)}) {
      FieldElement x = Rat(av, 2) * K->one() + Rat(Int(b), 2) * s;
      if (K->is_integral(x)) roots.push_back(x);
      if (a == 0) break;
    }
  }
  long w = static_cast<long>(roots.size());
  // First generator in the enumeration order (b descending, then a).
  for (const auto& z : roots)
    if (root_order(z) == w) return {w, z};
  throw Error(Errc::DatasheetInvalid, "no generator of the torsion subgroup found");
}

size_t continued_fraction_period(const Int& disc) {
  Int s = isqrt(disc);
  Int b0 = s;
  if (b0 * b0 == disc) b0 -= 1;
  if (mod(b0 - disc, Int(2)) != 0) b0 -= 1;
  Int P = b0, Q = 2;
  size_t len = 0;
  do {
    Int a = floor_div(P + s, Q);
    P = a * Q - P;
    Q = (disc - P * P) / Q;
    ++len;
  } while (!(P == b0 && Q == 2));
  return len;
}

FieldElement real_quadratic_fundamental_unit(const FieldPtr& K) {
  if (K->degree() != 2 || K->quadratic_d() < 0) throw Error(Errc::ConfigInvalid, "not a real quadratic field");
  const Int& disc = K->discriminant();
  Int s = isqrt(disc);
  // xi0 = (b0 + sqrt disc)/2 is reduced: xi0 > 1 and -1 < conjugate < 0, so its
  // expansion is purely periodic with all Q_k > 0.
  Int b0 = s;
  if (mod(b0 - disc, Int(2)) != 0) b0 -= 1;
  Int P = b0, Q = 2;
  Int q_prev = 1, q_cur = 0;  // convergent denominators q_{k-2}, q_{k-1}
  do {
    Int a = floor_div(P + s, Q);
    Int q_next = a * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    P = a * Q - P;
    Q = (disc - P * P) / Q;
  } while (!(P == b0 && Q == 2));
  // After a full period l, q_cur = q_{l-1} and q_prev = q_{l-2}; the unit
  // q_{l-1} xi0 + q_{l-2} maps Z + Z xi0 to itself.
  FieldElement sqrt_disc = (disc == K->quadratic_d() ? Rat(1) : Rat(2)) * K->sqrt_d();
  FieldElement xi0 = Rat(b0, 2) * K->one() + Rat(1, 2) * sqrt_disc;
  FieldElement eps = Rat(q_cur) * xi0 + K->from_int(q_prev);
  Rat nm = eps.norm();
  if ((nm != 1 && nm != -1) || !K->is_integral(eps))
    throw Error(Errc::DatasheetInvalid, "continued fraction did not produce a unit");
  return eps;
}

std::vector<FieldElement> fundamental_units(const FieldPtr& K) {
  if (K->tier() == Tier::Datasheet) {
    std::vector<FieldElement> out;
    for (const auto& u : K->datasheet()->fundamental_units) out.push_back(K->element(u));
    return out;
  }
  if (K->degree() == 2 && K->quadratic_d() > 0) return {real_quadratic_fundamental_unit(K)};
  return {};
}

UnitLog unit_log(const FieldElement& u, const Torsion& tor, const std::vector<FieldElement>& fund) {
  const auto& K = u.K();
  if (!is_unit(u)) throw Error(Errc::NotContained, "element is not a unit of O_K");
  size_t r = fund.size();
  UnitLog out;
  out.exponents.assign(r, 0);
  FieldElement rest = u;
  if (r > 0) {
    // Solve against the first r log coordinates, then round.
    auto logvec = [&](const FieldElement& x) {
      std::vector<long double> v(r);
      for (size_t i = 0; i < r; ++i) {
        long double l = std::log(std::abs(K.approx_embed(x, i)));
        v[i] = static_cast<int>(i) < K.r1() ? l : 2 * l;
      }
      return v;
    };
    std::vector<std::vector<long double>> A(r, std::vector<long double>(r + 1));
    auto target = logvec(u);
    for (size_t j = 0; j < r; ++j) {
      auto lj = logvec(fund[j]);
      for (size_t i = 0; i < r; ++i) A[i][j] = lj[i];
    }
    for (size_t i = 0; i < r; ++i) A[i][r] = target[i];
    for (size_t c = 0; c < r; ++c) {
      size_t piv = c;
      for (size_t i = c + 1; i < r; ++i)
        if (std::fabs(A[i][c]) > std::fabs(A[piv][c])) piv = i;
      std::swap(A[c], A[piv]);
      for (size_t i = 0; i < r; ++i) {
        if (i == c) continue;
        long double f = A[i][c] / A[c][c];
        for (size_t j = c; j <= r; ++j) A[i][j] -= f * A[c][j];
      }
    }
    for (size_t j = 0; j < r; ++j) {
      long k = std::lround(A[j][r] / A[j][j]);
      out.exponents[j] = k;
      rest = rest * fund[j].pow(-k);
    }
  }
  FieldElement z = tor.generator.K().one();
  for (long t = 0; t < tor.order; ++t, z = z * tor.generator)
    if (z == rest) {
      out.torsion_exponent = t;
      return out;
    }
  throw Error(Errc::DatasheetInvalid, "unit is not generated by the given torsion and fundamental units");
}

}  // namespace sgen2
