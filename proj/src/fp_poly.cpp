#include "sgen2/fp_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "sgen2/error.hpp"

namespace sgen2::fp {

u64 add(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) {
  if (a % p == 0) throw Error(Errc::DivisionByZero, "inverse of zero in F_p");
  return pow(a, p - 2, p);
}

u64 reduce(const Int& a, u64 p) {
  Int r = mod(a, Int(static_cast<unsigned long>(p)));
  return r.get_ui();
}

u64 reduce(const Rat& a, u64 p) {
  u64 d = reduce(a.get_den(), p);
  return mul(reduce(a.get_num(), p), inv(d, p), p);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly add(const Poly& a, const Poly& b, u64 p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = fp::add(c[i], b[i], p);
  trim(c);
  return c;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = fp::sub(c[i], b[i], p);
  trim(c);
  return c;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = fp::add(c[i + j], fp::mul(a[i], b[j], p), p);
  }
  trim(c);
  return c;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p) {
  if (b.empty()) throw Error(Errc::DivisionByZero, "polynomial division by zero mod p");
  Poly r = a;
  trim(r);
  int db = degree(b);
  if (degree(r) < db) return {Poly{}, r};
  u64 lead_inv = inv(b.back(), p);
  Poly q(static_cast<size_t>(degree(r) - db + 1), 0);
  for (int i = degree(r); i >= db; --i) {
    u64 f = fp::mul(r[i], lead_inv, p);
    q[i - db] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = fp::sub(r[i - db + j], fp::mul(f, b[j], p), p);
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly rem(const Poly& a, const Poly& b, u64 p) { return divmod(a, b, p).second; }

Poly monic(const Poly& f, u64 p) {
  if (f.empty()) return f;
  u64 li = inv(f.back(), p);
  Poly g = f;
  for (auto& x : g) x = fp::mul(x, li, p);
  return g;
}

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly derivative(const Poly& f, u64 p) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) d[i - 1] = fp::mul(f[i], i % p, p);
  trim(d);
  return d;
}

Poly powmod(const Poly& base, const Int& e, const Poly& m, u64 p) {
  Poly result{1 % p};
  trim(result);
  Poly b = rem(base, m, p);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), m, p);
  }
  return result;
}

Poly from_ints(const IntVec& c, u64 p) {
  Poly f;
  for (const auto& x : c) f.push_back(reduce(x, p));
  trim(f);
  return f;
}

bool is_squarefree(const Poly& f, u64 p) {
  Poly d = derivative(f, p);
  if (d.empty()) return false;
  return degree(gcd(f, d, p)) == 0;
}

namespace {

Int big(u64 p) { return Int(static_cast<unsigned long>(p)); }

// Product of the distinct monic irreducible factors of degree exactly d, for
// each d.
std::vector<Poly> distinct_degree(const Poly& f, u64 p) {
  int n = degree(f);
  std::vector<Poly> exact(static_cast<size_t>(n) + 1, Poly{1});
  Poly x{0, 1};
  Poly h = rem(x, f, p);
  for (int d = 1; d <= n; ++d) {
    h = powmod(h, big(p), f, p);  // x^{p^d} mod f
    Poly g = gcd(f, sub(h, x, p), p);
    for (int e = 1; e < d; ++e)
      if (d % e == 0 && degree(exact[e]) > 0) g = divmod(g, exact[e], p).first;
    exact[d] = monic(g, p);
  }
  return exact;
}

// Deterministic sequence of trial polynomials of degree < n.
Poly trial_poly(u64 index, int n, u64 p) {
  Poly a;
  u64 k = index;
  for (int i = 0; i < n && k > 0; ++i) {
    a.push_back(k % p);
    k /= p;
  }
  trim(a);
  return a;
}

void equal_degree(const Poly& f, int d, u64 p, std::vector<Poly>& out) {
  int n = degree(f);
  if (n == d) {
    out.push_back(monic(f, p));
    return;
  }
  Int e = (sgen2::pow(big(p), static_cast<unsigned long>(d)) - 1) / 2;
  for (u64 idx = p;; ++idx) {
    Poly a = trial_poly(idx, n, p);
    if (degree(a) < 1) continue;
    Poly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^{2^{d-1}} splits in characteristic 2.
      Poly t = a;
      Poly acc = a;
      for (int i = 1; i < d; ++i) {
        t = rem(mul(t, t, p), f, p);
        acc = add(acc, t, p);
      }
      b = acc;
    } else {
      b = sub(powmod(a, e, f, p), Poly{1}, p);
    }
    Poly g = gcd(f, b, p);
    int dg = degree(g);
    if (dg > 0 && dg < n) {
      equal_degree(g, d, p, out);
      equal_degree(divmod(f, g, p).first, d, p, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const Poly& f, u64 p) {
  if (degree(f) < 1) return false;
  if (degree(f) == 1) return true;
  if (!is_squarefree(f, p)) return false;
  auto dd = distinct_degree(monic(f, p), p);
  return degree(dd[static_cast<size_t>(degree(f))]) == degree(f);
}

std::vector<Factor> factor(const Poly& f_in, u64 p) {
  Poly f = monic(f_in, p);
  std::vector<Factor> out;
  if (degree(f) < 1) return out;
  auto dd = distinct_degree(f, p);
  for (int d = 1; d <= degree(f); ++d) {
    if (degree(dd[d]) <= 0) continue;
    std::vector<Poly> irr;
    equal_degree(dd[d], d, p, irr);
    for (auto& g : irr) {
      int m = 0;
      Poly rest = f;
      for (;;) {
        auto [q, r] = divmod(rest, g, p);
        if (!r.empty()) break;
        rest = q;
        ++m;
      }
      out.push_back({g, m});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.g.size() != b.g.size()) return a.g.size() < b.g.size();
    return std::lexicographical_compare(a.g.rbegin(), a.g.rend(), b.g.rbegin(), b.g.rend());
  });
  return out;
}

}  // namespace sgen2::fp
