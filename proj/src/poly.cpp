#include "sgen2/poly.hpp"

#include <algorithm>
#include <sstream>

#include "sgen2/error.hpp"

namespace sgen2 {

QPoly::QPoly(RatVec coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::from_ints(const IntVec& coeffs) {
  RatVec c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.emplace_back(x);
  return QPoly(std::move(c));
}

QPoly QPoly::monomial(const Rat& c, size_t deg) {
  RatVec v(deg + 1, 0);
  v[deg] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat QPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

int QPoly::sign_at(const Rat& x) const { return sgn(eval(x)); }

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  RatVec d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  RatVec d = c_;
  Rat lc = c_.back();
  for (auto& x : d) x /= lc;
  return QPoly(std::move(d));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  RatVec c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  RatVec c(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatVec c(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPoly(std::move(c));
}

QPoly operator*(const Rat& s, const QPoly& a) {
  RatVec c = a.c_;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rat v = c_[i];
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    Rat a = v < 0 ? Rat(-v) : v;
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  RatVec r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {QPoly{}, a};
  RatVec q(static_cast<size_t>(a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    Rat f = r[i] / b.leading();
    q[i - db] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(Rat(-1) * r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

namespace {
int count_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}
}  // namespace

int sign_changes_at(const std::vector<QPoly>& chain, const Rat& x) {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(p.sign_at(x));
  return count_changes(s);
}

int sign_changes_at_infinity(const std::vector<QPoly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& p : chain) {
    int sg = sgn(p.leading());
    if (!positive && p.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return count_changes(s);
}

int count_real_roots(const QPoly& f) {
  if (f.degree() <= 0) return 0;
  auto chain = sturm_chain(f);
  return sign_changes_at_infinity(chain, false) - sign_changes_at_infinity(chain, true);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f) {
  std::vector<std::pair<Rat, Rat>> out;
  if (f.degree() <= 0) return out;
  auto chain = sturm_chain(f);
  // Cauchy bound: every root lies in (-M, M).
  Rat m = 0;
  for (int i = 0; i < f.degree(); ++i) {
    Rat a = f.coeffs()[i] / f.leading();
    if (a < 0) a = -a;
    if (a > m) m = a;
  }
  m += 1;
  // Number of roots in (lo, hi] is V(lo) - V(hi).
  std::vector<std::pair<Rat, Rat>> work{{-m, m}};
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    int n = sign_changes_at(chain, lo) - sign_changes_at(chain, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(lo, hi);
      continue;
    }
    // Endpoints are never roots: keep nudging the split point off any root.
    Rat mid = (lo + hi) / 2;
    while (f.sign_at(mid) == 0) mid = (lo + mid) / 2;
    work.emplace_back(mid, hi);
    work.emplace_back(lo, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> integer_roots(const IntVec& c) {
  std::vector<Int> roots;
  if (c.empty()) return roots;
  auto eval = [&](const Int& x) {
    Int acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  if (c[0] == 0) {
    roots.push_back(0);
    return roots;
  }
  Int a0 = abs(c[0]);
  for (Int d = 1; d * d <= a0; ++d) {
    if (!mpz_divisible_p(a0.get_mpz_t(), d.get_mpz_t())) continue;
    for (const Int& q : {d, Int(a0 / d)})
      for (const Int& s : {q, Int(-q)})
        if (eval(s) == 0 && std::find(roots.begin(), roots.end(), s) == roots.end()) roots.push_back(s);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace sgen2
