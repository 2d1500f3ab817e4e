#include "sgen2/modp.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "sgen2/error.hpp"

namespace sgen2::modp {

FiniteField::FiniteField(std::uint64_t p, const fp::Poly& modulus) : p_(p), f_(fp::degree(modulus)) {
  if (f_ < 1) throw Error(Errc::ConfigInvalid, "residue field modulus must have positive degree");
  q_ = 1;
  for (int i = 0; i < f_; ++i) q_ *= p_;
  if (q_ > (1u << 16)) throw Error(Errc::ResidueFieldTooLarge, "residue field larger than 65536");
  // A primitive element: g^((q-1)/r) != 1 for every prime r | q-1.
  std::vector<std::uint64_t> rs;
  {
    std::uint64_t m = q_ - 1;
    for (std::uint64_t r = 2; r * r <= m; ++r)
      if (m % r == 0) {
        rs.push_back(r);
        while (m % r == 0) m /= r;
      }
    if (m > 1) rs.push_back(m);
  }
  fp::Poly g;
  for (Elt cand = 1; cand < q_; ++cand) {
    fp::Poly c = to_poly(cand);
    bool primitive = true;
    for (auto r : rs) {
      fp::Poly t = fp::powmod(c, Int(static_cast<unsigned long>((q_ - 1) / r)), modulus, p_);
      fp::trim(t);
      if (t.size() == 1 && t[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = c;
      break;
    }
  }
  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  fp::Poly x{1};
  for (std::uint64_t i = 0; i + 1 < q_; ++i) {
    Elt e = from_poly(x);
    exp_[i] = e;
    log_[e] = static_cast<std::uint32_t>(i);
    x = fp::rem(fp::mul(x, g, p_), modulus, p_);
  }
}

Elt FiniteField::from_poly(const fp::Poly& c) const {
  std::uint64_t x = 0, scale = 1;
  for (int i = 0; i < f_; ++i) {
    if (static_cast<size_t>(i) < c.size()) x += (c[static_cast<size_t>(i)] % p_) * scale;
    scale *= p_;
  }
  return static_cast<Elt>(x);
}

fp::Poly FiniteField::to_poly(Elt x) const {
  fp::Poly c(static_cast<size_t>(f_));
  for (int i = 0; i < f_; ++i) {
    c[static_cast<size_t>(i)] = x % p_;
    x = static_cast<Elt>(x / p_);
  }
  fp::trim(c);
  return c;
}

Elt FiniteField::add(Elt x, Elt y) const {
  if (f_ == 1) return static_cast<Elt>((x + y) % p_);
  std::uint64_t out = 0, scale = 1;
  for (int i = 0; i < f_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x = static_cast<Elt>(x / p_);
    y = static_cast<Elt>(y / p_);
    scale *= p_;
  }
  return static_cast<Elt>(out);
}

Elt FiniteField::neg(Elt x) const {
  std::uint64_t out = 0, scale = 1;
  for (int i = 0; i < f_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x = static_cast<Elt>(x / p_);
    scale *= p_;
  }
  return static_cast<Elt>(out);
}

Elt FiniteField::mul(Elt x, Elt y) const {
  if (x == 0 || y == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[x]) + log_[y]) % (q_ - 1)];
}

Elt FiniteField::inv(Elt x) const {
  if (x == 0) throw Error(Errc::DivisionByZero, "inverse of zero in a residue field");
  return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
}

Mat mat_mul(const FiniteField& F, const Mat& x, const Mat& y) {
  return {F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])), F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
          F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])), F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
}

Mat mat_inv(const FiniteField& F, const Mat& x) { return {x[3], F.neg(x[1]), F.neg(x[2]), x[0]}; }

namespace {

std::vector<Mat> with_inverses(const FiniteField& F, const std::vector<Mat>& gens) {
  std::vector<Mat> all = gens;
  for (const auto& g : gens) all.push_back(mat_inv(F, g));
  return all;
}

}  // namespace

GroupOrder orbit_stabilizer_order(const FiniteField& F, const std::vector<Mat>& gens) {
  const std::uint64_t q = F.q();
  auto all = with_inverses(F, gens);
  auto code = [q](Elt x, Elt y) { return static_cast<std::uint64_t>(x) * q + y; };

  // Orbit of e1 = (1, 0)^T with transversal T_v (T_v e1 = v).
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::pair<Elt, Elt>> points;
  std::vector<Mat> transversal;
  std::vector<long> depth;
  index.emplace(code(1, 0), 0);
  points.push_back({1, 0});
  transversal.push_back({1, 0, 0, 1});
  depth.push_back(0);
  for (size_t i = 0; i < points.size(); ++i) {
    auto [x, y] = points[i];
    for (const auto& g : all) {
      Elt nx = F.add(F.mul(g[0], x), F.mul(g[1], y));
      Elt ny = F.add(F.mul(g[2], x), F.mul(g[3], y));
      if (index.emplace(code(nx, ny), static_cast<std::uint32_t>(points.size())).second) {
        points.push_back({nx, ny});
        transversal.push_back(mat_mul(F, g, transversal[i]));
        depth.push_back(depth[i] + 1);
      }
    }
  }

  // Schreier generators T_{gv}^{-1} g T_v fix e1, hence are [[1, b], [0, 1]].
  const std::uint64_t p = F.p();
  const int f = F.f();
  std::vector<std::vector<std::uint64_t>> span;  // echelon rows over F_p
  for (size_t i = 0; i < points.size() && static_cast<int>(span.size()) < f; ++i) {
    for (const auto& g : all) {
      auto [x, y] = points[i];
      Elt nx = F.add(F.mul(g[0], x), F.mul(g[1], y));
      Elt ny = F.add(F.mul(g[2], x), F.mul(g[3], y));
      const Mat& tw = transversal[index.at(code(nx, ny))];
      Mat s = mat_mul(F, mat_inv(F, tw), mat_mul(F, g, transversal[i]));
      if (s[0] != 1 || s[2] != 0 || s[3] != 1)
        throw Error(Errc::IdentityFailed, "Schreier generator does not fix e1");
      fp::Poly b = F.to_poly(s[1]);
      std::vector<std::uint64_t> v(static_cast<size_t>(f), 0);
      for (size_t k = 0; k < b.size(); ++k) v[k] = b[k];
      for (const auto& row : span) {
        size_t piv = 0;
        while (row[piv] == 0) ++piv;
        if (v[piv] != 0) {
          std::uint64_t t = v[piv];
          for (size_t k = 0; k < v.size(); ++k) v[k] = fp::sub(v[k], fp::mul(t, row[k], p), p);
        }
      }
      size_t piv = 0;
      while (piv < v.size() && v[piv] == 0) ++piv;
      if (piv == v.size()) continue;
      std::uint64_t inv = fp::inv(v[piv], p);
      for (auto& c : v) c = fp::mul(c, inv, p);
      for (auto& row : span)
        if (row[piv] != 0) {
          std::uint64_t t = row[piv];
          for (size_t k = 0; k < v.size(); ++k) row[k] = fp::sub(row[k], fp::mul(t, v[k], p), p);
        }
      span.push_back(std::move(v));
      if (static_cast<int>(span.size()) == f) break;
    }
  }
  GroupOrder out;
  out.order = points.size();
  for (size_t k = 0; k < span.size(); ++k) out.order *= p;
  out.radius = depth.back();
  out.states = points.size();
  return out;
}

GroupOrder enumerate_order(const FiniteField& F, const std::vector<Mat>& gens) {
  auto all = with_inverses(F, gens);
  auto key = [](const Mat& m) {
    return (static_cast<std::uint64_t>(m[0]) << 48) | (static_cast<std::uint64_t>(m[1]) << 32) |
           (static_cast<std::uint64_t>(m[2]) << 16) | m[3];
  };
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<Mat, long>> queue;
  Mat id{1, 0, 0, 1};
  seen.insert(key(id));
  queue.push_back({id, 0});
  long radius = 0;
  while (!queue.empty()) {
    auto [m, dpt] = queue.front();
    queue.pop_front();
    radius = std::max(radius, dpt);
    for (const auto& g : all) {
      Mat n = mat_mul(F, m, g);
      if (seen.insert(key(n)).second) queue.push_back({n, dpt + 1});
    }
  }
  return {seen.size(), radius, seen.size()};
}

}  // namespace sgen2::modp
