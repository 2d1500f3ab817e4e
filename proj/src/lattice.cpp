#include "sgen2/lattice.hpp"

#include "sgen2/error.hpp"
#include "sgen2/linalg.hpp"

namespace sgen2 {

namespace {

IntVec scale_to_int(const RatVec& v, const Int& den) {
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat x = v[i] * den;
    out[i] = x.get_num();  // den is a common multiple of all denominators
  }
  return out;
}

}  // namespace

Lattice Lattice::from_generators(const std::vector<RatVec>& gens, size_t dim) {
  Lattice l(dim);
  Int den = 1;
  for (const auto& g : gens) den = lcm(den, denominator_lcm(g));
  IntMatrix rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(scale_to_int(g, den));
  l.den_ = den;
  l.hnf_ = sgen2::hnf(std::move(rows));
  l.canonicalize();
  return l;
}

Lattice Lattice::from_integer_rows(const IntMatrix& rows, size_t dim) {
  Lattice l(dim);
  l.hnf_ = sgen2::hnf(rows);
  l.canonicalize();
  return l;
}

void Lattice::canonicalize() {
  if (hnf_.empty()) {
    den_ = 1;
    return;
  }
  Int g = den_;
  for (const auto& row : hnf_)
    for (const auto& x : row) {
      if (g == 1) break;
      if (x != 0) g = gcd(g, x);
    }
  if (g != 1) {
    den_ /= g;
    for (auto& row : hnf_)
      for (auto& x : row) x /= g;
  }
}

std::vector<RatVec> Lattice::basis() const {
  std::vector<RatVec> out;
  out.reserve(hnf_.size());
  for (const auto& row : hnf_) {
    RatVec v(dim_);
    for (size_t j = 0; j < dim_; ++j) {
      v[j] = Rat(row[j], den_);
      v[j].canonicalize();
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<IntVec> Lattice::coordinates(const RatVec& v) const {
  Int d = denominator_lcm(v);
  if (!mpz_divisible_p(den_.get_mpz_t(), d.get_mpz_t())) {
    // v has a denominator the lattice cannot produce unless v is zero.
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
  }
  return echelon_coordinates(hnf_, scale_to_int(v, den_));
}

bool Lattice::contains(const RatVec& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

Lattice Lattice::scaled(const Rat& s) const {
  auto gens = basis();
  for (auto& g : gens)
    for (auto& x : g) x *= s;
  return from_generators(gens, dim_);
}

Lattice operator+(const Lattice& a, const Lattice& b) {
  auto gens = a.basis();
  auto gb = b.basis();
  gens.insert(gens.end(), gb.begin(), gb.end());
  return Lattice::from_generators(gens, a.dim_);
}

Lattice Lattice::intersect(const Lattice& other) const {
  if (rank() == 0 || other.rank() == 0) return Lattice(dim_);
  Int den = lcm(den_, other.den_);
  Int sa = den / den_;
  Int sb = den / other.den_;
  IntMatrix stacked;
  for (const auto& row : hnf_) {
    IntVec r(dim_);
    for (size_t j = 0; j < dim_; ++j) r[j] = row[j] * sa;
    stacked.push_back(std::move(r));
  }
  for (const auto& row : other.hnf_) {
    IntVec r(dim_);
    for (size_t j = 0; j < dim_; ++j) r[j] = row[j] * sb;
    stacked.push_back(std::move(r));
  }
  // x*A + y*B = 0  ==>  x*A lies in both lattices.
  IntMatrix ker = left_kernel(stacked);
  IntMatrix rows;
  for (const auto& k : ker) {
    IntVec v(dim_, 0);
    for (size_t i = 0; i < hnf_.size(); ++i)
      if (k[i] != 0)
        for (size_t j = 0; j < dim_; ++j) v[j] += k[i] * stacked[i][j];
    rows.push_back(std::move(v));
  }
  Lattice l(dim_);
  l.den_ = den;
  l.hnf_ = sgen2::hnf(std::move(rows));
  l.canonicalize();
  return l;
}

Rat Lattice::covolume() const {
  if (rank() != dim_) return 0;
  Int det = 1;
  for (size_t i = 0; i < dim_; ++i) det *= hnf_[i][i];
  Rat v(det, pow(den_, static_cast<unsigned long>(dim_)));
  v.canonicalize();
  return v;
}

std::optional<Int> lattice_index(const Lattice& outer, const Lattice& inner) {
  if (outer.dim() != inner.dim()) throw Error(Errc::NotContained, "lattices of different dimension");
  IntMatrix coords;
  for (const auto& b : inner.basis()) {
    auto c = outer.coordinates(b);
    if (!c) throw Error(Errc::NotContained, "inner lattice is not a subgroup of the outer lattice");
    coords.push_back(std::move(*c));
  }
  if (inner.rank() < outer.rank()) return std::nullopt;
  auto diag = smith_diagonal(coords);
  Int idx = 1;
  for (const auto& d : diag) idx *= d;
  return idx;
}

}  // namespace sgen2
