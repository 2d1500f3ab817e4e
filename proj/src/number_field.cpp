#include "sgen2/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sgen2/error.hpp"
#include "sgen2/fp_poly.hpp"
#include "sgen2/linalg.hpp"

namespace sgen2 {

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(FieldPtr field, RatVec coords) : field_(std::move(field)), c_(std::move(coords)) {
  if (c_.size() != field_->degree()) throw Error(Errc::ConfigInvalid, "element has wrong number of coordinates");
  for (auto& x : c_) x.canonicalize();
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
}

bool FieldElement::is_one() const { return c_[0] == 1 && is_rational(); }

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  RatVec c = a.c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  RatVec c = a.c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a) {
  RatVec c = a.c_;
  for (auto& x : c) x = -x;
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return FieldElement(a.field_, a.field_->multiply(a.c_, b.c_));
}

FieldElement operator*(const Rat& s, const FieldElement& a) {
  RatVec c = a.c_;
  for (auto& x : c) x *= s;
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

RatMatrix FieldElement::mult_matrix() const {
  size_t n = c_.size();
  RatMatrix m(n);
  for (size_t i = 0; i < n; ++i) {
    RatVec e(n, 0);
    e[i] = 1;
    m[i] = field_->multiply(e, c_);
  }
  return m;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero element");
  RatVec one(c_.size(), 0);
  one[0] = 1;
  auto y = solve_left(mult_matrix(), one);
  return FieldElement(field_, std::move(*y));
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result = field_->one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Rat FieldElement::norm() const { return determinant(mult_matrix()); }

Rat FieldElement::trace() const {
  Rat t = 0;
  const auto& pt = field_->power_traces();
  for (size_t i = 0; i < c_.size(); ++i) t += c_[i] * pt[i];
  return t;
}

QPoly FieldElement::minimal_poly() const {
  size_t n = c_.size();
  RatMatrix powers{field_->one().coords()};
  RatVec cur = powers[0];
  for (size_t k = 1; k <= n; ++k) {
    cur = field_->multiply(cur, c_);
    if (auto sol = solve_left(powers, cur)) {
      RatVec coeffs(k + 1, 0);
      for (size_t i = 0; i < k; ++i) coeffs[i] = -(*sol)[i];
      coeffs[k] = 1;
      return QPoly(std::move(coeffs));
    }
    powers.push_back(cur);
  }
  throw Error(Errc::DatasheetInvalid, "no linear dependency among powers; field data inconsistent");
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- fields

namespace {

bool screen_irreducible(const IntVec& poly, bool& asserted) {
  size_t n = poly.size() - 1;
  asserted = false;
  if (n == 1) return true;
  // Degrees of possible factors, intersected over primes where f stays
  // squarefree; if nothing in 1..n-1 survives, f is irreducible.
  std::vector<bool> possible(n + 1, true);
  for (auto p64 : primes_up_to(100)) {
    auto p = static_cast<fp::u64>(p64);
    auto f = fp::from_ints(poly, p);
    if (fp::degree(f) != static_cast<int>(n) || !fp::is_squarefree(f, p)) continue;
    auto facs = fp::factor(f, p);
    if (facs.size() == 1) return true;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (const auto& fac : facs) {
      int d = fp::degree(fac.g);
      for (size_t s = n; s-- > 0;)
        if (sums[s] && s + d <= n) sums[s + d] = true;
    }
    for (size_t s = 1; s < n; ++s) possible[s] = possible[s] && sums[s];
    bool any = false;
    for (size_t s = 1; s < n; ++s) any = any || possible[s];
    if (!any) return true;
  }
  if (!integer_roots(poly).empty()) return false;
  if (n <= 3) return true;  // any factorization would have a linear factor
  asserted = true;
  return true;
}

Rat power_of_two_inv(int bits) { return Rat(1, pow(Int(2), static_cast<unsigned long>(bits))); }

std::vector<std::complex<long double>> durand_kerner(const IntVec& poly) {
  using C = std::complex<long double>;
  size_t n = poly.size() - 1;
  std::vector<C> z(n);
  C seed(0.4L, 0.9L);
  C cur(1, 0);
  for (size_t i = 0; i < n; ++i) {
    z[i] = cur;
    cur *= seed;
  }
  long double scale = 1;
  for (size_t i = 0; i < n; ++i) scale = std::max(scale, static_cast<long double>(std::fabs(poly[i].get_d())));
  for (auto& x : z) x *= (1 + scale) / 2;
  auto eval = [&](C x) {
    C acc = 0;
    for (size_t i = poly.size(); i-- > 0;) acc = acc * x + C(poly[i].get_d(), 0);
    return acc;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double delta = 0;
    for (size_t i = 0; i < n; ++i) {
      C den = 1;
      for (size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      C step = eval(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-16L) break;
  }
  return z;
}

}  // namespace

FieldElement NumberField::element(RatVec coords) const {
  return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement NumberField::from_rat(const Rat& a) const {
  RatVec c(n_, 0);
  c[0] = a;
  return element(std::move(c));
}

FieldElement NumberField::from_int(const Int& a) const { return from_rat(Rat(a)); }

FieldElement NumberField::gen() const {
  if (n_ == 1) return from_int(-poly_[0]);
  RatVec c(n_, 0);
  c[1] = 1;
  return element(std::move(c));
}

FieldElement NumberField::sqrt_d() const {
  if (n_ != 2) throw Error(Errc::ConfigInvalid, "sqrt_d is only defined for quadratic fields");
  return element(sqrt_d_);
}

RatVec NumberField::multiply(const RatVec& a, const RatVec& b) const {
  if (n_ == 1) return {a[0] * b[0]};
  RatVec conv(2 * n_ - 1, 0);
  for (size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n_; ++j)
      if (b[j] != 0) conv[i + j] += a[i] * b[j];
  }
  RatVec out(conv.begin(), conv.begin() + static_cast<long>(n_));
  for (size_t k = n_; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    const auto& t = theta_powers_[k];
    for (size_t i = 0; i < n_; ++i) out[i] += conv[k] * t[i];
  }
  return out;
}

RatVec NumberField::to_basis(const RatVec& power_coords) const { return vec_mat(power_coords, basis_inv_); }
RatVec NumberField::from_basis(const RatVec& basis_coords) const { return vec_mat(basis_coords, basis_); }

FieldElement NumberField::basis_element(size_t i) const { return element(basis_[i]); }

std::optional<IntVec> NumberField::integral_coords(const FieldElement& x) const {
  RatVec c = to_basis(x.coords());
  IntVec out(n_);
  for (size_t i = 0; i < n_; ++i) {
    if (c[i].get_den() != 1) return std::nullopt;
    out[i] = c[i].get_num();
  }
  return out;
}

bool NumberField::is_integral(const FieldElement& x) const { return integral_coords(x).has_value(); }

IntMatrix NumberField::int_mult_matrix(const FieldElement& x) const {
  IntMatrix m(n_);
  for (size_t i = 0; i < n_; ++i) {
    auto c = integral_coords(basis_element(i) * x);
    if (!c) throw Error(Errc::NotContained, "multiplication matrix of a non-integral element");
    m[i] = std::move(*c);
  }
  return m;
}

std::complex<long double> NumberField::approx_embed(const FieldElement& x, size_t i) const {
  std::complex<long double> acc = 0;
  const auto& c = x.coords();
  for (size_t k = n_; k-- > 0;) acc = acc * roots_[i] + std::complex<long double>(c[k].get_d(), 0);
  return acc;
}

std::string NumberField::describe() const { return "Q[x]/(" + poly().to_string() + ")"; }

void NumberField::init_power_tables() {
  theta_powers_.clear();
  if (n_ == 1) {
    theta_powers_.push_back({Rat(1)});
    power_traces_ = {Rat(1)};
    return;
  }
  for (size_t k = 0; k < n_; ++k) {
    RatVec e(n_, 0);
    e[k] = 1;
    theta_powers_.push_back(std::move(e));
  }
  // theta^n = -sum a_i theta^i, then shift repeatedly.
  for (size_t k = n_; k < 2 * n_ - 1; ++k) {
    const RatVec& prev = theta_powers_[k - 1];
    RatVec next(n_, 0);
    for (size_t i = 1; i < n_; ++i) next[i] = prev[i - 1];
    const Rat& top = prev[n_ - 1];
    if (top != 0)
      for (size_t i = 0; i < n_; ++i) next[i] -= top * Rat(poly_[i]);
    theta_powers_.push_back(std::move(next));
  }
  power_traces_.assign(n_, 0);
  for (size_t k = 0; k < n_; ++k)
    for (size_t i = 0; i < n_; ++i) power_traces_[k] += theta_powers_[i + k][i];
}

void NumberField::init_signature() {
  QPoly f = poly();
  emb_.real_roots = isolate_real_roots(f);
  r1_ = static_cast<int>(emb_.real_roots.size());
  r2_ = static_cast<int>(n_ - static_cast<size_t>(r1_)) / 2;
  emb_.complex_pairs = r2_;
  emb_.precision_bits = 64;
  Rat width = power_of_two_inv(emb_.precision_bits);
  for (auto& [lo, hi] : emb_.real_roots) {
    if (f.sign_at(hi) == 0) {
      lo = hi - width / 2;
      continue;
    }
    while (hi - lo >= width) {
      Rat mid = (lo + hi) / 2;
      int sm = f.sign_at(mid);
      if (sm == 0) {
        lo = mid - width / 2;
        hi = mid;
        break;
      }
      if (sm == f.sign_at(hi)) hi = mid;
      else lo = mid;
    }
  }
  // Real embeddings from the exact intervals; complex ones numerically.
  roots_.clear();
  for (const auto& [lo, hi] : emb_.real_roots) roots_.emplace_back(Rat((lo + hi) / 2).get_d(), 0);
  if (r2_ > 0) {
    auto z = durand_kerner(poly_);
    std::sort(z.begin(), z.end(), [](auto a, auto b) {
      return a.imag() != b.imag() ? a.imag() > b.imag() : a.real() < b.real();
    });
    for (int i = 0; i < r2_; ++i) roots_.push_back(z[static_cast<size_t>(i)]);
  }
}

void NumberField::init_quadratic_basis() {
  if (n_ == 1) {
    basis_ = {{Rat(1)}};
    disc_ = 1;
    d_ = 1;
    return;
  }
  const Int& c = poly_[0];
  const Int& b = poly_[1];
  Int D = b * b - 4 * c;
  auto [d, f] = squarefree_decomposition(D);
  d_ = d;
  // sqrt(D) = 2 theta + b, so sqrt(d) = (2 theta + b) / f.
  sqrt_d_ = {Rat(b, f), Rat(Int(2), f)};
  for (auto& x : sqrt_d_) x.canonicalize();
  if (mod(d, Int(4)) == 1) {
    basis_ = {{1, 0}, {Rat((1 + sqrt_d_[0]) / 2), Rat(sqrt_d_[1] / 2)}};
    disc_ = d;
  } else {
    basis_ = {{1, 0}, sqrt_d_};
    disc_ = 4 * d;
  }
}

void NumberField::finish_basis() {
  auto inv = inverse(basis_);
  if (!inv) throw Error(Errc::DatasheetInvalid, "integral basis is singular");
  basis_inv_ = std::move(*inv);
  Rat det = determinant(basis_);
  Rat idx = 1 / det;
  if (idx < 0) idx = -idx;
  if (idx.get_den() != 1) throw Error(Errc::DatasheetInvalid, "integral basis does not contain Z[theta]");
  index_ = idx.get_num();
}

void NumberField::init_datasheet(const Datasheet& ds) {
  auto bad = [](const std::string& why) { throw Error(Errc::DatasheetInvalid, why); };
  if (ds.integral_basis.size() != n_) bad("integral basis must have n rows");
  for (const auto& row : ds.integral_basis)
    if (row.size() != n_) bad("integral basis rows must have n entries");
  for (size_t j = 0; j < n_; ++j)
    if (ds.integral_basis[0][j] != (j == 0 ? 1 : 0)) bad("first integral basis element must be 1");
  basis_ = ds.integral_basis;
  finish_basis();
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j)
      if (basis_inv_[i][j].get_den() != 1) bad("power basis is not in the span of the integral basis");
  // Closure under multiplication and integrality of the trace form.
  RatMatrix gram(n_, RatVec(n_));
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = i; j < n_; ++j) {
      FieldElement prod = basis_element(i) * basis_element(j);
      if (!is_integral(prod)) bad("integral basis is not closed under multiplication");
      Rat t = prod.trace();
      if (t.get_den() != 1) bad("trace form is not integral");
      gram[i][j] = gram[j][i] = t;
    }
  disc_ = determinant(gram).get_num();

  for (const auto& u : ds.fundamental_units) {
    if (u.size() != n_) bad("fundamental unit has wrong length");
    FieldElement x = element(u);
    if (!is_integral(x)) bad("fundamental unit is not integral");
    Rat nm = x.norm();
    if (nm != 1 && nm != -1) bad("fundamental unit does not have norm +-1");
    // Torsion units have order k with phi(k) <= n, hence k <= 2 n^2.
    FieldElement p = x;
    for (size_t k = 1; k <= 2 * n_ * n_; ++k, p = p * x)
      if (p.is_one()) bad("fundamental unit is a root of unity");
  }
  if (ds.fundamental_units.size() != static_cast<size_t>(unit_rank()))
    bad("expected " + std::to_string(unit_rank()) + " fundamental units");
  if (unit_rank() >= 2) {
    // Floating-point regulator screen for independence.
    std::vector<std::vector<long double>> logs;
    for (const auto& u : ds.fundamental_units) {
      std::vector<long double> row;
      for (int i = 0; i < unit_rank(); ++i) {
        long double l = std::log(std::abs(approx_embed(element(u), static_cast<size_t>(i))));
        row.push_back(i < r1_ ? l : 2 * l);
      }
      logs.push_back(row);
    }
    // Gaussian elimination determinant.
    size_t r = logs.size();
    long double det = 1;
    for (size_t c = 0; c < r; ++c) {
      size_t piv = c;
      for (size_t i = c + 1; i < r; ++i)
        if (std::fabs(logs[i][c]) > std::fabs(logs[piv][c])) piv = i;
      std::swap(logs[c], logs[piv]);
      det *= logs[c][c];
      if (std::fabs(logs[c][c]) < 1e-12L) break;
      for (size_t i = c + 1; i < r; ++i) {
        long double f = logs[i][c] / logs[c][c];
        for (size_t j = c; j < r; ++j) logs[i][j] -= f * logs[c][j];
      }
    }
    if (std::fabs(det) < 1e-9L) bad("fundamental units are multiplicatively dependent");
  }

  if (ds.torsion) {
    if (ds.torsion->order < 2 || ds.torsion->generator.size() != n_) bad("malformed torsion entry");
    FieldElement z = element(ds.torsion->generator);
    long w = ds.torsion->order;
    if (!z.pow(w).is_one()) bad("torsion generator has wrong order");
    for (const auto& [p, e] : factor_int(Int(w)))
      if (z.pow(w / p.get_si()).is_one()) bad("torsion generator has smaller order than declared");
  }

  for (const auto& sf : ds.subfields) {
    std::optional<Datasheet> nested;
    if (sf.datasheet) nested = *sf.datasheet;
    FieldPtr F = create_field(sf.poly, nested);
    size_t m = F->degree();
    if (m <= 1 || m >= n_ || n_ % m != 0) bad("declared subfield has invalid degree");
    if (sf.embedding.size() != n_) bad("subfield embedding has wrong length");
    FieldElement e = element(sf.embedding);
    if (!(e.minimal_poly() == F->poly())) bad("subfield embedding does not satisfy the subfield polynomial");
    subfields_.push_back({F, sf.embedding});
  }
  for (const auto& co : ds.class_orders) {
    if (co.order < 1 || co.generator.size() != n_ || co.hnf.size() != n_) bad("malformed class order entry");
  }
  datasheet_ = ds;
}

FieldPtr create_field(const IntVec& poly, const std::optional<Datasheet>& datasheet) {
  if (poly.size() < 2) throw Error(Errc::NotMonic, "polynomial must have degree at least 1");
  if (poly.back() != 1) throw Error(Errc::NotMonic, "leading coefficient must be 1");
  std::shared_ptr<NumberField> K(new NumberField());
  K->poly_ = poly;
  K->n_ = poly.size() - 1;
  bool asserted = false;
  if (!screen_irreducible(poly, asserted)) throw Error(Errc::Reducible, "polynomial has an integer root");
  K->asserted_irreducible_ = asserted;
  K->init_power_tables();
  K->init_signature();
  if (K->n_ <= 2) {
    K->tier_ = Tier::Automatic;
    K->init_quadratic_basis();
    K->finish_basis();
  } else {
    if (!datasheet) throw Error(Errc::DatasheetRequired, "fields of degree > 2 need a datasheet");
    K->tier_ = Tier::Datasheet;
    K->init_datasheet(*datasheet);
  }
  if (K->n_ > 1) K->subfields_.insert(K->subfields_.begin(), {rational_field(), RatVec(K->n_, 0)});
  return K;
}

FieldPtr rational_field() {
  static const FieldPtr Q = create_field({Int(0), Int(1)});
  return Q;
}

FieldElement embed(const FieldElement& x, const FieldElement& gen_image) {
  const auto& K = gen_image.K();
  const auto& F = x.K();
  if (F.degree() == 1) return K.from_rat(x.coords()[0]);
  FieldElement acc = K.zero();
  FieldElement p = K.one();
  for (size_t k = 0; k < F.degree(); ++k) {
    if (x.coords()[k] != 0) acc = acc + x.coords()[k] * p;
    p = p * gen_image;
  }
  return acc;
}

}  // namespace sgen2
