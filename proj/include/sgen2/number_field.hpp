#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>

#include "sgen2/arith.hpp"
#include "sgen2/poly.hpp"

namespace sgen2 {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// User-supplied data for fields of degree > 2. Element vectors are in the
// power basis of the generator.
struct Datasheet {
  struct Subfield {
    IntVec poly;
    RatVec embedding;                      // image of the subfield generator
    std::shared_ptr<Datasheet> datasheet;  // needed when the subfield has degree > 2
  };
  struct ClassOrder {
    IntMatrix hnf;  // ideal in integral-basis coordinates
    long order = 0;
    RatVec generator;
  };
  struct Torsion {
    long order = 2;
    RatVec generator;
  };

  RatMatrix integral_basis;
  std::vector<RatVec> fundamental_units;
  std::vector<Subfield> subfields;
  std::vector<ClassOrder> class_orders;
  std::optional<Torsion> torsion;
};

enum class Tier { Automatic, Datasheet };

struct EmbeddingData {
  std::vector<std::pair<Rat, Rat>> real_roots;  // isolating intervals (lo, hi]
  int complex_pairs = 0;
  int precision_bits = 0;  // every interval is narrower than 2^-precision_bits
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, RatVec coords);

  const FieldPtr& field() const { return field_; }
  const RatVec& coords() const { return c_; }
  const NumberField& K() const { return *field_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const Rat& s, const FieldElement& a);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }

  FieldElement inverse() const;
  FieldElement pow(long e) const;
  Rat norm() const;
  Rat trace() const;
  QPoly minimal_poly() const;

  // Matrix of y -> y*this on power-basis coordinates (row convention).
  RatMatrix mult_matrix() const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  RatVec c_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  const IntVec& defining_poly() const { return poly_; }
  QPoly poly() const { return QPoly::from_ints(poly_); }
  size_t degree() const { return n_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  std::pair<int, int> signature() const { return {r1_, r2_}; }
  int unit_rank() const { return r1_ + r2_ - 1; }
  Tier tier() const { return tier_; }
  bool asserted_irreducible() const { return asserted_irreducible_; }

  const RatMatrix& integral_basis() const { return basis_; }
  const Int& discriminant() const { return disc_; }
  const Int& index() const { return index_; }  // [O_K : Z[theta]]
  const EmbeddingData& embeddings() const { return emb_; }

  // Quadratic fields only: squarefree d with K = Q(sqrt d), and sqrt d itself.
  const Int& quadratic_d() const { return d_; }
  FieldElement sqrt_d() const;

  const std::optional<Datasheet>& datasheet() const { return datasheet_; }

  struct Subfield {
    FieldPtr field;
    RatVec embedding;
  };
  // Proper subfields known to the field: always Q for n > 1, plus any
  // declared in a datasheet (verified).
  const std::vector<Subfield>& subfields() const { return subfields_; }

  FieldElement element(RatVec coords) const;
  FieldElement from_int(const Int& a) const;
  FieldElement from_rat(const Rat& a) const;
  FieldElement zero() const { return from_int(0); }
  FieldElement one() const { return from_int(1); }
  FieldElement gen() const;  // theta

  // Coordinates in the integral basis (and back).
  RatVec to_basis(const RatVec& power_coords) const;
  RatVec from_basis(const RatVec& basis_coords) const;
  FieldElement basis_element(size_t i) const;
  std::optional<IntVec> integral_coords(const FieldElement& x) const;
  bool is_integral(const FieldElement& x) const;

  // Integer matrix of multiplication by x on integral-basis coordinates;
  // x must be integral.
  IntMatrix int_mult_matrix(const FieldElement& x) const;

  // Power-basis product of coordinate vectors.
  RatVec multiply(const RatVec& a, const RatVec& b) const;
  // Tr(theta^k) for k < n.
  const RatVec& power_traces() const { return power_traces_; }

  // Approximate complex values of theta under each embedding: r1 real ones,
  // then one representative of each complex pair.
  const std::vector<std::complex<long double>>& approx_roots() const { return roots_; }
  std::complex<long double> approx_embed(const FieldElement& x, size_t i) const;

  std::string describe() const;

 private:
  friend FieldPtr create_field(const IntVec&, const std::optional<Datasheet>&);
  NumberField() = default;

  void init_power_tables();
  void init_signature();
  void init_quadratic_basis();
  void init_datasheet(const Datasheet& ds);
  void finish_basis();

  IntVec poly_;
  size_t n_ = 0;
  int r1_ = 0, r2_ = 0;
  Tier tier_ = Tier::Automatic;
  bool asserted_irreducible_ = false;
  RatMatrix basis_, basis_inv_;
  Int disc_ = 1, index_ = 1, d_ = 1;
  RatVec sqrt_d_;
  EmbeddingData emb_;
  std::optional<Datasheet> datasheet_;
  std::vector<Subfield> subfields_;
  std::vector<RatVec> theta_powers_;  // theta^k for k < 2n-1 in power coordinates
  RatVec power_traces_;
  std::vector<std::complex<long double>> roots_;
};

// Errors: NotMonic, Reducible, DatasheetRequired, DatasheetInvalid.
FieldPtr create_field(const IntVec& poly, const std::optional<Datasheet>& datasheet = std::nullopt);

// The rational field Q, as the degree-1 field x.
FieldPtr rational_field();

// Image in K of an element of a subfield F, where gen_image is the image of
// F's generator.
FieldElement embed(const FieldElement& x, const FieldElement& gen_image);

}  // namespace sgen2
