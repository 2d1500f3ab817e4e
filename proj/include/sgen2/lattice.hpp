#pragma once

#include <optional>

#include "sgen2/arith.hpp"

namespace sgen2 {

// A finitely generated subgroup of Q^dim, stored canonically as (1/den) times
// the row HNF of an integer matrix. Any rank 0..dim is allowed.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(size_t dim) : dim_(dim), den_(1) {}

  static Lattice from_generators(const std::vector<RatVec>& gens, size_t dim);
  static Lattice from_integer_rows(const IntMatrix& rows, size_t dim);

  size_t dim() const { return dim_; }
  size_t rank() const { return hnf_.size(); }
  const Int& denominator() const { return den_; }
  const IntMatrix& hnf() const { return hnf_; }
  std::vector<RatVec> basis() const;

  bool contains(const RatVec& v) const;
  bool contains(const Lattice& other) const;

  // Integer coordinates of v with respect to basis(), if v lies in the lattice.
  std::optional<IntVec> coordinates(const RatVec& v) const;

  Lattice scaled(const Rat& s) const;
  friend Lattice operator+(const Lattice& a, const Lattice& b);
  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim_ == b.dim_ && a.den_ == b.den_ && a.hnf_ == b.hnf_;
  }

  Lattice intersect(const Lattice& other) const;

  // |det| of the Gram-free volume for full-rank lattices: det(hnf) / den^dim.
  Rat covolume() const;

 private:
  void canonicalize();

  size_t dim_ = 0;
  Int den_ = 1;
  IntMatrix hnf_;
};

// Index [outer : inner]; nullopt means infinite (rank drop). Throws
// Error(NotContained) unless inner is a subgroup of outer.
std::optional<Int> lattice_index(const Lattice& outer, const Lattice& inner);

}  // namespace sgen2
