#pragma once

// Subgroups of SL_2(F_q) given by generators: exact orders by orbit-stabilizer
// on F_q^2 (the production kernel) and by full enumeration of 4-tuples (the
// serial reference).

#include <array>
#include <cstdint>
#include <vector>

#include "sgen2/fp_poly.hpp"

namespace sgen2::modp {

using Elt = std::uint32_t;  // index sum c_i p^i of the residue polynomial

// F_q = F_p[x]/(g) with log/exp tables.
class FiniteField {
 public:
  FiniteField(std::uint64_t p, const fp::Poly& modulus);

  std::uint64_t p() const { return p_; }
  int f() const { return f_; }
  std::uint64_t q() const { return q_; }

  Elt from_poly(const fp::Poly& c) const;
  fp::Poly to_poly(Elt x) const;
  Elt add(Elt x, Elt y) const;
  Elt neg(Elt x) const;
  Elt sub(Elt x, Elt y) const { return add(x, neg(y)); }
  Elt mul(Elt x, Elt y) const;
  Elt inv(Elt x) const;

 private:
  std::uint64_t p_;
  int f_;
  std::uint64_t q_;
  std::vector<std::uint32_t> log_, exp_;
};

using Mat = std::array<Elt, 4>;  // [[a, b], [c, d]]

Mat mat_mul(const FiniteField& F, const Mat& x, const Mat& y);
Mat mat_inv(const FiniteField& F, const Mat& x);  // x in SL_2

struct GroupOrder {
  std::uint64_t order = 0;
  long radius = 0;          // BFS depth reached
  std::uint64_t states = 0;  // states visited
};

// |<gens>| = |orbit of e1| * |stabilizer of e1|; the stabilizer lies in the
// unipotent group {[[1, b], [0, 1]]}, so it is the F_p-span of the b-entries
// of the Schreier generators.
GroupOrder orbit_stabilizer_order(const FiniteField& F, const std::vector<Mat>& gens);

// Reference: breadth-first closure over all group elements as 4-tuples.
GroupOrder enumerate_order(const FiniteField& F, const std::vector<Mat>& gens);

}  // namespace sgen2::modp
