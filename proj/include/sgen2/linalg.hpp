#pragma once

#include <optional>

#include "sgen2/arith.hpp"

namespace sgen2 {

// ---- rational linear algebra (row-vector convention: x * M) ----

RatMatrix identity_rat(size_t n);
RatMatrix transpose(const RatMatrix& m);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
RatVec vec_mat(const RatVec& x, const RatMatrix& m);

size_t rank(RatMatrix m);
Rat determinant(RatMatrix m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

// Solve x * M = b. Returns any solution, or nullopt if inconsistent.
std::optional<RatVec> solve_left(const RatMatrix& m, const RatVec& b);

// ---- integer lattices ----

// Row Hermite normal form: nonzero rows only, echelon, positive pivots, entries
// above each pivot reduced into [0, pivot).
IntMatrix hnf(IntMatrix m);

struct HnfTransform {
  IntMatrix h;   // all rows (including zero rows at the bottom)
  IntMatrix u;   // unimodular, u * m == h
  size_t rank;
};
HnfTransform hnf_with_transform(const IntMatrix& m);

// Basis of the integer left kernel {x : x * M = 0}.
IntMatrix left_kernel(const IntMatrix& m);

// Smith normal form diagonal (nonzero invariant factors, divisibility chain).
std::vector<Int> smith_diagonal(IntMatrix m);

// Pivot column for each row of an echelon matrix.
std::vector<size_t> pivot_columns(const IntMatrix& echelon);

// Reduce v against an echelon basis; returns integer coordinates if v lies in
// the row span, nullopt otherwise.
std::optional<IntVec> echelon_coordinates(const IntMatrix& echelon, IntVec v);

}  // namespace sgen2
