#pragma once

// Unit group of O_K: torsion, fundamental units and exact discrete logs.

#include "sgen2/number_field.hpp"

namespace sgen2 {

struct Torsion {
  long order = 2;  // w
  FieldElement generator;
};

// Roots of unity in K: exhaustion over norm-1 elements for imaginary quadratic
// fields, -1 for real fields, the datasheet entry otherwise.
Torsion torsion_subgroup(const FieldPtr& K);

// Fundamental unit of a real quadratic field from the period of the continued
// fraction of (b + sqrt(disc))/2; the result is > 1 where sqrt_d() > 0.
FieldElement real_quadratic_fundamental_unit(const FieldPtr& K);

// Continued-fraction period length used for the unit above (for reports).
size_t continued_fraction_period(const Int& disc);

// Fundamental units: empty for Q and imaginary quadratic fields, the CF unit
// for real quadratic fields, datasheet units otherwise.
std::vector<FieldElement> fundamental_units(const FieldPtr& K);

struct UnitLog {
  long torsion_exponent = 0;  // u = zeta^t * prod eps_i^{k_i}
  IntVec exponents;
};

// Exact decomposition of a unit over (torsion, fundamental units). A floating
// log embedding proposes the exponents; the identity is then checked exactly.
// Throws NotContained if u is not a unit of O_K.
UnitLog unit_log(const FieldElement& u, const Torsion& tor, const std::vector<FieldElement>& fund);

bool is_unit(const FieldElement& x);

}  // namespace sgen2
