#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sgen2/error.hpp"
#include "support.hpp"

using namespace sgen2;
using testsupport::ints;
using testsupport::quad;
using testsupport::cube_root_two_sheet;

namespace {


}  // namespace

TEST_CASE("create_field examples") {
  auto Qi = create_field(ints({1, 0, 1}));
  CHECK(Qi->signature() == std::pair{0, 1});
  CHECK(Qi->discriminant() == -4);
  CHECK(Qi->tier() == Tier::Automatic);

  auto Q = create_field(ints({-1, 1}));
  CHECK(Q->signature() == std::pair{1, 0});
  CHECK(Q->integral_basis() == RatMatrix{{1}});
  CHECK(Q->discriminant() == 1);
  CHECK(Q->gen() == Q->one());

  auto Q5 = create_field(ints({-5, 0, 1}));
  CHECK(Q5->integral_basis() == RatMatrix{{1, 0}, {Rat(1, 2), Rat(1, 2)}});
  CHECK(Q5->discriminant() == 5);
  CHECK(Q5->index() == 2);
}

TEST_CASE("quadratic discriminant equals the trace-form determinant") {
  for (long D : {-1L, -2L, -3L, -5L, -7L, 2L, 3L, 5L, 6L, 13L, 17L, 21L, -15L, 10L}) {
    auto K = create_field(ints({-D, 0, 1}));
    RatMatrix gram(2, RatVec(2));
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) gram[i][j] = (K->basis_element(i) * K->basis_element(j)).trace();
    CHECK(Rat(K->discriminant()) == gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]);
  }
  // Non-reduced polynomial: x^2 + 3x - 1, D = 13.
  auto K = create_field(ints({-1, 3, 1}));
  CHECK(K->quadratic_d() == 13);
  CHECK(K->discriminant() == 13);
  CHECK(K->sqrt_d() * K->sqrt_d() == K->from_int(13));
  // x^2 - 12: D = 48 = 4^2 * 3.
  auto K12 = create_field(ints({-12, 0, 1}));
  CHECK(K12->quadratic_d() == 3);
  CHECK(K12->discriminant() == 12);
  CHECK(K12->index() == 2);
}

TEST_CASE("create_field errors") {
  CHECK_THROWS_WITH_AS(create_field(ints({1, 0, 2})), doctest::Contains("NotMonic"), Error);
  CHECK_THROWS_WITH_AS(create_field(ints({-1, 0, 1})), doctest::Contains("Reducible"), Error);
  CHECK_THROWS_WITH_AS(create_field(ints({-6, 11, -6, 1})), doctest::Contains("Reducible"), Error);
  CHECK_THROWS_WITH_AS(create_field(ints({-2, 0, 0, 1})), doctest::Contains("DatasheetRequired"), Error);
  Datasheet bad = cube_root_two_sheet();
  bad.integral_basis[1] = {Rat(1, 2), Rat(1, 2), 0};
  CHECK_THROWS_WITH_AS(create_field(ints({-2, 0, 0, 1}), bad), doctest::Contains("DatasheetInvalid"), Error);
  Datasheet bad_unit = cube_root_two_sheet();
  bad_unit.fundamental_units = {{2, 1, 0}};
  CHECK_THROWS_AS(create_field(ints({-2, 0, 0, 1}), bad_unit), Error);
}

TEST_CASE("signature") {
  CHECK(create_field(ints({-2, 0, 1}))->signature() == std::pair{2, 0});
  auto K = create_field(ints({-2, 0, 0, 1}), cube_root_two_sheet());
  CHECK(K->signature() == std::pair{1, 1});
  CHECK(K->discriminant() == -108);
  auto emb = K->embeddings();
  REQUIRE(emb.real_roots.size() == 1);
  CHECK(emb.real_roots[0].first < Rat(126, 100));
  CHECK(emb.real_roots[0].second > Rat(125, 100));
  for (long D = 1; D <= 30; ++D) {
    CHECK(create_field(ints({D, 0, 1}))->signature() == std::pair{0, 1});
    if (!is_square(Int(D))) CHECK(create_field(ints({-D, 0, 1}))->signature() == std::pair{2, 0});
  }
}

TEST_CASE("element arithmetic examples") {
  auto Qi = create_field(ints({1, 0, 1}));
  auto a = quad(Qi, 1, 1), b = quad(Qi, 1, -1);
  CHECK(a * b == Qi->from_int(2));
  CHECK(a.norm() == 2);
  CHECK(a.inverse() == quad(Qi, Rat(1, 2), Rat(-1, 2)));
  auto Q2 = create_field(ints({-2, 0, 1}));
  CHECK(quad(Q2, 1, 1).minimal_poly() == QPoly::from_ints(ints({-1, -2, 1})));
  CHECK(Q2->from_int(3).minimal_poly() == QPoly::from_ints(ints({-3, 1})));
  CHECK_THROWS_AS(Qi->zero().inverse(), Error);
}

TEST_CASE("is_integral") {
  auto Qi = create_field(ints({1, 0, 1}));
  CHECK(Qi->is_integral(quad(Qi, 1, 1)));
  CHECK_FALSE(Qi->is_integral(Qi->from_rat(Rat(1, 2))));
  auto Q5 = create_field(ints({-5, 0, 1}));
  CHECK(Q5->is_integral(quad(Q5, Rat(1, 2), Rat(1, 2))));
  CHECK_FALSE(Q5->is_integral(quad(Q5, Rat(1, 2), 0)));
}

TEST_CASE("element arithmetic properties") {
  testsupport::Sampler rng(21);
  std::vector<FieldPtr> fields{create_field(ints({1, 0, 1})), create_field(ints({-5, 0, 1})),
                               create_field(ints({-1, 3, 1})), create_field(ints({-2, 0, 0, 1}), cube_root_two_sheet())};
  for (const auto& K : fields) {
    for (int t = 0; t < 30; ++t) {
      auto a = rng.element(K), b = rng.element(K);
      CHECK((a * b).norm() == a.norm() * b.norm());
      CHECK((a + b).trace() == a.trace() + b.trace());
      if (!a.is_zero()) CHECK(a.inverse() * a == K->one());
      auto mp = a.minimal_poly();
      CHECK(static_cast<int>(K->degree()) % mp.degree() == 0);
      // Evaluate the minimal polynomial at a.
      auto acc = K->zero();
      for (size_t i = mp.coeffs().size(); i-- > 0;) acc = acc * a + K->from_rat(mp.coeffs()[i]);
      CHECK(acc.is_zero());
    }
    CHECK(K->gen().minimal_poly() == K->poly());
  }
}

TEST_CASE("datasheet subfields are verified") {
  Datasheet ds;
  ds.integral_basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  ds.fundamental_units = {{1, 1, 0, -1}};
  ds.torsion = Datasheet::Torsion{8, {0, 1, 0, 0}};
  ds.subfields.push_back({ints({-2, 0, 1}), {0, 1, 0, -1}, nullptr});
  ds.subfields.push_back({ints({1, 0, 1}), {0, 0, 1, 0}, nullptr});
  auto K = create_field(ints({1, 0, 0, 0, 1}), ds);
  CHECK(K->asserted_irreducible());
  CHECK(K->signature() == std::pair{0, 2});
  CHECK(K->discriminant() == 256);
  REQUIRE(K->subfields().size() == 3);
  CHECK(K->subfields()[0].field->degree() == 1);
  auto sqrt2 = embed(K->subfields()[1].field->gen(), K->element(K->subfields()[1].embedding));
  CHECK(sqrt2 * sqrt2 == K->from_int(2));

  Datasheet wrong = ds;
  wrong.subfields[1].embedding = {0, 1, 0, 0};
  CHECK_THROWS_WITH_AS(create_field(ints({1, 0, 0, 0, 1}), wrong), doctest::Contains("DatasheetInvalid"), Error);
}
