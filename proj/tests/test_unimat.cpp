#include <doctest.h>

#include "ulab/error.hpp"
#include "ulab/unimat.hpp"

using namespace ulab;

namespace {
const RingSpec F2 = RingSpec::prime_field(2);
const RingSpec F3 = RingSpec::prime_field(3);
}  // namespace

TEST_CASE("matrix parsing and products") {
  const UniMat a = UniMat::parse("1,2;0,1", F3);
  CHECK(a.at(0, 1) == 2);
  CHECK((a * a).at(0, 1) == 1);
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.pow(-1) == a.inverse());
  CHECK(a.to_string() == "1,2;0,1");
  CHECK_THROWS_AS(UniMat::parse("1,0;1,1", F3), Error);
  CHECK_THROWS_AS(UniMat::parse("2,0;0,1", F3), Error);
  CHECK_THROWS_AS(UniMat::parse("1,0;0", F3), Error);
}

TEST_CASE("orders of unipotent matrices") {
  CHECK(order(UniMat::jordan(3, F2)) == 4);
  CHECK(order(UniMat::identity(3, F2)) == 1);
  CHECK(order(UniMat::jordan(4, F3)) == 9);
  CHECK(order(UniMat::jordan(2, RingSpec::mod_prime_power(2, 3))) == 8);
  CHECK_THROWS_AS(order(UniMat::jordan(2, RingSpec::integers())), Error);
  CHECK(order(UniMat::identity(2, RingSpec::integers())) == 1);
}

TEST_CASE("codes and embeddings") {
  const UniMat b = UniMat::jordan(3, F3);
  CHECK(from_code(to_code(b), 3, F3) == b);
  CHECK(embed_top_left(UniMat::identity(2, F3), 4).is_identity());
  const UniMat e = embed_top_left(b, 5);
  CHECK(e.size() == 5);
  CHECK(e.at(1, 2) == 1);
  CHECK(e.at(3, 4) == 0);
}

TEST_CASE("corner quotient") {
  const UniMat c = UniMat::elementary(4, F3, 0, 3);
  CHECK(bar_project(c).is_identity());
  CHECK(bar_project(UniMat::jordan(4, F3)).to_string() == "1,1,0,*;0,1,1,0;0,0,1,1;0,0,0,1");
  CHECK(bar_project(c * UniMat::jordan(4, F3)) == bar_project(UniMat::jordan(4, F3)));
}

TEST_CASE("truncated polynomial algebra") {
  CHECK_FALSE(kx_is_unit(KXElem::x(4, F3)));
  CHECK(kx_is_unit(KXElem::one(4, F3) + KXElem::x(4, F3)));
  const std::int64_t c[] = {2, 0, 1};
  const KXElem f = kx_eval(c, 4, F3);
  CHECK(kx_is_unit(f));
  CHECK(f * f.inverse() == KXElem::one(4, F3));
  CHECK(KXElem::x(3, F2).pow(3) == KXElem({0, 0, 0}, 3, F2));
  CHECK_THROWS_AS(KXElem::x(3, F2).inverse(), Error);
  CHECK(KXElem::x(4, F3).to_matrix() == shift_matrix(4, F3));
}

TEST_CASE("centralizer of the shift") {
  CHECK(centralizer_of_X(3, F2).size() == 3);
  const auto basis = centralizer_of_X(2, F3);
  REQUIRE(basis.size() == 2);
  const SquareMatrix x = shift_matrix(2, F3);
  for (const auto& m : basis) CHECK(m * x == x * m);
}

TEST_CASE("conjugators") {
  CHECK(conjugator_from_automorphism(KXElem::one(4, F3)).is_identity());

  const UniMat a = solve_conjugation(ConjugationTarget::parse("power:1"), 3, 1);
  const UniMat b = UniMat::jordan(4, F3);
  CHECK(a.size() == 4);
  CHECK(a * b * a.inverse() == b.pow(4));
  CHECK(order(a) == 3);

  CHECK(solve_conjugation(ConjugationTarget::parse("power:2"), 2, 1).is_identity());

  const UniMat inv = solve_conjugation(ConjugationTarget::parse("inverse"), 2, 2);
  const UniMat b5 = UniMat::jordan(5, F2);
  CHECK(inv.size() == 5);
  CHECK(inv * b5 * inv.inverse() == b5.inverse());

  const UniMat neg = solve_conjugation(ConjugationTarget::parse("negpower:1"), 2, 2);
  CHECK(neg * b5 * neg.inverse() == b5.pow(-3));

  CHECK_THROWS_AS(solve_conjugation(ConjugationTarget::parse("inverse"), 3, 1), Error);
  CHECK_THROWS_AS(conjugator_for_power(3, 3, 1), Error);
  CHECK_THROWS_AS(ConjugationTarget::parse("power"), Error);
  CHECK(ConjugationTarget::parse("negpower:2").exponent(2) == -5);
  CHECK(ConjugationTarget::parse("power:2").exponent(3) == 10);
  CHECK(ConjugationTarget::parse("inverse").exponent(2) == -1);
}

TEST_CASE("exponent scan") {
  const ExponentScan s = exponent_scan(3, 3, 1000);
  CHECK(s.group_order == 27);
  CHECK(s.exponent == 3);
  CHECK(exponent_scan(3, 2, 1000).exponent == 4);
  CHECK_THROWS_AS(exponent_scan(4, 3, 100), Error);
}
