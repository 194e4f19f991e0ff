#include <doctest.h>

#include "ulab/error.hpp"
#include "ulab/freewords.hpp"

using namespace ulab;

namespace {
const RingSpec ZZ = RingSpec::integers();
const RingSpec F2 = RingSpec::prime_field(2);
const RingSpec F3 = RingSpec::prime_field(3);
}  // namespace

TEST_CASE("word basics") {
  const Word x1 = Word::generator(2, 1), x2 = Word::generator(2, 2);
  CHECK(commutator(x1, x1).is_identity());
  CHECK((x1 * x2).inverse().to_string() == "x2^-1*x1^-1");
  CHECK(x1.pow(3).to_string() == "x1^3");
  CHECK(x1.pow(3).length() == 3);
  CHECK((x1 * x1.inverse()).is_identity());
  CHECK(Word(2).to_string() == "e");
  CHECK(commutator(x1, x2) == Word::parse("x1^-1*x2^-1*x1*x2"));
  CHECK_THROWS_AS(Word(2, {{3, 1}}), Error);
}

TEST_CASE("word parser") {
  CHECK(Word::parse("x1 x2^-1").to_string() == "x1*x2^-1");
  CHECK(Word::parse("(x1*x2)^2").to_string() == "x1*x2*x1*x2");
  CHECK(Word::parse("[x1,x2,x3]") == commutator(commutator(Word::generator(3, 1), Word::generator(3, 2)), Word::generator(3, 3)));
  CHECK(Word::parse("e").is_identity());
  CHECK(Word::parse("x3").rank() == 3);
  CHECK(Word::parse("x1", 4).rank() == 4);
  CHECK(Word::parse("x1^2*x1^-2").is_identity());
  CHECK_THROWS_AS(Word::parse("x1*"), Error);
  CHECK_THROWS_AS(Word::parse("y1"), Error);
  CHECK_THROWS_AS(Word::parse("[x1,x2"), Error);
  CHECK_THROWS_AS(Word::parse("x3", 2), Error);
}

TEST_CASE("filtration kinds") {
  CHECK(FiltrationKind::parse("zassenhaus", 2) == FiltrationKind::zassenhaus(2));
  CHECK(FiltrationKind::parse("p-central", 3) == FiltrationKind::p_central(3));
  CHECK(FiltrationKind::parse("lower-central", 7) == FiltrationKind::lower_central());
  CHECK_THROWS_AS(FiltrationKind::parse("zassenhaus", 4), Error);
  CHECK_THROWS_AS(FiltrationKind::parse("derived", 2), Error);
  CHECK(coefficient_ring(FiltrationKind::p_central(3), 4) == RingSpec::mod_prime_power(3, 4));
  CHECK(coefficient_ring(FiltrationKind::zassenhaus(3), 4) == F3);
  CHECK(coefficient_ring(FiltrationKind::lower_central(), 4) == ZZ);
}

TEST_CASE("membership examples") {
  const Word c = Word::parse("[x1,x2]");
  CHECK_FALSE(in_filtration(c, FiltrationKind::zassenhaus(2), 3));
  CHECK(in_filtration(c, FiltrationKind::zassenhaus(2), 2));
  for (std::uint32_t p : {2u, 3u}) {
    const Word xp = Word::generator(1, 1, p);
    CHECK(in_filtration(xp, FiltrationKind::zassenhaus(p), p));
    CHECK_FALSE(in_filtration(xp, FiltrationKind::zassenhaus(p), p + 1));
    CHECK(in_filtration(xp, FiltrationKind::p_central(p), 2));
    CHECK_FALSE(in_filtration(xp, FiltrationKind::p_central(p), 3));
  }
  CHECK(in_filtration(c, FiltrationKind::lower_central(), 2));
  CHECK_FALSE(in_filtration(c, FiltrationKind::lower_central(), 3));
  CHECK(in_filtration(Word::parse("[x1,x2,x1]"), FiltrationKind::lower_central(), 3));
  CHECK(in_filtration(Word(2), FiltrationKind::lower_central(), 8));
  CHECK_THROWS_AS(in_filtration(c, FiltrationKind::lower_central(), 9), Error);
}

TEST_CASE("rho_I") {
  CHECK(rho_I(Word::parse("x1"), {1}, F2) == UniMat::parse("1,1;0,1", F2));
  const UniMat r = rho_I(Word::parse("x1*x2"), {1, 2}, F3);
  CHECK(r.at(0, 1) == 1);
  CHECK(r.at(1, 2) == 1);
  CHECK(r.at(0, 2) == 1);
  CHECK(rho_I(Word(2), {1, 2}, F3).is_identity());
  CHECK(rho_I_from_series(Word::parse("x1*x2"), {1, 2}, F3) == r);
}

TEST_CASE("witnesses") {
  const WitnessRep z = witness_rep(Word::parse("[x1,x2]"), FiltrationKind::zassenhaus(2), 3);
  CHECK(z.index == MultiIndex{1, 2});
  CHECK(z.image.at(0, 2) == 1);
  REQUIRE(z.embedded.has_value());
  CHECK(z.embedded->size() == 3);

  const WitnessRep pc = witness_rep(Word::generator(1, 1, 3), FiltrationKind::p_central(3), 3);
  CHECK(pc.index == MultiIndex{1});
  CHECK(pc.ring == RingSpec::mod_prime_power(3, 2));
  CHECK(pc.image.at(0, 1) == 3);
  CHECK_FALSE(pc.embedded.has_value());

  const WitnessRep lc = witness_rep(Word::parse("x1"), FiltrationKind::lower_central(), 2);
  CHECK(lc.index == MultiIndex{1});
  CHECK(lc.ring == ZZ);
  CHECK(lc.image.at(0, 1) == 1);

  CHECK_THROWS_AS(witness_rep(Word::parse("[x1,x2]"), FiltrationKind::zassenhaus(2), 2), Error);
}
