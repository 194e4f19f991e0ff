#include <doctest.h>

#include "ulab/error.hpp"
#include "ulab/ncseries.hpp"

using namespace ulab;

namespace {
const RingSpec F2 = RingSpec::prime_field(2);
const RingSpec F3 = RingSpec::prime_field(3);
const RingSpec ZZ = RingSpec::integers();
}  // namespace

TEST_CASE("multi-index order and parsing") {
  CHECK(MultiIndex{2} < MultiIndex{1, 1});
  CHECK(MultiIndex{1, 2} < MultiIndex{2, 1});
  CHECK(MultiIndex::parse("(1,2)") == MultiIndex{1, 2});
  CHECK(MultiIndex::parse("()").empty());
  CHECK(MultiIndex{3, 1}.to_string() == "(3,1)");
  CHECK(all_indices(2, 2).size() == 4);
  CHECK(all_indices(3, 0).size() == 1);
}

TEST_CASE("product of two generators") {
  const auto a = NCSeries::generator(2, 3, ZZ, 1);
  const auto b = NCSeries::generator(2, 3, ZZ, 2);
  const auto ab = nc_mul(a, b);
  CHECK(ab.coeff({1}).value() == 1);
  CHECK(ab.coeff({2}).value() == 1);
  CHECK(ab.coeff({1, 2}).value() == 1);
  CHECK(ab.coeff({2, 1}).is_zero());
  CHECK(ab.terms().size() == 4);
  CHECK(nc_mul(ab, NCSeries::one(2, 3, ZZ)) == ab);
}

TEST_CASE("inverse of 1 + X1") {
  const auto x = NCSeries::generator(2, 3, ZZ, 1);
  const auto inv = nc_invert(x);
  for (unsigned k = 1; k <= 3; ++k)
    CHECK(inv.coeff(MultiIndex(std::vector<std::uint16_t>(k, 1))).value() == (k % 2 ? -1 : 1));
  CHECK(nc_mul(x, inv) == NCSeries::one(2, 3, ZZ));
  CHECK(nc_invert(NCSeries::one(1, 3, ZZ)) == NCSeries::one(1, 3, ZZ));

  const auto y = nc_invert(NCSeries::generator(1, 3, F2, 1));
  for (unsigned k = 0; k <= 3; ++k) CHECK(y.coeff(MultiIndex(std::vector<std::uint16_t>(k, 1))).value() == 1);

  NCSeries two_plus_x(1, 3, F3);
  two_plus_x.set({}, 2);
  two_plus_x.set({1}, 1);
  const auto z = nc_invert(two_plus_x);
  CHECK(z.constant().value() == 2);
  CHECK(z.coeff({1}).value() == 2);
  CHECK(nc_mul(two_plus_x, z) == NCSeries::one(1, 3, F3));

  NCSeries x_only(1, 3, F3);
  x_only.set({1}, 1);
  CHECK_THROWS_AS(nc_invert(x_only), Error);
}

TEST_CASE("magnus expansion") {
  CHECK(magnus(Word(2), 2, ZZ, 4) == NCSeries::one(2, 4, ZZ));
  const auto m = magnus(Word::parse("x1*x2"), 2, ZZ, 3);
  CHECK(m.to_string() == "1 + 1*X1 + 1*X2 + 1*X1X2");
  const auto inv = magnus(Word::parse("x1^-1"), 1, ZZ, 3);
  CHECK(nc_mul(inv, magnus(Word::parse("x1"), 1, ZZ, 3)) == NCSeries::one(1, 3, ZZ));
}

TEST_CASE("epsilon coefficients") {
  CHECK(epsilon(Word::parse("x1"), {1}, F2).value() == 1);
  for (std::uint32_t p : {2u, 3u}) {
    const Word xp = Word::generator(1, 1, p);
    CHECK(epsilon(xp, MultiIndex(std::vector<std::uint16_t>(p, 1)), RingSpec::prime_field(p)).value() == 1);
    CHECK(epsilon(xp, {1}, ZZ).value() == p);
    CHECK(epsilon(xp, {1}, RingSpec::prime_field(p)).is_zero());
  }
  // [x1,x2] = 1 + X1X2 - X2X1 + higher terms
  const Word c = Word::parse("[x1,x2]");
  CHECK(epsilon(c, {1, 2}, ZZ).value() == 1);
  CHECK(epsilon(c, {2, 1}, ZZ).value() == -1);
  CHECK(epsilon(c, {1}, ZZ).is_zero());
  CHECK(epsilon(Word::parse("x1"), {}, ZZ).value() == 1);
}

TEST_CASE("nc_pow") {
  const auto x = NCSeries::generator(1, 4, ZZ, 1);
  const auto x3 = nc_pow(x, 3);
  CHECK(x3.coeff({1}).value() == 3);
  CHECK(x3.coeff({1, 1}).value() == 3);
  CHECK(x3.coeff({1, 1, 1}).value() == 1);
  CHECK(x3.coeff({1, 1, 1, 1}).is_zero());
  CHECK(nc_pow(x, 0) == NCSeries::one(1, 4, ZZ));
}
