#include <doctest.h>

#include "ulab/error.hpp"
#include "ulab/famgroups.hpp"

using namespace ulab;

namespace {
std::uint64_t exponent_of(const FinGroup& g) {
  std::uint64_t e = 1;
  for (Elem x = 0; x < g.order(); ++x) e = std::max(e, g.element_order(x));
  return e;
}
}  // namespace

TEST_CASE("descriptors round-trip") {
  for (const char* d : {"rigid:p=3,s=1,k=1,m=2,variant=split", "rigid:p=2,s=1,m=2,variant=inv",
                        "mpks:p=3,k=1,s=1", "demushkin:type=2,p=3,s=1,q=3", "demushkin:type=4,p=2,s=1,m=4",
                        "trivial"})
    CHECK(FamilyParams::parse(d).to_string() == d);
  CHECK_THROWS_AS(FamilyParams::parse("rigid:p=4,s=1,m=1,variant=direct"), Error);
  CHECK_THROWS_AS(build_family(FamilyParams::parse("demushkin:type=3,p=3,s=1")), Error);
  CHECK_THROWS_AS(FamilyParams::parse("rigid:p=3,s=1,m=1,variant=sideways"), Error);
}

TEST_CASE("family groups") {
  const Family m27 = build_family(FamilyParams::parse("mpks:p=3,k=1,s=1"));
  CHECK(m27.group.order() == 27);
  CHECK(exponent_of(m27.group) == 9);
  CHECK_FALSE(m27.group.is_abelian());

  const Family z9 = build_family(FamilyParams::parse("rigid:p=3,s=1,m=1,variant=direct"));
  CHECK(z9.group.order() == 81);
  CHECK(z9.group.is_abelian());

  const Family d2 = build_family(FamilyParams::parse("demushkin:type=2,p=3,s=1,q=3"));
  CHECK(d2.group.order() == 9);
  CHECK(d2.group.is_abelian());

  CHECK(parse_group("u3f2").order() == 8);
  CHECK(parse_group("unitri:n=3,p=2,s=2").order() == 64);
  CHECK(parse_group("abelian:2,2").order() == 4);
  CHECK(parse_group("cyclic:9").order() == 9);
  CHECK_THROWS_AS(parse_group("dihedral:4"), Error);
}

TEST_CASE("separating representations in the split rigid case") {
  const Family f = build_family(FamilyParams::parse("rigid:p=3,s=1,k=1,m=1,variant=split"));
  REQUIRE(f.outer_coord.has_value());
  const RingSpec F3 = RingSpec::prime_field(3);
  const UniMat b = UniMat::jordan(4, F3);

  Code sigma(f.group.code(0).size(), 0);
  sigma[*f.outer_coord] = 1;
  const SeparatingRep rs = separating_rep(f, *f.group.find(sigma));
  CHECK(rs.homomorphism);
  CHECK(rs.outer_case);
  CHECK(rs.image_of_u == b);

  Code tau(f.group.code(0).size(), 0);
  tau[f.inner_coords[0]] = 1;
  const SeparatingRep rt = separating_rep(f, *f.group.find(tau));
  CHECK(rt.homomorphism);
  CHECK_FALSE(rt.outer_case);
  CHECK(rt.image_of_u == b);
  const UniMat& a = rt.generator_images.back();
  CHECK(a * b * a.inverse() == b.pow(4));

  tau[f.inner_coords[0]] = 3;
  const SeparatingRep rp = separating_rep(f, *f.group.find(tau));
  CHECK(rp.image_of_u == b.pow(3));
  CHECK_FALSE(rp.image_of_u.is_identity());

  CHECK_THROWS_AS(separating_rep(f, f.group.identity()), Error);
}

TEST_CASE("kernel property examples") {
  CHECK(verify_kernel_property(FamilyParams::parse("rigid:p=3,s=1,k=1,m=1,variant=split"), 4).holds());
  CHECK(verify_kernel_property(FamilyParams::parse("demushkin:type=3,p=2,s=1"), 3).holds());
  CHECK(verify_kernel_property(FamilyParams::parse("trivial"), 5).holds());
  CHECK_THROWS_AS(verify_kernel_property(FamilyParams::parse("rigid:p=3,s=1,k=1,m=1,variant=split"), 3), Error);
}

TEST_CASE("power character representations") {
  const RingSpec F3 = RingSpec::prime_field(3);
  const PowerCharacterRep c0 = power_character_rep(3, 1, 1, CharacterCase::Case0);
  CHECK(c0.group.order() == 9);
  CHECK(c0.homomorphism);
  CHECK(c0.superdiagonal_is_chi);
  CHECK(c0.generator_images[0] == UniMat::jordan(4, F3));
  CHECK(c0.chi[0] == 1);

  const PowerCharacterRep c1 = power_character_rep(3, 1, 1, CharacterCase::Case1);
  CHECK(c1.group.order() == 27);
  CHECK(c1.homomorphism);
  CHECK(c1.superdiagonal_is_chi);
  bool sigma_zero = false;
  for (std::size_t i = 0; i < c1.generator_names.size(); ++i)
    if (c1.generator_names[i] == "sigma") {
      sigma_zero = c1.chi[i] == 0;
      for (std::size_t j = 0; j + 1 < 4; ++j) CHECK(c1.generator_images[i].at(j, j + 1) == 0);
    }
  CHECK(sigma_zero);

  const PowerCharacterRep c2 = power_character_rep(3, 1, 1, CharacterCase::Case2);
  CHECK(c2.generator_images == c0.generator_images);
  CHECK_THROWS_AS(power_character_rep(2, 1, 1, CharacterCase::Case1), Error);
  CHECK(parse_character_case("1") == CharacterCase::Case1);
}

TEST_CASE("minimal embeddings at p = 3") {
  const EmbeddingReport z = minimal_embedding(SmallGroup::CyclicPSquared, 3);
  CHECK(z.size == 4);
  CHECK(z.image_order == 9);
  CHECK(z.injective);
  const EmbeddingReport m = minimal_embedding(SmallGroup::Mp3, 3);
  CHECK(m.group.order() == 27);
  CHECK(m.injective);
  CHECK(m.homomorphism);
  CHECK(m.minimal);
  CHECK(parse_small_group("zp2") == SmallGroup::CyclicPSquared);
}
