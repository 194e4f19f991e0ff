#pragma once

// Parametric finite groups: rigid quotients (Z/p^{s+1})^m x| Z/p^{s+1},
// the metacyclic groups M_{p,k,s} and rank-2 Demushkin quotients, with
// separating representations into U_n(F_p).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ulab/config.hpp"
#include "ulab/fingrp.hpp"
#include "ulab/unimat.hpp"

namespace ulab {

enum class FamilyKind { Trivial, Rigid, Mpks, Demushkin };
enum class RigidVariant { Split, Direct, NegSplit, Inv };

struct FamilyParams {
  FamilyKind kind = FamilyKind::Trivial;
  std::uint32_t p = 2;
  unsigned s = 1;
  unsigned k = 0;
  unsigned m = 1;                          // rigid inner rank
  RigidVariant variant = RigidVariant::Direct;
  unsigned type = 1;                       // Demushkin relation type
  std::uint64_t q = 0;                     // Demushkin q (type 2) or m (type 4)

  // "rigid:p=3,s=1,k=1,m=2,variant=split", "mpks:p=3,k=1,s=1",
  // "demushkin:type=2,p=3,s=1,q=3", "trivial".
  static FamilyParams parse(std::string_view text);
  std::string to_string() const;
};

struct Family {
  FamilyParams params;
  FinGroup group;
  std::vector<std::string> generator_names;
  // Coordinates of an element code: inner coordinates and the outer one.
  std::vector<std::size_t> inner_coords;
  std::optional<std::size_t> outer_coord;
  unsigned inner_log = 0;  // inner factors are Z/p^inner_log
};

// Validates the parameters (BadParams) and builds the group.
Family build_family(const FamilyParams& params, const Limits& limits = default_limits());

// Any supported group descriptor: trivial, cyclic:N, abelian:a,b,...,
// unitri:n=3,p=2,s=1 (over Z/p^s), u<n>f<p>, and the family descriptors.
FinGroup parse_group(std::string_view text, const Limits& limits = default_limits());

struct SeparatingRep {
  std::size_t size = 0;               // n = p^{inner_log - 1} + 1
  std::vector<UniMat> generator_images;
  UniMat image_of_u = UniMat::identity(1, RingSpec::prime_field(2));
  bool outer_case = false;            // sigma -> B, inner factor -> 1
  std::optional<std::size_t> inner_generator;  // the tau sent to B otherwise
  bool homomorphism = false;          // checked on every element
};

// Rigid and Demushkin families only. Throws NoWitness for u = 1.
SeparatingRep separating_rep(const Family& family, Elem u);

struct KernelReport {
  std::string quotient;       // descriptor of the quotient actually checked
  std::size_t group_order = 0;
  unsigned n = 0;
  std::size_t target_size = 0;  // separating reps land in U_target, embedded in U_n
  bool zassenhaus_trivial = false;
  std::size_t nontrivial = 0;
  std::size_t separated = 0;
  bool reps_are_homs = false;
  bool holds() const { return zassenhaus_trivial && reps_are_homs && separated == nontrivial; }
};

// Rigid: needs p^s < n <= p^{s+1}. Demushkin: the quotient at level n is
// built with the least s such that n <= p^s (the descriptor's s is ignored).
KernelReport verify_kernel_property(const FamilyParams& params, unsigned n,
                                    const Limits& limits = default_limits());

enum class CharacterCase { Case0, Case1, Case2 };
CharacterCase parse_character_case(std::string_view text);
std::string to_string(CharacterCase c);

struct PowerCharacterRep {
  FinGroup group;
  std::vector<std::string> generator_names;
  std::vector<UniMat> generator_images;
  std::vector<std::uint32_t> chi;  // character values on the generators
  bool homomorphism = false;
  bool superdiagonal_is_chi = false;  // on every element
};

// Case0: Z/p^{s+1}, sigma -> B. Case1: M_{p,k,s}, tau -> B, sigma -> A
// (needs 1 <= k <= s, and k >= 2 when p = 2). Case2: cyclic of order
// p^{s+1}, sigma -> B.
PowerCharacterRep power_character_rep(std::uint32_t p, unsigned s, unsigned k, CharacterCase c,
                                      const Limits& limits = default_limits());

enum class SmallGroup { CyclicPSquared, Mp3 };
SmallGroup parse_small_group(std::string_view text);
std::string to_string(SmallGroup g);

struct EmbeddingReport {
  FinGroup group;
  std::size_t size = 0;  // p + 1
  std::vector<UniMat> generator_images;
  bool homomorphism = false;
  bool injective = false;
  std::size_t image_order = 0;
  ExponentScan below;    // U_p(F_p)
  bool minimal = false;  // every element of U_p(F_p) has order dividing p
};

EmbeddingReport minimal_embedding(SmallGroup which, std::uint32_t p,
                                  const Limits& limits = default_limits());

}  // namespace ulab
