#pragma once

// Massey products in H^2(G, F_p) for finite G: cochains, defining systems,
// and the search for homomorphisms G -> bar U_{n+1}(F_p) with prescribed
// superdiagonal.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ulab/config.hpp"
#include "ulab/fingrp.hpp"
#include "ulab/unimat.hpp"

namespace ulab {

using Cochain1 = std::vector<std::uint32_t>;  // indexed by element
using Cochain2 = std::vector<std::uint32_t>;  // (g, h) at g * |G| + h

// Values of a homomorphism G -> F_p on every element.
struct Character {
  std::vector<std::uint32_t> values;
};

// Extends values on the generators; BadParams if they define no homomorphism.
Character character_from_generators(const FinGroup& g, std::span<const std::uint32_t> on_generators,
                                    std::uint32_t p);

// (delta b)(g, h) = b(g) + b(h) - b(gh)
Cochain2 coboundary_1(const FinGroup& g, const Cochain1& b, std::uint32_t p);
// (a u b)(g, h) = a(g) b(h)
Cochain2 cup(const FinGroup& g, const Cochain1& a, const Cochain1& b, std::uint32_t p);
// Some b with delta b = c, by Gaussian elimination; TooLarge when |G|^3
// exceeds limits.max_search_nodes.
std::optional<Cochain1> is_2_coboundary(const FinGroup& g, const Cochain2& c, std::uint32_t p,
                                        const Limits& limits = default_limits());

// Cochains a_ij for 1 <= i < j <= n+1 without the corner (1, n+1).
struct DefiningSystem {
  unsigned n = 0;
  std::map<std::pair<unsigned, unsigned>, Cochain1> a;

  const Cochain1& at(unsigned i, unsigned j) const { return a.at({i, j}); }
};

bool validate_defining_system(const FinGroup& g, const DefiningSystem& m,
                              const std::vector<Character>& alphas, std::uint32_t p);

struct MasseyValue {
  Cochain2 value;
  bool coboundary = false;
};

MasseyValue massey_value(const FinGroup& g, const DefiningSystem& m, std::uint32_t p,
                         const Limits& limits = default_limits());

enum class MasseyStatus { Undefined, DefinedNotVanishing, Vanishing };
std::string to_string(MasseyStatus s);

struct MasseyVerdict {
  MasseyStatus status = MasseyStatus::Undefined;
  unsigned n = 0;
  std::uint32_t p = 0;
  std::uint64_t bar_homs = 0;   // homomorphisms into bar U_{n+1} found
  std::uint64_t liftable = 0;   // of which lift to U_{n+1}
  std::uint64_t nodes = 0;      // candidate assignments checked
  // Generator images of the first bar homomorphism found (corner held at 0)
  // and, when the product vanishes, of the first lift.
  std::optional<std::vector<UniMat>> witness;
  std::optional<std::vector<UniMat>> lift;
};

// n = alphas.size() >= 2. Searches the entries level by level (distance from
// the diagonal), generators in order, rows top to bottom, values 0..p-1.
MasseyVerdict dwyer_search(const FinGroup& g, const std::vector<Character>& alphas, std::uint32_t p,
                           const Limits& limits = default_limits());

struct CrossCheck {
  MasseyVerdict dwyer;
  MasseyStatus cochain_status = MasseyStatus::Undefined;
  std::uint64_t defining_systems = 0;
  bool correspondence = true;  // every defining system gives a bar homomorphism
  bool agree() const {
    return correspondence && dwyer.status == cochain_status && dwyer.bar_homs == defining_systems;
  }
};

// Exhaustive defining-system enumeration with brute-force coboundary tests,
// compared against dwyer_search.
CrossCheck cross_check(const FinGroup& g, const std::vector<Character>& alphas, std::uint32_t p,
                       const Limits& limits = default_limits());

}  // namespace ulab
