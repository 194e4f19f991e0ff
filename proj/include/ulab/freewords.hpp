#pragma once

// Filtration membership of free-group words via Magnus coefficients, the
// coefficient representations rho_I and witnesses for non-membership.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ulab/config.hpp"
#include "ulab/ncseries.hpp"
#include "ulab/unimat.hpp"
#include "ulab/word.hpp"

namespace ulab {

enum class Series { LowerCentral, Zassenhaus, PCentral };

struct FiltrationKind {
  Series series = Series::LowerCentral;
  std::uint32_t p = 0;  // 0 for LowerCentral

  static FiltrationKind lower_central() { return {Series::LowerCentral, 0}; }
  static FiltrationKind zassenhaus(std::uint32_t p);
  static FiltrationKind p_central(std::uint32_t p);

  // "lower-central", "zassenhaus", "p-central" (p ignored for lower-central).
  static FiltrationKind parse(std::string_view name, std::uint32_t p);
  std::string name() const;
  std::string to_string() const;  // name plus ":p" where relevant

  friend bool operator==(const FiltrationKind&, const FiltrationKind&) = default;
};

// Ring in which the level-n criterion is decided: Z, F_p or Z/p^n.
RingSpec coefficient_ring(const FiltrationKind& kind, unsigned n);

// Whether w lies in S_n, S_(n) or S^(n). Throws TooLarge beyond the limits.
bool in_filtration(const Word& w, const FiltrationKind& kind, unsigned n,
                   const Limits& limits = default_limits());

// rho_I(w) as a product of letter images; size |I| + 1.
UniMat rho_I(const Word& w, const MultiIndex& index, const RingSpec& spec);
// The same matrix read off the Magnus coefficients of w.
UniMat rho_I_from_series(const Word& w, const MultiIndex& index, const RingSpec& spec);

struct WitnessRep {
  MultiIndex index;
  RingSpec ring = RingSpec::integers();
  UniMat image = UniMat::identity(1, RingSpec::integers());
  // image placed in U_n; absent for the p-central case, whose ring depends on |I|.
  std::optional<UniMat> embedded;
};

// First index (by length, then lexicographically) violating the criterion.
// Throws NoWitness when w is in the filtration term.
WitnessRep witness_rep(const Word& w, const FiltrationKind& kind, unsigned n,
                       const Limits& limits = default_limits());

}  // namespace ulab
