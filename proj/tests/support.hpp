#pragma once

#include <cstdint>
#include <random>

#include "ulab/word.hpp"

namespace ulab::testing {

inline Word random_plain_word(std::mt19937_64& rng, unsigned rank, unsigned max_len) {
  std::uniform_int_distribution<unsigned> gen(1, rank), len(0, max_len), sign(0, 1);
  std::vector<Letter> letters;
  const unsigned l = len(rng);
  for (unsigned i = 0; i < l; ++i) letters.push_back({gen(rng), sign(rng) ? 1 : -1});
  return Word(rank, letters);
}

// Words of length <= max_len, biased toward commutators and p-th powers so
// that deep filtration terms are actually hit.
inline Word random_filtration_word(std::mt19937_64& rng, unsigned rank, unsigned max_len, std::uint32_t p) {
  std::uniform_int_distribution<int> mode(0, 4);
  for (;;) {
    Word w(rank);
    switch (mode(rng)) {
      case 0: w = random_plain_word(rng, rank, max_len); break;
      case 1: w = commutator(random_plain_word(rng, rank, 2), random_plain_word(rng, rank, 2)); break;
      case 2: w = random_plain_word(rng, rank, 2).pow(p); break;
      case 3:
        w = commutator(commutator(random_plain_word(rng, rank, 1), random_plain_word(rng, rank, 1)),
                       random_plain_word(rng, rank, 1));
        break;
      default:
        w = commutator(random_plain_word(rng, rank, 1), random_plain_word(rng, rank, 1)) *
            random_plain_word(rng, rank, 1).pow(p);
        break;
    }
    if (w.length() <= max_len) return w;
  }
}

}  // namespace ulab::testing
