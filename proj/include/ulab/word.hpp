#pragma once

// Reduced words in the free group on x1..xd.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ulab {

struct Letter {
  unsigned gen;       // 1-based generator index
  std::int64_t exp;   // nonzero

  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(unsigned rank) : rank_(rank) {}

  // Freely reduces the given letters. Throws BadWord on generator out of range.
  Word(unsigned rank, std::vector<Letter> letters);

  static Word generator(unsigned rank, unsigned gen, std::int64_t exp = 1);

  // Grammar: x1*x2^-1*x1^2, commutators [u,v], parentheses, identity 'e'.
  // Rank 0 means "the largest generator index that occurs".
  static Word parse(std::string_view text, unsigned rank = 0);

  unsigned rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }

  // Sum of |exponents|.
  std::uint64_t length() const;

  Word operator*(const Word& o) const;
  Word inverse() const;
  Word pow(std::int64_t e) const;

  // Same rank, larger ambient rank.
  Word with_rank(unsigned rank) const;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  unsigned rank_ = 0;
  std::vector<Letter> letters_;
};

// [u, v] = u^-1 v^-1 u v
Word commutator(const Word& u, const Word& v);

}  // namespace ulab
