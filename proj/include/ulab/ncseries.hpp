#pragma once

// Degree-truncated power series in non-commuting variables X1..Xd and the
// Magnus expansion x_i -> 1 + X_i.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ulab/residue.hpp"
#include "ulab/word.hpp"

namespace ulab {

// Sequence of 1-based variable indices; X_I = X_{i1} ... X_{ik}.
struct MultiIndex {
  std::vector<std::uint16_t> entries;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::uint16_t> e) : entries(e) {}
  explicit MultiIndex(std::vector<std::uint16_t> e) : entries(std::move(e)) {}

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  std::uint16_t operator[](std::size_t i) const { return entries[i]; }

  // entries[from, to)
  MultiIndex slice(std::size_t from, std::size_t to) const;
  MultiIndex concat(const MultiIndex& o) const;

  // "(1,2)"; "()" for the empty index.
  std::string to_string() const;
  static MultiIndex parse(std::string_view text);

  // Degree first, then lexicographic: the order of the series dump.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// All indices of height d with length exactly k, in lexicographic order.
std::vector<MultiIndex> all_indices(unsigned d, unsigned k);

class NCSeries {
 public:
  NCSeries(unsigned rank, unsigned cutoff, const RingSpec& spec);

  static NCSeries one(unsigned rank, unsigned cutoff, const RingSpec& spec);
  // 1 + X_gen
  static NCSeries generator(unsigned rank, unsigned cutoff, const RingSpec& spec, unsigned gen);

  unsigned rank() const { return rank_; }
  unsigned cutoff() const { return cutoff_; }
  const RingSpec& spec() const { return spec_; }

  // Nonzero coefficients only, in degree-lexicographic order.
  const std::map<MultiIndex, Int>& terms() const { return terms_; }

  RingElem coeff(const MultiIndex& index) const;
  RingElem constant() const { return coeff(MultiIndex{}); }

  // Stores the canonical residue; zero erases. Indices longer than the cutoff
  // are dropped.
  void set(const MultiIndex& index, const Int& value);
  void add(const MultiIndex& index, const Int& value);

  // "1 + 1*X1 + 2*X1X2"
  std::string to_string() const;

  friend bool operator==(const NCSeries&, const NCSeries&) = default;

 private:
  unsigned rank_;
  unsigned cutoff_;
  RingSpec spec_;
  std::map<MultiIndex, Int> terms_;
};

NCSeries nc_mul(const NCSeries& a, const NCSeries& b);

// Throws NotAUnit when the constant term is not invertible.
NCSeries nc_invert(const NCSeries& a);

// Repeated squaring; e >= 0.
NCSeries nc_pow(const NCSeries& a, std::uint64_t e);

NCSeries magnus(const Word& w, unsigned rank, const RingSpec& spec, unsigned cutoff);

// Coefficient of X_I in magnus(w), computed with cutoff |I|.
RingElem epsilon(const Word& w, const MultiIndex& index, const RingSpec& spec);

}  // namespace ulab
