#pragma once

// Finite groups given by generators and a multiplication law on codes.
// Elements are numbered 0..|G|-1 in breadth-first order from the
// generators; 0 is the identity.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ulab/config.hpp"
#include "ulab/freewords.hpp"
#include "ulab/residue.hpp"
#include "ulab/word.hpp"

namespace ulab {

using Code = std::vector<std::uint32_t>;
using Elem = std::uint32_t;

class FinGroup {
 public:
  using Law = std::function<Code(const Code&, const Code&)>;
  using Formatter = std::function<std::string(const Code&)>;

  // Breadth-first closure under right multiplication by the generators.
  // Throws TooLarge above limits.max_group_order.
  static FinGroup closure(std::string name, Code identity, std::vector<Code> generators, Law law,
                          Formatter format, const Limits& limits = default_limits());

  const std::string& name() const;
  std::size_t order() const;
  Elem identity() const { return 0; }

  std::size_t num_generators() const;
  Elem generator(std::size_t i) const;
  const std::vector<Elem>& generators() const;

  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::int64_t e) const;
  Elem commutator(Elem a, Elem b) const;  // a^-1 b^-1 a b
  std::uint64_t element_order(Elem a) const;
  bool is_abelian() const;

  const Code& code(Elem a) const;
  std::optional<Elem> find(const Code& c) const;
  std::string format(Elem a) const;

  // Schreier tree: a = parent(a) * generator(via(a)) for a != identity.
  Elem parent(Elem a) const;
  std::size_t via(Elem a) const;

  // Evaluate w with x_i -> images[i-1].
  Elem evaluate(const Word& w, std::span<const Elem> images) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Extends generator images along the Schreier tree and checks
// rho(x g) = rho(x) rho(g) for every element x and generator g; this is
// equivalent to rho being a homomorphism. Returns the images of all
// elements, or nullopt.
template <class T, class Mul, class Eq>
std::optional<std::vector<T>> extend_hom(const FinGroup& g, std::span<const T> images,
                                         const T& identity, Mul mul, Eq eq) {
  std::vector<T> rho;
  rho.reserve(g.order());
  rho.push_back(identity);
  for (Elem x = 1; x < g.order(); ++x) rho.push_back(mul(rho[g.parent(x)], images[g.via(x)]));
  for (Elem x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < g.num_generators(); ++i)
      if (!eq(rho[g.mul(x, g.generator(i))], mul(rho[x], images[i]))) return std::nullopt;
  return rho;
}

// ---- standard groups ----

FinGroup trivial_group();
FinGroup cyclic_group(std::uint32_t n, const Limits& limits = default_limits());
FinGroup abelian_group(std::span<const std::uint32_t> orders, const Limits& limits = default_limits());
// U_n(spec) generated by 1 + e_{i,i+1}; elements formatted as matrices.
FinGroup unitriangular_group(std::size_t n, const RingSpec& spec,
                             const Limits& limits = default_limits());

// ---- subgroups ----

struct Subgroup {
  std::vector<bool> member;
  std::vector<Elem> elements;  // ascending
  std::vector<Elem> generators;

  std::size_t size() const { return elements.size(); }
  bool contains(Elem x) const { return member[x]; }
  bool is_trivial() const { return elements.size() == 1; }
  bool subset_of(const Subgroup& o) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.member == b.member; }
};

Subgroup whole_group(const FinGroup& g);
Subgroup trivial_subgroup(const FinGroup& g);
Subgroup subgroup_closure(const FinGroup& g, std::span<const Elem> gens);
Subgroup normal_closure(const FinGroup& g, std::span<const Elem> gens);
bool is_normal(const FinGroup& g, const Subgroup& s);
// Greedy generating set drawn from the elements in ascending order.
std::vector<Elem> small_generating_set(const FinGroup& g, const Subgroup& s);

// ---- filtration series ----

struct SeriesTable {
  FiltrationKind kind;
  std::vector<Subgroup> levels;  // levels[0] is level 1
  bool reached_trivial = false;
  bool stabilized = false;  // lower central / p-central only

  // Level n >= 1; beyond the stored levels the trivial group or the stable
  // term is returned. Throws BadParams when that is not determined.
  const Subgroup& level(unsigned n) const;
};

SeriesTable series(const FinGroup& g, const FiltrationKind& kind, unsigned max_levels = 64);

// ---- homomorphisms ----

struct Presentation {
  unsigned rank = 0;
  std::vector<Word> relators;

  // "rank N" then one relator per line; blank lines and '#' comments skipped.
  static Presentation parse(std::string_view text);
  std::string to_string() const;
};

// Calls visit(images) for every homomorphism; stop early by returning false.
// Returns the number of homomorphisms visited. Throws TooLarge when the
// backtracking exceeds limits.max_hom_nodes.
std::uint64_t for_each_hom(const Presentation& p, const FinGroup& h,
                           const std::function<bool(std::span<const Elem>)>& visit,
                           const Limits& limits = default_limits());

std::vector<std::vector<Elem>> enumerate_homs(const Presentation& p, const FinGroup& h,
                                              const Limits& limits = default_limits());

// Homomorphisms between finite groups, given by generator images.
std::uint64_t for_each_group_hom(const FinGroup& g, const FinGroup& h,
                                 const std::function<bool(std::span<const Elem>)>& visit,
                                 const Limits& limits = default_limits());

// Intersection of the kernels of all homomorphisms g -> h.
Subgroup kernel_intersection(const FinGroup& g, const FinGroup& h,
                             const Limits& limits = default_limits());

// ---- filtration comparison ----

struct FiltrationReport {
  std::uint32_t p = 0;
  unsigned max_level = 0;
  std::vector<bool> pcentral_in_zassenhaus;  // index i-1: G^(i) in G_(i)
  bool zassenhaus_p1_in_pcentral3 = false;   // G_(p+1) in G^(3)
  std::optional<bool> equal_at_3;            // p = 2: G^(3) = G_(3)
  // G_(p+1) in G_<p+1> in G^(3), with G_<p+1> from homs into U_{p+1}(F_p);
  // absent when the hom search does not fit the budget.
  std::optional<bool> zassenhaus_in_kernel;
  std::optional<bool> kernel_in_pcentral3;
  std::size_t kernel_size = 0;

  bool all_hold() const;
};

FiltrationReport compare_filtrations(const FinGroup& g, std::uint32_t p, unsigned max_level,
                                     const Limits& limits = default_limits());

}  // namespace ulab
