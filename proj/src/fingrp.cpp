#include "ulab/fingrp.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "ulab/error.hpp"

namespace ulab {
namespace {

struct CodeHash {
  std::size_t operator()(const Code& c) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t v : c) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

struct FinGroup::Impl {
  std::string name;
  Law law;
  Formatter fmt;
  std::vector<Code> codes;
  std::unordered_map<Code, Elem, CodeHash> index;
  std::vector<Elem> gens;
  std::vector<Elem> parent;
  std::vector<std::uint32_t> via;
  std::vector<Elem> table;  // row-major Cayley table, empty for large groups
  std::vector<Elem> inverse;

  Elem mul(Elem a, Elem b) const {
    if (!table.empty()) return table[static_cast<std::size_t>(a) * codes.size() + b];
    return index.at(law(codes[a], codes[b]));
  }
};

FinGroup FinGroup::closure(std::string name, Code identity, std::vector<Code> generators, Law law,
                           Formatter format, const Limits& limits) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->law = std::move(law);
  impl->fmt = std::move(format);
  impl->codes.push_back(identity);
  impl->index.emplace(identity, 0);
  impl->parent.push_back(0);
  impl->via.push_back(0);

  const std::size_t ng = generators.size();
  std::vector<Elem> right;  // right[x * ng + i] = x * g_i
  for (std::size_t x = 0; x < impl->codes.size(); ++x) {
    for (std::size_t i = 0; i < ng; ++i) {
      Code y = impl->law(impl->codes[x], generators[i]);
      auto [it, inserted] = impl->index.emplace(y, static_cast<Elem>(impl->codes.size()));
      if (inserted) {
        if (impl->codes.size() >= limits.max_group_order)
          throw Error(ErrorKind::TooLarge, "closure of " + impl->name + " exceeds max_group_order " +
                                               std::to_string(limits.max_group_order));
        impl->codes.push_back(std::move(y));
        impl->parent.push_back(static_cast<Elem>(x));
        impl->via.push_back(static_cast<std::uint32_t>(i));
      }
      right.push_back(it->second);
    }
  }
  for (const Code& c : generators) impl->gens.push_back(impl->index.at(c));

  const std::size_t n = impl->codes.size();
  if (n <= limits.cayley_table_max) {
    impl->table.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      impl->table[a * n] = static_cast<Elem>(a);
      for (std::size_t b = 1; b < n; ++b)
        impl->table[a * n + b] = right[impl->table[a * n + impl->parent[b]] * ng + impl->via[b]];
    }
    impl->inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (impl->table[a * n + b] == 0) {
          impl->inverse[a] = static_cast<Elem>(b);
          break;
        }
  } else {
    impl->inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      Elem prev = 0, cur = static_cast<Elem>(a);
      while (cur != 0) {
        prev = cur;
        cur = impl->mul(cur, static_cast<Elem>(a));
      }
      impl->inverse[a] = prev;
    }
  }
  FinGroup g;
  g.impl_ = std::move(impl);
  return g;
}

const std::string& FinGroup::name() const { return impl_->name; }
std::size_t FinGroup::order() const { return impl_->codes.size(); }
std::size_t FinGroup::num_generators() const { return impl_->gens.size(); }
Elem FinGroup::generator(std::size_t i) const { return impl_->gens[i]; }
const std::vector<Elem>& FinGroup::generators() const { return impl_->gens; }
Elem FinGroup::mul(Elem a, Elem b) const { return impl_->mul(a, b); }
Elem FinGroup::inv(Elem a) const { return impl_->inverse[a]; }

Elem FinGroup::pow(Elem a, std::int64_t e) const {
  Elem base = e < 0 ? inv(a) : a;
  std::uint64_t k = e < 0 ? -static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(e);
  Elem result = 0;
  while (k) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

Elem FinGroup::commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

std::uint64_t FinGroup::element_order(Elem a) const {
  std::uint64_t k = 1;
  for (Elem cur = a; cur != 0; cur = mul(cur, a)) ++k;
  return k;
}

bool FinGroup::is_abelian() const {
  for (Elem a : impl_->gens)
    for (Elem b : impl_->gens)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

const Code& FinGroup::code(Elem a) const { return impl_->codes[a]; }

std::optional<Elem> FinGroup::find(const Code& c) const {
  auto it = impl_->index.find(c);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

std::string FinGroup::format(Elem a) const {
  if (impl_->fmt) return impl_->fmt(impl_->codes[a]);
  std::string s = "(";
  for (std::size_t i = 0; i < impl_->codes[a].size(); ++i) {
    if (i) s += ',';
    s += std::to_string(impl_->codes[a][i]);
  }
  return s + ")";
}

Elem FinGroup::parent(Elem a) const { return impl_->parent[a]; }
std::size_t FinGroup::via(Elem a) const { return impl_->via[a]; }

Elem FinGroup::evaluate(const Word& w, std::span<const Elem> images) const {
  Elem result = 0;
  for (const Letter& l : w.letters()) {
    if (l.gen > images.size()) throw Error(ErrorKind::BadWord, "word generator beyond image list");
    result = mul(result, pow(images[l.gen - 1], l.exp));
  }
  return result;
}

// ---- standard groups ----

namespace {
std::string tuple_format(const Code& c) {
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}
}  // namespace

FinGroup trivial_group() {
  return FinGroup::closure("trivial", Code{0}, {}, [](const Code& a, const Code&) { return a; },
                           tuple_format);
}

FinGroup cyclic_group(std::uint32_t n, const Limits& limits) {
  if (n == 0) throw Error(ErrorKind::BadParams, "cyclic group order must be positive");
  return FinGroup::closure(
      "cyclic:" + std::to_string(n), Code{0}, {Code{1 % n}},
      [n](const Code& a, const Code& b) { return Code{static_cast<std::uint32_t>((std::uint64_t{a[0]} + b[0]) % n)}; },
      tuple_format, limits);
}

FinGroup abelian_group(std::span<const std::uint32_t> orders, const Limits& limits) {
  std::vector<std::uint32_t> ord(orders.begin(), orders.end());
  if (ord.empty()) return trivial_group();
  std::string name = "abelian:";
  std::vector<Code> gens;
  for (std::size_t i = 0; i < ord.size(); ++i) {
    if (ord[i] == 0) throw Error(ErrorKind::BadParams, "factor orders must be positive");
    if (i) name += ',';
    name += std::to_string(ord[i]);
    Code g(ord.size(), 0);
    g[i] = 1 % ord[i];
    gens.push_back(std::move(g));
  }
  return FinGroup::closure(
      name, Code(ord.size(), 0), std::move(gens),
      [ord](const Code& a, const Code& b) {
        Code c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
          c[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} + b[i]) % ord[i]);
        return c;
      },
      tuple_format, limits);
}

FinGroup unitriangular_group(std::size_t n, const RingSpec& spec, const Limits& limits) {
  if (!spec.is_finite()) throw Error(ErrorKind::BadParams, "U_n needs a finite ring");
  if (n == 0) throw Error(ErrorKind::BadSize, "n must be positive");
  const std::uint64_t m = spec.modulus();
  Code id(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1 % m;
  std::vector<Code> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Code g = id;
    g[i * n + i + 1] = 1 % m;
    gens.push_back(std::move(g));
  }
  auto law = [n, m](const Code& a, const Code& b) {
    Code c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i; k < n; ++k) {
        const std::uint64_t aik = a[i * n + k];
        if (!aik) continue;
        for (std::size_t j = k; j < n; ++j)
          c[i * n + j] = static_cast<std::uint32_t>((c[i * n + j] + aik * b[k * n + j]) % m);
      }
    return c;
  };
  auto fmt = [n](const Code& c) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += ';';
      for (std::size_t j = 0; j < n; ++j) {
        if (j) s += ',';
        s += std::to_string(c[i * n + j]);
      }
    }
    return s;
  };
  return FinGroup::closure("unitri:n=" + std::to_string(n) + "," + spec.to_string(), id,
                           std::move(gens), law, fmt, limits);
}

// ---- subgroups ----

bool Subgroup::subset_of(const Subgroup& o) const {
  for (Elem x : elements)
    if (!o.contains(x)) return false;
  return true;
}

Subgroup whole_group(const FinGroup& g) {
  Subgroup s;
  s.member.assign(g.order(), true);
  s.elements.resize(g.order());
  for (Elem x = 0; x < g.order(); ++x) s.elements[x] = x;
  for (Elem x : g.generators())
    if (x != 0 && std::find(s.generators.begin(), s.generators.end(), x) == s.generators.end())
      s.generators.push_back(x);
  return s;
}

Subgroup trivial_subgroup(const FinGroup& g) {
  Subgroup s;
  s.member.assign(g.order(), false);
  s.member[0] = true;
  s.elements = {0};
  return s;
}

Subgroup subgroup_closure(const FinGroup& g, std::span<const Elem> gens) {
  Subgroup s = trivial_subgroup(g);
  std::vector<Elem> order_found{0};
  for (Elem x : gens) {
    if (s.member[x]) continue;
    s.generators.push_back(x);
    // Re-close from every current element with the enlarged generator list.
    std::deque<Elem> queue(order_found.begin(), order_found.end());
    while (!queue.empty()) {
      const Elem y = queue.front();
      queue.pop_front();
      for (Elem t : s.generators) {
        const Elem z = g.mul(y, t);
        if (!s.member[z]) {
          s.member[z] = true;
          order_found.push_back(z);
          queue.push_back(z);
        }
      }
    }
  }
  s.elements = std::move(order_found);
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

Subgroup normal_closure(const FinGroup& g, std::span<const Elem> gens) {
  std::vector<Elem> cur(gens.begin(), gens.end());
  for (;;) {
    Subgroup s = subgroup_closure(g, cur);
    std::optional<Elem> missing;
    for (Elem t : s.generators) {
      for (Elem h : g.generators()) {
        const Elem c = g.mul(g.mul(g.inv(h), t), h);
        if (!s.contains(c)) {
          missing = c;
          break;
        }
      }
      if (missing) break;
    }
    if (!missing) return s;
    cur = s.generators;
    cur.push_back(*missing);
  }
}

bool is_normal(const FinGroup& g, const Subgroup& s) {
  for (Elem t : s.generators)
    for (Elem h : g.generators())
      if (!s.contains(g.mul(g.mul(g.inv(h), t), h))) return false;
  return true;
}

std::vector<Elem> small_generating_set(const FinGroup& g, const Subgroup& s) {
  return subgroup_closure(g, s.elements).generators;
}

// ---- series ----

const Subgroup& SeriesTable::level(unsigned n) const {
  if (n == 0) throw Error(ErrorKind::BadParams, "levels start at 1");
  if (n <= levels.size()) return levels[n - 1];
  if (reached_trivial || stabilized) return levels.back();
  throw Error(ErrorKind::BadParams, "level " + std::to_string(n) + " was not computed");
}

namespace {

void add_commutators(const FinGroup& g, const Subgroup& a, const Subgroup& b, std::vector<Elem>& out) {
  for (Elem x : a.generators)
    for (Elem y : b.generators) out.push_back(g.commutator(x, y));
}

void add_powers(const FinGroup& g, const Subgroup& a, std::uint32_t p, std::vector<Elem>& out) {
  for (Elem x : a.elements) out.push_back(g.pow(x, p));
}

}  // namespace

SeriesTable series(const FinGroup& g, const FiltrationKind& kind, unsigned max_levels) {
  SeriesTable t;
  t.kind = kind;
  t.levels.push_back(whole_group(g));
  const Subgroup whole = t.levels.front();
  while (t.levels.size() < max_levels) {
    if (t.levels.back().is_trivial()) break;
    const unsigned n = static_cast<unsigned>(t.levels.size()) + 1;
    std::vector<Elem> gens;
    const Subgroup& prev = t.levels.back();
    switch (kind.series) {
      case Series::LowerCentral:
        add_commutators(g, prev, whole, gens);
        break;
      case Series::PCentral:
        add_powers(g, prev, kind.p, gens);
        add_commutators(g, prev, whole, gens);
        break;
      case Series::Zassenhaus:
        add_powers(g, t.levels[(n + kind.p - 1) / kind.p - 1], kind.p, gens);
        for (unsigned i = 1; i <= n / 2; ++i) add_commutators(g, t.levels[i - 1], t.levels[n - i - 1], gens);
        break;
    }
    Subgroup next = normal_closure(g, gens);
    if (!is_normal(g, next)) throw std::logic_error("series term is not normal");
    if (!next.subset_of(prev)) throw std::logic_error("series is not descending");
    if (kind.series != Series::Zassenhaus && next == prev) {
      t.stabilized = true;
      break;
    }
    t.levels.push_back(std::move(next));
  }
  t.reached_trivial = t.levels.back().is_trivial();
  return t;
}

// ---- presentations and homomorphisms ----

Presentation Presentation::parse(std::string_view text) {
  Presentation p;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_rank = false;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (!have_rank) {
      std::istringstream head(line);
      std::string kw;
      long long n = -1;
      if (!(head >> kw >> n) || kw != "rank" || n < 0 || !(head >> std::ws).eof())
        throw Error(ErrorKind::Parse, "presentation must start with 'rank N'");
      p.rank = static_cast<unsigned>(n);
      have_rank = true;
      continue;
    }
    p.relators.push_back(Word::parse(line, p.rank));
  }
  if (!have_rank) throw Error(ErrorKind::Parse, "presentation must start with 'rank N'");
  return p;
}

std::string Presentation::to_string() const {
  std::string s = "rank " + std::to_string(rank) + "\n";
  for (const Word& r : relators) s += r.to_string() + "\n";
  return s;
}

std::uint64_t for_each_hom(const Presentation& p, const FinGroup& h,
                           const std::function<bool(std::span<const Elem>)>& visit,
                           const Limits& limits) {
  const unsigned n = p.rank;
  std::vector<std::vector<const Word*>> due(n + 1);
  for (const Word& r : p.relators) {
    unsigned top = 0;
    for (const Letter& l : r.letters()) top = std::max(top, l.gen);
    due[top].push_back(&r);
  }
  std::vector<Elem> images(n, 0);
  // Relators without letters always hold.
  if (n == 0) {
    visit(images);
    return 1;
  }
  std::uint64_t count = 0, nodes = 0;
  bool stop = false;
  std::function<void(unsigned)> dfs = [&](unsigned k) {
    for (Elem x = 0; x < h.order() && !stop; ++x) {
      if (++nodes > limits.max_hom_nodes)
        throw Error(ErrorKind::TooLarge, "hom search exceeds max_hom_nodes " +
                                             std::to_string(limits.max_hom_nodes));
      images[k] = x;
      bool ok = true;
      for (const Word* r : due[k + 1])
        if (h.evaluate(*r, images) != 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (k + 1 == n) {
        ++count;
        if (!visit(images)) stop = true;
      } else {
        dfs(k + 1);
      }
    }
  };
  dfs(0);
  return count;
}

std::vector<std::vector<Elem>> enumerate_homs(const Presentation& p, const FinGroup& h,
                                              const Limits& limits) {
  std::vector<std::vector<Elem>> out;
  for_each_hom(p, h, [&](std::span<const Elem> im) {
    out.emplace_back(im.begin(), im.end());
    return true;
  }, limits);
  return out;
}

namespace {

// Breadth-first tree of the subgroup generated by the first k generators.
struct PrefixTree {
  std::vector<Elem> elems;
  std::vector<std::uint32_t> parent_pos;
  std::vector<std::uint32_t> via;
  std::vector<std::int32_t> pos;  // global element -> position, -1 outside
};

PrefixTree prefix_tree(const FinGroup& g, std::size_t k) {
  PrefixTree t;
  t.pos.assign(g.order(), -1);
  t.elems.push_back(0);
  t.parent_pos.push_back(0);
  t.via.push_back(0);
  t.pos[0] = 0;
  for (std::size_t i = 0; i < t.elems.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Elem y = g.mul(t.elems[i], g.generator(j));
      if (t.pos[y] < 0) {
        t.pos[y] = static_cast<std::int32_t>(t.elems.size());
        t.elems.push_back(y);
        t.parent_pos.push_back(static_cast<std::uint32_t>(i));
        t.via.push_back(static_cast<std::uint32_t>(j));
      }
    }
  }
  return t;
}

}  // namespace

std::uint64_t for_each_group_hom(const FinGroup& g, const FinGroup& h,
                                 const std::function<bool(std::span<const Elem>)>& visit,
                                 const Limits& limits) {
  const std::size_t ng = g.num_generators();
  std::vector<Elem> images(ng, 0);
  if (ng == 0) {
    visit(images);
    return 1;
  }
  std::vector<PrefixTree> trees;
  for (std::size_t k = 1; k <= ng; ++k) trees.push_back(prefix_tree(g, k));
  std::vector<Elem> rho;
  auto consistent = [&](std::size_t k) {
    const PrefixTree& t = trees[k - 1];
    rho.assign(t.elems.size(), 0);
    for (std::size_t i = 1; i < t.elems.size(); ++i) rho[i] = h.mul(rho[t.parent_pos[i]], images[t.via[i]]);
    for (std::size_t i = 0; i < t.elems.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const Elem y = g.mul(t.elems[i], g.generator(j));
        if (rho[t.pos[y]] != h.mul(rho[i], images[j])) return false;
      }
    return true;
  };
  std::uint64_t count = 0, nodes = 0;
  bool stop = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    for (Elem x = 0; x < h.order() && !stop; ++x) {
      if (++nodes > limits.max_hom_nodes)
        throw Error(ErrorKind::TooLarge, "hom search exceeds max_hom_nodes " +
                                             std::to_string(limits.max_hom_nodes));
      images[k] = x;
      if (!consistent(k + 1)) continue;
      if (k + 1 == ng) {
        ++count;
        if (!visit(images)) stop = true;
      } else {
        dfs(k + 1);
      }
    }
  };
  dfs(0);
  return count;
}

Subgroup kernel_intersection(const FinGroup& g, const FinGroup& h, const Limits& limits) {
  std::vector<bool> in_kernel(g.order(), true);
  std::size_t remaining = g.order();
  std::vector<Elem> rho(g.order(), 0);
  for_each_group_hom(g, h, [&](std::span<const Elem> images) {
    for (Elem x = 1; x < g.order(); ++x) {
      rho[x] = h.mul(rho[g.parent(x)], images[g.via(x)]);
      if (in_kernel[x] && rho[x] != 0) {
        in_kernel[x] = false;
        --remaining;
      }
    }
    return remaining > 1;
  }, limits);
  std::vector<Elem> members;
  for (Elem x = 0; x < g.order(); ++x)
    if (in_kernel[x]) members.push_back(x);
  return subgroup_closure(g, members);
}

// ---- comparison ----

bool FiltrationReport::all_hold() const {
  for (bool b : pcentral_in_zassenhaus)
    if (!b) return false;
  if (!zassenhaus_p1_in_pcentral3) return false;
  if (equal_at_3 && !*equal_at_3) return false;
  if (zassenhaus_in_kernel && !*zassenhaus_in_kernel) return false;
  if (kernel_in_pcentral3 && !*kernel_in_pcentral3) return false;
  return true;
}

FiltrationReport compare_filtrations(const FinGroup& g, std::uint32_t p, unsigned max_level,
                                     const Limits& limits) {
  FiltrationReport r;
  r.p = p;
  r.max_level = max_level;
  const SeriesTable z = series(g, FiltrationKind::zassenhaus(p));
  const SeriesTable pc = series(g, FiltrationKind::p_central(p));
  for (unsigned i = 1; i <= max_level; ++i) r.pcentral_in_zassenhaus.push_back(pc.level(i).subset_of(z.level(i)));
  r.zassenhaus_p1_in_pcentral3 = z.level(p + 1).subset_of(pc.level(3));
  if (p == 2) r.equal_at_3 = z.level(3) == pc.level(3);

  // Kernel filtration through U_{p+1}(F_p), when the search fits the budget.
  const std::uint64_t target_order = ipow(p, p * (p + 1) / 2);
  double nodes = 1;
  for (std::size_t i = 0; i < g.num_generators(); ++i) nodes *= static_cast<double>(target_order);
  if (target_order <= limits.max_group_order && nodes <= static_cast<double>(limits.max_hom_nodes)) {
    const FinGroup target = unitriangular_group(p + 1, RingSpec::prime_field(p), limits);
    const Subgroup kernel = kernel_intersection(g, target, limits);
    r.kernel_size = kernel.size();
    r.zassenhaus_in_kernel = z.level(p + 1).subset_of(kernel);
    r.kernel_in_pcentral3 = kernel.subset_of(pc.level(3));
  }
  return r;
}

}  // namespace ulab
