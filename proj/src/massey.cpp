#include "ulab/massey.hpp"

#include <unordered_map>

#include "ulab/error.hpp"
#include "ulab/modlinalg.hpp"

namespace ulab {
namespace {

std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + b) % p; }
std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return (p - a % p) % p; }

// Homomorphism checks into U_{n+1}(F_p) modulo the entries at distance > d
// from the diagonal. d = n - 1 is bar U_{n+1}; d = n is U_{n+1} itself.
class TruncatedTarget {
 public:
  TruncatedTarget(const FinGroup& g, std::size_t size, std::uint32_t p) : g_(g), n_(size), p_(p) {}

  Code identity() const {
    Code c(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) c[i * n_ + i] = 1;
    return c;
  }

  Code mul(const Code& a, const Code& b, std::size_t d) const {
    Code c(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      c[i * n_ + i] = 1;
      for (std::size_t j = i + 1; j < n_ && j - i <= d; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = i; k <= j; ++k) s += std::uint64_t{a[i * n_ + k]} * b[k * n_ + j];
        c[i * n_ + j] = static_cast<std::uint32_t>(s % p_);
      }
    }
    return c;
  }

  bool is_hom(const std::vector<Code>& images, std::size_t d) const {
    return extend_hom<Code>(g_, images, identity(), [&](const Code& a, const Code& b) { return mul(a, b, d); },
                            [](const Code& a, const Code& b) { return a == b; })
        .has_value();
  }

  std::vector<UniMat> to_unimats(const std::vector<Code>& images) const {
    std::vector<UniMat> out;
    for (const Code& c : images) out.push_back(from_code(c, n_, RingSpec::prime_field(p_)));
    return out;
  }

 private:
  const FinGroup& g_;
  std::size_t n_;
  std::uint32_t p_;
};

void check_alphas(const FinGroup& g, const std::vector<Character>& alphas, std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParams, "p must be prime");
  if (alphas.size() < 2) throw Error(ErrorKind::BadParams, "Massey products need n >= 2");
  for (const Character& a : alphas)
    if (a.values.size() != g.order()) throw Error(ErrorKind::BadParams, "character size does not match the group");
}

class DwyerSearch {
 public:
  DwyerSearch(const FinGroup& g, const std::vector<Character>& alphas, std::uint32_t p, const Limits& limits)
      : g_(g), alphas_(alphas), p_(p), n_(static_cast<unsigned>(alphas.size())), size_(n_ + 1),
        target_(g, size_, p), limits_(limits) {
    verdict_.n = n_;
    verdict_.p = p;
    images_.assign(g.num_generators(), target_.identity());
    for (std::size_t gi = 0; gi < images_.size(); ++gi)
      for (std::size_t i = 0; i < n_; ++i)
        images_[gi][i * size_ + i + 1] = neg(alphas[i].values[g.generator(gi)], p);
  }

  MasseyVerdict run() {
    tick();
    if (target_.is_hom(images_, 1)) level(2);
    if (verdict_.liftable > 0) verdict_.status = MasseyStatus::Vanishing;
    else if (verdict_.bar_homs > 0) verdict_.status = MasseyStatus::DefinedNotVanishing;
    else verdict_.status = MasseyStatus::Undefined;
    return verdict_;
  }

 private:
  void tick() {
    if (++verdict_.nodes > limits_.max_search_nodes)
      throw Error(ErrorKind::TooLarge, "Massey search exceeds max_search_nodes " +
                                           std::to_string(limits_.max_search_nodes));
  }

  // Odometer over the given entries, first slot most significant.
  template <class Visit>
  void enumerate(const std::vector<std::pair<std::size_t, std::size_t>>& slots, Visit visit) {
    for (;;) {
      visit();
      std::size_t k = slots.size();
      while (k > 0) {
        --k;
        auto& entry = images_[slots[k].first][slots[k].second];
        if (++entry < p_) break;
        entry = 0;
        if (k == 0) return;
      }
      if (slots.empty()) return;
    }
  }

  void level(std::size_t d) {
    if (d == n_) {
      bar_found();
      return;
    }
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t gi = 0; gi < images_.size(); ++gi)
      for (std::size_t i = 0; i + d < size_; ++i) slots.emplace_back(gi, i * size_ + i + d);
    enumerate(slots, [&] {
      tick();
      if (target_.is_hom(images_, d)) level(d + 1);
    });
  }

  void bar_found() {
    ++verdict_.bar_homs;
    if (!verdict_.witness) verdict_.witness = target_.to_unimats(images_);
    std::vector<std::pair<std::size_t, std::size_t>> corners;
    for (std::size_t gi = 0; gi < images_.size(); ++gi) corners.emplace_back(gi, n_);
    bool lifts = false;
    enumerate(corners, [&] {
      if (lifts) return;
      tick();
      if (target_.is_hom(images_, n_)) {
        lifts = true;
        if (!verdict_.lift) verdict_.lift = target_.to_unimats(images_);
      }
    });
    if (lifts) ++verdict_.liftable;
  }

  const FinGroup& g_;
  const std::vector<Character>& alphas_;
  std::uint32_t p_;
  unsigned n_;
  std::size_t size_;
  TruncatedTarget target_;
  const Limits& limits_;
  std::vector<Code> images_;
  MasseyVerdict verdict_;
};

}  // namespace

Character character_from_generators(const FinGroup& g, std::span<const std::uint32_t> on_generators,
                                    std::uint32_t p) {
  if (on_generators.size() != g.num_generators())
    throw Error(ErrorKind::BadParams, "expected " + std::to_string(g.num_generators()) + " character values, got " +
                                          std::to_string(on_generators.size()));
  std::vector<std::uint32_t> reduced;
  for (auto v : on_generators) reduced.push_back(v % p);
  auto values = extend_hom<std::uint32_t>(g, reduced, 0u, [p](std::uint32_t a, std::uint32_t b) { return add(a, b, p); },
                                          [](std::uint32_t a, std::uint32_t b) { return a == b; });
  if (!values) throw Error(ErrorKind::BadParams, "values do not define a homomorphism to F_" + std::to_string(p));
  return Character{std::move(*values)};
}

Cochain2 coboundary_1(const FinGroup& g, const Cochain1& b, std::uint32_t p) {
  const std::size_t n = g.order();
  Cochain2 c(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) c[x * n + y] = (b[x] + b[y] + neg(b[g.mul(x, y)], p)) % p;
  return c;
}

Cochain2 cup(const FinGroup& g, const Cochain1& a, const Cochain1& b, std::uint32_t p) {
  const std::size_t n = g.order();
  Cochain2 c(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) c[x * n + y] = static_cast<std::uint32_t>(std::uint64_t{a[x]} * b[y] % p);
  return c;
}

std::optional<Cochain1> is_2_coboundary(const FinGroup& g, const Cochain2& c, std::uint32_t p, const Limits& limits) {
  const std::size_t n = g.order();
  if (static_cast<double>(n) * n * n > static_cast<double>(limits.max_search_nodes))
    throw Error(ErrorKind::TooLarge, "coboundary system too large");
  FpMatrix a(0, n, p);
  std::vector<std::uint32_t> rhs;
  std::vector<std::uint32_t> row(n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      std::fill(row.begin(), row.end(), 0u);
      row[x] = (row[x] + 1) % p;
      row[y] = (row[y] + 1) % p;
      const Elem xy = g.mul(x, y);
      row[xy] = (row[xy] + p - 1) % p;
      a.push_row(row);
      rhs.push_back(c[x * n + y] % p);
    }
  auto sol = solve(std::move(a), rhs);
  if (!sol) return std::nullopt;
  return Cochain1(sol->begin(), sol->end());
}

bool validate_defining_system(const FinGroup& g, const DefiningSystem& m, const std::vector<Character>& alphas,
                              std::uint32_t p) {
  const unsigned n = m.n;
  if (alphas.size() != n) return false;
  const std::size_t order = g.order();
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i + 1; j <= n + 1; ++j) {
      if (i == 1 && j == n + 1) continue;
      auto it = m.a.find({i, j});
      if (it == m.a.end() || it->second.size() != order) return false;
      if (j == i + 1) {
        if (it->second != alphas[i - 1].values) return false;
        continue;
      }
      Cochain2 rhs(order * order, 0);
      for (unsigned l = i + 1; l < j; ++l) {
        const Cochain2 term = cup(g, m.at(i, l), m.at(l, j), p);
        for (std::size_t t = 0; t < rhs.size(); ++t) rhs[t] = add(rhs[t], term[t], p);
      }
      if (coboundary_1(g, it->second, p) != rhs) return false;
    }
  }
  return true;
}

MasseyValue massey_value(const FinGroup& g, const DefiningSystem& m, std::uint32_t p, const Limits& limits) {
  const std::size_t order = g.order();
  MasseyValue v;
  v.value.assign(order * order, 0);
  for (unsigned k = 2; k <= m.n; ++k) {
    const Cochain2 term = cup(g, m.at(1, k), m.at(k, m.n + 1), p);
    for (std::size_t t = 0; t < term.size(); ++t) v.value[t] = add(v.value[t], term[t], p);
  }
  v.coboundary = is_2_coboundary(g, v.value, p, limits).has_value();
  return v;
}

std::string to_string(MasseyStatus s) {
  switch (s) {
    case MasseyStatus::Undefined: return "Undefined";
    case MasseyStatus::DefinedNotVanishing: return "DefinedNotVanishing";
    case MasseyStatus::Vanishing: return "Vanishing";
  }
  return "?";
}

MasseyVerdict dwyer_search(const FinGroup& g, const std::vector<Character>& alphas, std::uint32_t p,
                           const Limits& limits) {
  check_alphas(g, alphas, p);
  return DwyerSearch(g, alphas, p, limits).run();
}

CrossCheck cross_check(const FinGroup& g, const std::vector<Character>& alphas, std::uint32_t p,
                       const Limits& limits) {
  check_alphas(g, alphas, p);
  CrossCheck out;
  out.dwyer = dwyer_search(g, alphas, p, limits);

  const std::size_t order = g.order();
  const unsigned n = static_cast<unsigned>(alphas.size());
  double total = 1;
  for (std::size_t i = 0; i < order; ++i) total *= p;
  if (total * static_cast<double>(order * order) > static_cast<double>(limits.max_search_nodes))
    throw Error(ErrorKind::TooLarge, "cochain enumeration too large");

  // Every 1-cochain, grouped by its coboundary.
  struct VecHash {
    std::size_t operator()(const Cochain2& v) const noexcept {
      std::size_t h = 0;
      for (auto x : v) h = h * 1000003u + x;
      return h;
    }
  };
  std::unordered_map<Cochain2, std::vector<Cochain1>, VecHash> by_coboundary;
  Cochain1 b(order, 0);
  for (;;) {
    by_coboundary[coboundary_1(g, b, p)].push_back(b);
    std::size_t k = order;
    while (k > 0 && ++b[k - 1] == p) b[--k] = 0;
    if (k == 0) break;
  }

  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned d = 2; d < n; ++d)
    for (unsigned i = 1; i + d <= n + 1; ++i) pairs.emplace_back(i, i + d);

  DefiningSystem m;
  m.n = n;
  for (unsigned i = 1; i <= n; ++i) m.a[{i, i + 1}] = alphas[i - 1].values;
  const TruncatedTarget target(g, n + 1, p);
  bool vanishing = false;

  std::function<void(std::size_t)> fill = [&](std::size_t idx) {
    if (idx == pairs.size()) {
      ++out.defining_systems;
      // The bar homomorphism attached to m: entries -a_ij on the generators.
      std::vector<Code> images(g.num_generators(), target.identity());
      for (std::size_t gi = 0; gi < images.size(); ++gi)
        for (const auto& [key, cochain] : m.a)
          images[gi][(key.first - 1) * (n + 1) + (key.second - 1)] = neg(cochain[g.generator(gi)], p);
      if (!target.is_hom(images, n - 1)) out.correspondence = false;
      Cochain2 value(order * order, 0);
      for (unsigned k = 2; k <= n; ++k) {
        const Cochain2 term = cup(g, m.at(1, k), m.at(k, n + 1), p);
        for (std::size_t t = 0; t < term.size(); ++t) value[t] = add(value[t], term[t], p);
      }
      if (by_coboundary.count(value)) vanishing = true;
      return;
    }
    const auto [i, j] = pairs[idx];
    Cochain2 rhs(order * order, 0);
    for (unsigned l = i + 1; l < j; ++l) {
      const Cochain2 term = cup(g, m.at(i, l), m.at(l, j), p);
      for (std::size_t t = 0; t < rhs.size(); ++t) rhs[t] = add(rhs[t], term[t], p);
    }
    auto it = by_coboundary.find(rhs);
    if (it == by_coboundary.end()) return;
    for (const Cochain1& a : it->second) {
      m.a[{i, j}] = a;
      fill(idx + 1);
    }
    m.a.erase({i, j});
  };
  fill(0);

  if (out.defining_systems == 0) out.cochain_status = MasseyStatus::Undefined;
  else out.cochain_status = vanishing ? MasseyStatus::Vanishing : MasseyStatus::DefinedNotVanishing;
  return out;
}

}  // namespace ulab
