#include "ulab/appendixlab.hpp"

#include <algorithm>
#include <functional>

#include "ulab/error.hpp"
#include "ulab/modlinalg.hpp"
#include "ulab/ncseries.hpp"

namespace ulab {
namespace {

std::vector<std::uint32_t> degree2_vector(const Word& w, unsigned N, const RingSpec& field) {
  const NCSeries series = magnus(w, N, field, 2);
  std::vector<std::uint32_t> v(static_cast<std::size_t>(N) * N, 0);
  for (const auto& [index, coeff] : series.terms())
    if (index.size() == 2) v[(index[0] - 1) * N + (index[1] - 1)] = static_cast<std::uint32_t>(coeff);
  return v;
}

// Extends h_1..h_k by elements whose commutator with every earlier one is c.
bool extend_clique(const FinGroup& h, Elem c, std::vector<Elem>& chosen, std::size_t goal) {
  if (chosen.size() == goal) return true;
  for (Elem x = 0; x < h.order(); ++x) {
    bool ok = true;
    for (Elem y : chosen)
      if (h.commutator(y, x) != c) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(x);
    if (extend_clique(h, c, chosen, goal)) return true;
    chosen.pop_back();
  }
  return false;
}

std::optional<std::vector<Elem>> find_counterexample(const FinGroup& h, unsigned N) {
  for (Elem a = 0; a < h.order(); ++a)
    for (Elem b = 0; b < h.order(); ++b) {
      const Elem c = h.commutator(a, b);
      if (c == 0) continue;
      std::vector<Elem> chosen{a, b};
      if (extend_clique(h, c, chosen, N)) return chosen;
    }
  return std::nullopt;
}

}  // namespace

Word appendix_relator(unsigned N, unsigned i, unsigned j) {
  const Word c12 = commutator(Word::generator(N, 1), Word::generator(N, 2));
  const Word cij = commutator(Word::generator(N, i), Word::generator(N, j));
  return c12 * cij.inverse();
}

AppendixInstance build_instance(std::uint32_t p, unsigned N, std::vector<FinGroup> targets) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParams, "p must be prime");
  if (N < 2) throw Error(ErrorKind::BadParams, "N must be at least 2");
  AppendixInstance inst;
  inst.p = p;
  inst.N = N;
  inst.targets = std::move(targets);
  inst.presentation.rank = N;
  for (unsigned i = 1; i <= N; ++i)
    for (unsigned j = i + 1; j <= N; ++j)
      if (!(i == 1 && j == 2)) inst.presentation.relators.push_back(appendix_relator(N, i, j));
  return inst;
}

G3Report not_in_g3(const AppendixInstance& inst) {
  const unsigned N = inst.N;
  const RingSpec field = RingSpec::prime_field(inst.p);
  const std::size_t dim = static_cast<std::size_t>(N) * N;
  G3Report r;

  FpMatrix relators(0, dim, inst.p);
  for (const Word& w : inst.presentation.relators) relators.push_row(degree2_vector(w, N, field));
  const auto target = degree2_vector(commutator(Word::generator(N, 1), Word::generator(N, 2)), N, field);
  FpMatrix extended = relators;
  extended.push_row(target);
  r.relator_rank = rank(relators);
  r.not_in_g3 = rank(std::move(extended)) > r.relator_rank;

  FpMatrix commutators(0, dim, inst.p);
  for (unsigned i = 1; i <= N; ++i)
    for (unsigned j = i + 1; j <= N; ++j)
      commutators.push_row(degree2_vector(commutator(Word::generator(N, i), Word::generator(N, j)), N, field));
  r.commutator_rank = rank(std::move(commutators));

  // phi(v) = sum over i < j of the X_i X_j coefficient.
  auto phi = [&](const std::vector<std::uint32_t>& v) {
    std::uint64_t s = 0;
    for (unsigned i = 0; i < N; ++i)
      for (unsigned j = i + 1; j < N; ++j) s += v[i * N + j];
    return static_cast<std::uint32_t>(s % inst.p);
  };
  r.functional_certifies = phi(target) == 1;
  for (std::size_t row = 0; row < relators.rows() && r.functional_certifies; ++row) {
    const auto span = relators.row(row);
    if (phi(std::vector<std::uint32_t>(span.begin(), span.end())) != 0) r.functional_certifies = false;
  }
  return r;
}

KernelFiltrationReport in_kernel_filtration(const AppendixInstance& inst, const Limits& limits) {
  KernelFiltrationReport report;
  report.in_kernel = true;
  for (const FinGroup& h : inst.targets) {
    TargetCheck t;
    t.name = h.name();
    t.order = h.order();
    t.counterexample = find_counterexample(h, inst.N);
    if (t.counterexample) report.in_kernel = false;
    try {
      std::uint64_t separating = 0;
      bool every_repeats = true;
      t.hom_count = for_each_hom(inst.presentation, h, [&](std::span<const Elem> images) {
        if (h.commutator(images[0], images[1]) != 0) ++separating;
        std::vector<Elem> sorted(images.begin(), images.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) every_repeats = false;
        return true;
      }, limits);
      t.enumeration_agrees = (separating > 0) == t.counterexample.has_value();
      if (inst.N > h.order()) t.pigeonhole = every_repeats;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooLarge) throw;
      t.hom_count.reset();
    }
    report.targets.push_back(std::move(t));
  }
  return report;
}

std::string to_string(AppendixVerdict v) {
  switch (v) {
    case AppendixVerdict::Violates: return "Violates";
    case AppendixVerdict::Inconclusive: return "Inconclusive";
    case AppendixVerdict::NotViolated: return "NotViolated";
  }
  return "?";
}

ViolationReport violates_kernel_property(const AppendixInstance& inst, unsigned n, const Limits& limits) {
  if (n < 3) throw Error(ErrorKind::BadParams, "n must be at least 3");
  ViolationReport r;
  r.n = n;
  r.g3 = not_in_g3(inst);
  r.kernel = in_kernel_filtration(inst, limits);
  std::size_t largest = 0;
  for (const FinGroup& h : inst.targets) largest = std::max(largest, h.order());
  if (r.g3.not_in_g3 && r.kernel.in_kernel) r.verdict = AppendixVerdict::Violates;
  else if (inst.N <= largest) r.verdict = AppendixVerdict::Inconclusive;
  else r.verdict = AppendixVerdict::NotViolated;
  return r;
}

std::size_t max_constant_commutator_set(const FinGroup& h) {
  std::size_t best = 0;
  for (Elem a = 0; a < h.order(); ++a)
    for (Elem b = a + 1; b < h.order(); ++b) {
      const Elem c = h.commutator(a, b);
      if (c == 0) continue;
      // Grow the set greedily by exhaustive extension with increasing goal.
      std::size_t goal = std::max<std::size_t>(best + 1, 3);
      for (;; ++goal) {
        std::vector<Elem> chosen{a, b};
        if (goal > h.order() || !extend_clique(h, c, chosen, goal)) break;
      }
      best = std::max(best, goal - 1);
    }
  return best;
}

}  // namespace ulab
