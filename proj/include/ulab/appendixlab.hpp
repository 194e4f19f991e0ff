#pragma once

// Groups G = S/R with relators r_ij = [x1,x2][xi,xj]^-1, where [x1,x2]
// survives modulo S_(3) yet dies in every homomorphism to small targets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ulab/config.hpp"
#include "ulab/fingrp.hpp"

namespace ulab {

struct AppendixInstance {
  std::uint32_t p = 2;
  unsigned N = 0;
  std::vector<FinGroup> targets;
  Presentation presentation;
};

// [x1,x2][xi,xj]^-1 in rank N.
Word appendix_relator(unsigned N, unsigned i, unsigned j);

// Relators r_ij for 1 <= i < j <= N, (i,j) != (1,2). Needs N >= 2.
AppendixInstance build_instance(std::uint32_t p, unsigned N, std::vector<FinGroup> targets);

struct G3Report {
  bool not_in_g3 = false;             // [x1,x2] outside the span of the r_ij
  std::size_t relator_rank = 0;
  std::size_t commutator_rank = 0;    // rank of all [xi,xj], expected C(N,2)
  bool functional_certifies = false;  // phi kills every r_ij, phi([x1,x2]) = 1
};

// Degree-2 Magnus coefficients over F_p.
G3Report not_in_g3(const AppendixInstance& inst);

struct TargetCheck {
  std::string name;
  std::size_t order = 0;
  // Images h_1..h_N with all [h_i,h_j] equal to [h_1,h_2] != 1, if any.
  std::optional<std::vector<Elem>> counterexample;
  // From full enumeration, when it fits the hom budget.
  std::optional<std::uint64_t> hom_count;
  std::optional<bool> enumeration_agrees;
  std::optional<bool> pigeonhole;  // N > |H|: every hom repeats an image
};

struct KernelFiltrationReport {
  bool in_kernel = false;  // [x1,x2] dies under every homomorphism
  std::vector<TargetCheck> targets;
};

KernelFiltrationReport in_kernel_filtration(const AppendixInstance& inst,
                                            const Limits& limits = default_limits());

enum class AppendixVerdict { Violates, Inconclusive, NotViolated };
std::string to_string(AppendixVerdict v);

struct ViolationReport {
  AppendixVerdict verdict = AppendixVerdict::Inconclusive;
  unsigned n = 3;
  G3Report g3;
  KernelFiltrationReport kernel;
};

// Violates when [x1,x2] lies in G_L but not in G_(3), hence not in G_(n).
// Inconclusive when some target has at least N elements and the kernel
// check fails. Needs n >= 3.
ViolationReport violates_kernel_property(const AppendixInstance& inst, unsigned n,
                                         const Limits& limits = default_limits());

// Largest set of distinct elements whose pairwise commutators all equal one
// nontrivial element.
std::size_t max_constant_commutator_set(const FinGroup& h);

}  // namespace ulab
