#include "ulab/famgroups.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "ulab/error.hpp"
#include "ulab/simd/kernels.hpp"

namespace ulab {
namespace {

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorKind::Parse, "bad value '" + std::string(text) + "' for " + std::string(what));
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::map<std::string, std::string> key_values(std::string_view text) {
  std::map<std::string, std::string> kv;
  if (text.empty()) return kv;
  for (auto item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::Parse, "expected key=value, got '" + std::string(item) + "'");
    if (!kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second)
      throw Error(ErrorKind::Parse, "duplicate key '" + std::string(item.substr(0, eq)) + "'");
  }
  return kv;
}

// Largest k with p^k = q, or nullopt when q is not a power of p.
std::optional<unsigned> log_exact(std::uint64_t q, std::uint32_t p) {
  unsigned k = 0;
  while (q > 1 && q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return k;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

std::string variant_name(RigidVariant v) {
  switch (v) {
    case RigidVariant::Split: return "split";
    case RigidVariant::Direct: return "direct";
    case RigidVariant::NegSplit: return "negsplit";
    case RigidVariant::Inv: return "inv";
  }
  return "?";
}

void bad(const std::string& what) { throw Error(ErrorKind::BadParams, what); }

void validate(const FamilyParams& f) {
  if (f.kind == FamilyKind::Trivial) return;
  if (!is_prime(f.p)) bad("p must be prime");
  switch (f.kind) {
    case FamilyKind::Rigid:
      if (f.s < 1) bad("rigid quotients need s >= 1");
      if (f.m < 1) bad("rigid quotients need m >= 1");
      if (f.variant == RigidVariant::Split && (f.k < 1 || f.k > f.s)) bad("split variant needs 1 <= k <= s");
      if (f.variant == RigidVariant::NegSplit && (f.p != 2 || f.k < 1)) bad("negsplit variant needs p = 2 and k >= 1");
      if (f.variant == RigidVariant::Inv && f.p != 2) bad("inv variant needs p = 2");
      break;
    case FamilyKind::Mpks:
      if (f.k < 1 || f.k > f.s) bad("M_{p,k,s} needs 1 <= k <= s");
      break;
    case FamilyKind::Demushkin: {
      if (f.s < 1) bad("Demushkin quotients need s >= 1");
      if (f.type < 1 || f.type > 4) bad("Demushkin type must be 1..4");
      if (f.type >= 3 && f.p != 2) bad("Demushkin types 3 and 4 need p = 2");
      if (f.type == 2 || f.type == 4) {
        const auto k = log_exact(f.q, f.p);
        if (!k || *k < 1) bad("q must be a positive power of p");
        if (f.p == 2 && f.q < 4) bad("q must be at least 4 when p = 2");
      }
      break;
    }
    case FamilyKind::Trivial: break;
  }
}

// Action exponent e with sigma tau sigma^-1 = tau^e, as a residue mod `mod`.
std::uint64_t action_exponent(const FamilyParams& f, std::uint64_t mod) {
  auto neg = [mod](std::uint64_t x) { return (mod - x % mod) % mod; };
  switch (f.kind) {
    case FamilyKind::Rigid:
      switch (f.variant) {
        case RigidVariant::Split: return (1 + mod_pow(f.p, f.k, mod)) % mod;
        case RigidVariant::Direct: return 1 % mod;
        case RigidVariant::NegSplit: return neg(1 + mod_pow(2, f.k, mod));
        case RigidVariant::Inv: return neg(1);
      }
      break;
    case FamilyKind::Mpks: return (1 + mod_pow(f.p, f.k, mod)) % mod;
    case FamilyKind::Demushkin:
      switch (f.type) {
        case 1: return 1 % mod;
        case 2: return (1 + f.q % mod) % mod;
        case 3: return neg(1);
        case 4: return neg(1 + f.q % mod);
      }
      break;
    case FamilyKind::Trivial: break;
  }
  return 1 % mod;
}

std::string code_tuple(const Code& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

// Semidirect product (Z/mod_in)^m x| Z/mod_out with code (u_1..u_m, a) and
// law (u, a)(u', a') = (u + e^a u', a + a').
FinGroup semidirect(std::string name, unsigned m, std::uint32_t mod_in, std::uint32_t mod_out,
                    std::uint64_t e, const Limits& limits) {
  std::vector<std::uint64_t> powers(mod_out);
  for (std::uint32_t a = 0; a < mod_out; ++a) powers[a] = mod_pow(e, a, mod_in);
  std::vector<Code> gens;
  for (unsigned i = 0; i < m; ++i) {
    Code g(m + 1, 0);
    g[i] = 1 % mod_in;
    gens.push_back(std::move(g));
  }
  Code sigma(m + 1, 0);
  sigma[m] = 1 % mod_out;
  gens.push_back(std::move(sigma));
  auto law = [m, mod_in, mod_out, powers](const Code& x, const Code& y) {
    Code z(m + 1);
    const std::uint64_t ea = powers[x[m]];
    for (unsigned i = 0; i < m; ++i) z[i] = static_cast<std::uint32_t>((x[i] + ea * y[i]) % mod_in);
    z[m] = static_cast<std::uint32_t>((std::uint64_t{x[m]} + y[m]) % mod_out);
    return z;
  };
  return FinGroup::closure(std::move(name), Code(m + 1, 0), std::move(gens), law, code_tuple, limits);
}

struct MatOps {
  std::size_t n;
  std::uint32_t m;
  Code operator()(const Code& a, const Code& b) const {
    Code out(n * n);
    simd::matmul_mod(a, b, out, n, m);
    return out;
  }
};

Code identity_code(std::size_t n) {
  Code c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) c[i * n + i] = 1;
  return c;
}

// Images of every element under generator images given as matrices over F_p;
// nullopt when the assignment is not a homomorphism.
std::optional<std::vector<Code>> extend_matrices(const FinGroup& g, const std::vector<UniMat>& images,
                                                 std::size_t n, std::uint32_t p) {
  std::vector<Code> codes;
  for (const UniMat& u : images) codes.push_back(to_code(u));
  return extend_hom<Code>(g, codes, identity_code(n), MatOps{n, p},
                          [](const Code& a, const Code& b) { return a == b; });
}

// Conjugator for the action sigma tau sigma^-1 = tau^e inside U_{p^s+1}(F_p).
UniMat action_conjugator(const FamilyParams& f, std::uint32_t p, unsigned s) {
  const RingSpec field = RingSpec::prime_field(p);
  const std::size_t n = static_cast<std::size_t>(ipow(p, s)) + 1;
  if (s == 0) return UniMat::identity(n, field);
  const auto e = static_cast<std::int64_t>(action_exponent(f, ipow(p, s + 1)));
  return conjugator_for_power(e, p, s);
}

}  // namespace

FamilyParams FamilyParams::parse(std::string_view text) {
  FamilyParams f;
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const auto kv = key_values(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));
  auto take = [&](const char* key, std::uint64_t fallback, bool required) -> std::uint64_t {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (required) throw Error(ErrorKind::Parse, std::string("missing '") + key + "' in " + std::string(text));
      return fallback;
    }
    return parse_uint(it->second, key);
  };
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : kv) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
        throw Error(ErrorKind::Parse, "unknown key '" + key + "' in " + std::string(text));
    }
  };
  if (head == "trivial") {
    allow({});
    f.kind = FamilyKind::Trivial;
  } else if (head == "rigid") {
    allow({"p", "s", "k", "m", "variant"});
    f.kind = FamilyKind::Rigid;
    f.p = static_cast<std::uint32_t>(take("p", 0, true));
    f.s = static_cast<unsigned>(take("s", 0, true));
    f.m = static_cast<unsigned>(take("m", 1, false));
    f.k = static_cast<unsigned>(take("k", 0, false));
    auto it = kv.find("variant");
    const std::string v = it == kv.end() ? "split" : it->second;
    if (v == "split") f.variant = RigidVariant::Split;
    else if (v == "direct") f.variant = RigidVariant::Direct;
    else if (v == "negsplit") f.variant = RigidVariant::NegSplit;
    else if (v == "inv") f.variant = RigidVariant::Inv;
    else throw Error(ErrorKind::Parse, "unknown rigid variant '" + v + "'");
  } else if (head == "mpks") {
    allow({"p", "k", "s"});
    f.kind = FamilyKind::Mpks;
    f.p = static_cast<std::uint32_t>(take("p", 0, true));
    f.k = static_cast<unsigned>(take("k", 0, true));
    f.s = static_cast<unsigned>(take("s", 0, true));
  } else if (head == "demushkin") {
    allow({"type", "p", "s", "q", "m"});
    f.kind = FamilyKind::Demushkin;
    f.type = static_cast<unsigned>(take("type", 0, true));
    f.p = static_cast<std::uint32_t>(take("p", 0, true));
    f.s = static_cast<unsigned>(take("s", 1, false));
    f.q = take("q", 0, false);
    if (kv.count("m")) {
      if (kv.count("q")) throw Error(ErrorKind::Parse, "give q or m, not both");
      f.q = take("m", 0, true);
    }
  } else {
    throw Error(ErrorKind::Parse, "unknown family '" + std::string(head) + "'");
  }
  validate(f);
  return f;
}

std::string FamilyParams::to_string() const {
  const std::string ps = "p=" + std::to_string(p);
  switch (kind) {
    case FamilyKind::Trivial: return "trivial";
    case FamilyKind::Rigid: {
      std::string s_ = "rigid:" + ps + ",s=" + std::to_string(s);
      if (variant == RigidVariant::Split || variant == RigidVariant::NegSplit) s_ += ",k=" + std::to_string(k);
      return s_ + ",m=" + std::to_string(m) + ",variant=" + variant_name(variant);
    }
    case FamilyKind::Mpks:
      return "mpks:" + ps + ",k=" + std::to_string(k) + ",s=" + std::to_string(s);
    case FamilyKind::Demushkin: {
      std::string s_ = "demushkin:type=" + std::to_string(type) + "," + ps + ",s=" + std::to_string(s);
      if (type == 2) s_ += ",q=" + std::to_string(q);
      if (type == 4) s_ += ",m=" + std::to_string(q);
      return s_;
    }
  }
  return "?";
}

Family build_family(const FamilyParams& params, const Limits& limits) {
  validate(params);
  Family fam{params, trivial_group(), {}, {}, std::nullopt, 0};
  const std::uint32_t p = params.p;
  switch (params.kind) {
    case FamilyKind::Trivial:
      break;
    case FamilyKind::Rigid: {
      const auto mod = static_cast<std::uint32_t>(ipow(p, params.s + 1));
      if (std::pow(static_cast<double>(mod), params.m + 1) > static_cast<double>(limits.max_group_order))
        throw Error(ErrorKind::TooLarge, params.to_string() + " exceeds max_group_order");
      fam.group = semidirect(params.to_string(), params.m, mod, mod, action_exponent(params, mod), limits);
      for (unsigned i = 0; i < params.m; ++i) {
        fam.generator_names.push_back("tau" + std::to_string(i + 1));
        fam.inner_coords.push_back(i);
      }
      fam.generator_names.push_back("sigma");
      fam.outer_coord = params.m;
      fam.inner_log = params.s + 1;
      break;
    }
    case FamilyKind::Mpks: {
      const auto mod_in = static_cast<std::uint32_t>(ipow(p, params.s + 1));
      const auto mod_out = static_cast<std::uint32_t>(ipow(p, params.s + 1 - params.k));
      fam.group = semidirect(params.to_string(), 1, mod_in, mod_out, action_exponent(params, mod_in), limits);
      fam.generator_names = {"tau", "sigma"};
      fam.inner_coords = {0};
      fam.outer_coord = 1;
      fam.inner_log = params.s + 1;
      break;
    }
    case FamilyKind::Demushkin: {
      const auto mod = static_cast<std::uint32_t>(ipow(p, params.s));
      fam.group = semidirect(params.to_string(), 1, mod, mod, action_exponent(params, mod), limits);
      fam.generator_names = {"x", "y"};
      fam.inner_coords = {0};
      fam.outer_coord = 1;
      fam.inner_log = params.s;
      break;
    }
  }
  return fam;
}

FinGroup parse_group(std::string_view text, const Limits& limits) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "cyclic") return cyclic_group(static_cast<std::uint32_t>(parse_uint(rest, "cyclic order")), limits);
  if (head == "abelian") {
    std::vector<std::uint32_t> orders;
    for (auto item : split(rest, ',')) orders.push_back(static_cast<std::uint32_t>(parse_uint(item, "factor order")));
    return abelian_group(orders, limits);
  }
  if (head == "unitri") {
    const auto kv = key_values(rest);
    for (const auto& [key, value] : kv)
      if (key != "n" && key != "p" && key != "s") throw Error(ErrorKind::Parse, "unknown key '" + key + "'");
    if (!kv.count("n") || !kv.count("p")) throw Error(ErrorKind::Parse, "unitri needs n and p");
    const auto n = parse_uint(kv.at("n"), "n");
    const auto p = static_cast<std::uint32_t>(parse_uint(kv.at("p"), "p"));
    const auto s = kv.count("s") ? static_cast<std::uint32_t>(parse_uint(kv.at("s"), "s")) : 1u;
    return unitriangular_group(n, RingSpec::mod_prime_power(p, s), limits);
  }
  if (head.size() >= 4 && head[0] == 'u' && colon == std::string_view::npos) {
    const auto f = head.find('f');
    if (f != std::string_view::npos && f > 1) {
      const auto n = parse_uint(head.substr(1, f - 1), "n");
      const auto p = static_cast<std::uint32_t>(parse_uint(head.substr(f + 1), "p"));
      return unitriangular_group(n, RingSpec::prime_field(p), limits);
    }
  }
  if (head == "trivial" && rest.empty()) return trivial_group();
  return build_family(FamilyParams::parse(text), limits).group;
}

SeparatingRep separating_rep(const Family& family, Elem u) {
  if (family.params.kind != FamilyKind::Rigid && family.params.kind != FamilyKind::Demushkin)
    bad("separating representations are built for rigid and Demushkin families");
  if (u == 0) throw Error(ErrorKind::NoWitness, "the identity is not separated by any representation");
  const std::uint32_t p = family.params.p;
  const unsigned s = family.inner_log - 1;
  const RingSpec field = RingSpec::prime_field(p);
  SeparatingRep rep;
  rep.size = static_cast<std::size_t>(ipow(p, s)) + 1;
  const UniMat one = UniMat::identity(rep.size, field);
  const UniMat b = UniMat::jordan(rep.size, field);
  const Code& c = family.group.code(u);
  const std::size_t ng = family.group.num_generators();
  rep.generator_images.assign(ng, one);
  // Generators are ordered inner first, outer last.
  if (c[*family.outer_coord] != 0) {
    rep.outer_case = true;
    rep.generator_images[ng - 1] = b;
  } else {
    for (std::size_t i = 0; i < family.inner_coords.size(); ++i) {
      if (c[family.inner_coords[i]] != 0) {
        rep.inner_generator = i;
        break;
      }
    }
    rep.generator_images[*rep.inner_generator] = b;
    rep.generator_images[ng - 1] = action_conjugator(family.params, p, s);
  }
  const auto all = extend_matrices(family.group, rep.generator_images, rep.size, p);
  rep.homomorphism = all.has_value();
  rep.image_of_u = all ? from_code((*all)[u], rep.size, field) : one;
  return rep;
}

KernelReport verify_kernel_property(const FamilyParams& params, unsigned n, const Limits& limits) {
  validate(params);
  KernelReport report;
  report.n = n;
  if (n < 1) bad("n must be at least 1");
  FamilyParams quotient = params;
  if (params.kind == FamilyKind::Rigid) {
    const std::uint64_t lo = ipow(params.p, params.s), hi = ipow(params.p, params.s + 1);
    if (!(lo < n && n <= hi))
      bad("rigid quotient with s=" + std::to_string(params.s) + " describes levels " + std::to_string(lo + 1) +
          ".." + std::to_string(hi));
  } else if (params.kind == FamilyKind::Demushkin) {
    unsigned s = 0;
    while (ipow(params.p, s) < n) ++s;
    quotient.s = s;
  } else if (params.kind != FamilyKind::Trivial) {
    bad("kernel verification covers rigid and Demushkin quotients");
  }
  if (params.kind == FamilyKind::Trivial || (params.kind == FamilyKind::Demushkin && quotient.s == 0)) {
    report.quotient = "trivial";
    report.group_order = 1;
    report.zassenhaus_trivial = true;
    report.reps_are_homs = true;
    return report;
  }
  const Family fam = build_family(quotient, limits);
  const FinGroup& g = fam.group;
  report.quotient = quotient.to_string();
  report.group_order = g.order();
  report.target_size = static_cast<std::size_t>(ipow(params.p, fam.inner_log - 1)) + 1;
  if (report.target_size > n) throw std::logic_error("separating target larger than n");
  report.zassenhaus_trivial = series(g, FiltrationKind::zassenhaus(params.p)).level(n).is_trivial();

  // Only 1 + m distinct representations occur; check each once.
  std::map<std::pair<bool, std::size_t>, std::vector<Code>> cache;
  report.reps_are_homs = true;
  for (Elem u = 1; u < g.order(); ++u) {
    ++report.nontrivial;
    const Code& c = g.code(u);
    std::pair<bool, std::size_t> key{true, 0};
    if (c[*fam.outer_coord] == 0) {
      key.first = false;
      while (c[fam.inner_coords[key.second]] == 0) ++key.second;
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
      const SeparatingRep rep = separating_rep(fam, u);
      if (!rep.homomorphism) {
        report.reps_are_homs = false;
        it = cache.emplace(key, std::vector<Code>{}).first;
      } else {
        it = cache.emplace(key, *extend_matrices(g, rep.generator_images, rep.size, params.p)).first;
      }
    }
    if (it->second.empty()) continue;
    // Embedding into U_n keeps non-identity images non-identity.
    if (it->second[u] != identity_code(report.target_size)) ++report.separated;
  }
  return report;
}

CharacterCase parse_character_case(std::string_view text) {
  if (text == "0" || text == "case0") return CharacterCase::Case0;
  if (text == "1" || text == "case1") return CharacterCase::Case1;
  if (text == "2" || text == "case2") return CharacterCase::Case2;
  throw Error(ErrorKind::Parse, "case must be 0, 1 or 2");
}

std::string to_string(CharacterCase c) {
  switch (c) {
    case CharacterCase::Case0: return "case0";
    case CharacterCase::Case1: return "case1";
    case CharacterCase::Case2: return "case2";
  }
  return "?";
}

PowerCharacterRep power_character_rep(std::uint32_t p, unsigned s, unsigned k, CharacterCase which,
                                      const Limits& limits) {
  if (!is_prime(p)) bad("p must be prime");
  if (s < 1) bad("s must be at least 1");
  const RingSpec field = RingSpec::prime_field(p);
  const std::size_t n = static_cast<std::size_t>(ipow(p, s)) + 1;
  const UniMat b = UniMat::jordan(n, field);
  const auto cyclic_order = static_cast<std::uint32_t>(ipow(p, s + 1));
  PowerCharacterRep rep{trivial_group(), {}, {}, {}, false, false};
  switch (which) {
    case CharacterCase::Case0:
    case CharacterCase::Case2:
      rep.group = cyclic_group(cyclic_order, limits);
      rep.generator_names = {"sigma"};
      rep.generator_images = {b};
      rep.chi = {1};
      break;
    case CharacterCase::Case1: {
      if (k < 1 || k > s) bad("case 1 needs 1 <= k <= s");
      if (p == 2 && k < 2) bad("case 1 at p = 2 needs k >= 2: the conjugator has a nonzero superdiagonal");
      FamilyParams f;
      f.kind = FamilyKind::Mpks;
      f.p = p;
      f.k = k;
      f.s = s;
      rep.group = build_family(f, limits).group;
      rep.generator_names = {"tau", "sigma"};
      rep.generator_images = {b, solve_conjugation({ConjugationTarget::Kind::PowerOnePlusQ, k}, p, s)};
      rep.chi = {1, 0};
      break;
    }
  }
  const auto all = extend_matrices(rep.group, rep.generator_images, n, p);
  rep.homomorphism = all.has_value();
  const auto chi_all = extend_hom<std::uint32_t>(
      rep.group, rep.chi, 0u, [p](std::uint32_t a, std::uint32_t c) { return (a + c) % p; },
      [](std::uint32_t a, std::uint32_t c) { return a == c; });
  rep.superdiagonal_is_chi = all && chi_all;
  if (rep.superdiagonal_is_chi) {
    for (Elem x = 0; x < rep.group.order(); ++x)
      for (std::size_t i = 0; i + 1 < n; ++i)
        if ((*all)[x][i * n + i + 1] != (*chi_all)[x]) rep.superdiagonal_is_chi = false;
  }
  return rep;
}

SmallGroup parse_small_group(std::string_view text) {
  if (text == "cyclic-p2" || text == "zp2") return SmallGroup::CyclicPSquared;
  if (text == "mp3") return SmallGroup::Mp3;
  throw Error(ErrorKind::Parse, "group must be zp2 or mp3");
}

std::string to_string(SmallGroup g) { return g == SmallGroup::CyclicPSquared ? "zp2" : "mp3"; }

EmbeddingReport minimal_embedding(SmallGroup which, std::uint32_t p, const Limits& limits) {
  if (!is_prime(p) || p == 2) bad("minimal embedding needs an odd prime");
  const RingSpec field = RingSpec::prime_field(p);
  const std::size_t n = p + 1;
  EmbeddingReport r{trivial_group(), n, {}, false, false, 0, {}, false};
  const UniMat b = UniMat::jordan(n, field);
  if (which == SmallGroup::CyclicPSquared) {
    r.group = cyclic_group(p * p, limits);
    r.generator_images = {b};
  } else {
    FamilyParams f;
    f.kind = FamilyKind::Mpks;
    f.p = p;
    f.k = 1;
    f.s = 1;
    r.group = build_family(f, limits).group;
    r.generator_images = {b, solve_conjugation({ConjugationTarget::Kind::PowerOnePlusQ, 1}, p, 1)};
  }
  const auto all = extend_matrices(r.group, r.generator_images, n, p);
  r.homomorphism = all.has_value();
  if (all) {
    std::vector<Code> images = *all;
    std::sort(images.begin(), images.end());
    r.image_order = static_cast<std::size_t>(std::unique(images.begin(), images.end()) - images.begin());
    r.injective = r.image_order == r.group.order();
  }
  r.below = exponent_scan(p, p, limits.max_search_nodes);
  r.minimal = r.below.exponent == p;
  return r;
}

}  // namespace ulab
