#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "ulab/appendixlab.hpp"
#include "ulab/config.hpp"
#include "ulab/error.hpp"
#include "ulab/famgroups.hpp"
#include "ulab/fingrp.hpp"
#include "ulab/freewords.hpp"
#include "ulab/massey.hpp"
#include "ulab/ncseries.hpp"
#include "ulab/unimat.hpp"

namespace ulab::cli {
namespace {

constexpr int kVerified = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

class Report {
 public:
  void add(std::string key, std::string value) { fields_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "yes" : "no")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }

  std::string text() const {
    std::string s;
    for (const auto& [k, v] : fields_) s += k + ": " + v + "\n";
    return s;
  }

  std::string json() const {
    nlohmann::ordered_json j;
    j["schema"] = "ulab-report/1";
    for (const auto& [k, v] : fields_) j[k] = v;
    return j.dump(2) + "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

// Canonical echo of the command; values never contain spaces.
class Echo {
 public:
  explicit Echo(std::string verb) : s_(std::move(verb)) {}
  void opt(const std::string& name, const std::string& value) { s_ += " --" + name + " " + value; }
  void opt(const std::string& name, std::uint64_t value) { opt(name, std::to_string(value)); }
  void flag(const std::string& name) { s_ += " --" + name; }
  const std::string& str() const { return s_; }

 private:
  std::string s_;
};

std::string no_spaces(const std::string& text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::uint32_t smallest_prime_factor(std::size_t n) {
  for (std::uint32_t d = 2; d <= n; ++d)
    if (n % d == 0) return d;
  throw Error(ErrorKind::BadParams, "the trivial group needs an explicit --p");
}

std::string join_index_list(const std::vector<Elem>& xs, const FinGroup& h) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += " ";
    s += h.format(xs[i]);
  }
  return s;
}

std::vector<Character> parse_alphas(const std::string& text, const FinGroup& g, std::uint32_t p, unsigned n) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  if (tokens.size() == 1 && n > 1) tokens.assign(n, tokens[0]);
  if (tokens.size() != n)
    throw Error(ErrorKind::Parse, "expected " + std::to_string(n) + " characters, got " + std::to_string(tokens.size()));
  std::vector<Character> out;
  for (const std::string& t : tokens) {
    std::vector<std::uint32_t> values;
    if (t == "id") {
      values.assign(g.num_generators(), 1);
    } else if (t == "neg") {
      values.assign(g.num_generators(), p - 1);
    } else if (t == "zero") {
      values.assign(g.num_generators(), 0);
    } else {
      std::stringstream vs(t);
      std::string v;
      while (std::getline(vs, v, ':')) {
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
          throw Error(ErrorKind::Parse, "bad character value '" + v + "'");
        values.push_back(static_cast<std::uint32_t>(std::stoul(v) % p));
      }
    }
    out.push_back(character_from_generators(g, values, p));
  }
  return out;
}

struct Globals {
  std::string format = "text";
  std::string config;
  unsigned threads = 1;
  bool timings = false;
};

struct Options {
  std::string word, ring = "Z", kind, index, group, target, family, element, alphas, presentation, relators, small;
  std::vector<std::string> targets;
  unsigned rank = 0, cutoff = 0, n = 0, s = 1, k = 0, levels = 64, max_level = 4, N = 0;
  std::uint32_t p = 0;
  std::string character_case;
  bool list = false;
};

using Handler = std::function<int(const Options&, const Limits&, Report&, Echo&)>;

std::uint32_t require_p(const Options& o) {
  if (o.p == 0) throw Error(ErrorKind::Parse, "--p is required");
  return o.p;
}

void add_matrix(Report& r, const std::string& key, const UniMat& m) { r.add(key, m.to_string()); }

int do_magnus(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const Word w = Word::parse(o.word, o.rank);
  const RingSpec ring = RingSpec::parse(o.ring);
  if (w.length() > limits.max_word_length) throw Error(ErrorKind::TooLarge, "word longer than max_word_length");
  e.opt("word", w.to_string());
  if (o.rank) e.opt("rank", o.rank);
  e.opt("ring", ring.to_string());
  const unsigned rank = std::max(w.rank(), 1u);
  if (!o.index.empty()) {
    const MultiIndex idx = MultiIndex::parse(o.index);
    e.opt("index", idx.to_string());
    r.add("word", w.to_string());
    r.add("ring", ring.to_string());
    r.add("index", idx.to_string());
    r.add("epsilon", epsilon(w, idx, ring).to_string());
    return kVerified;
  }
  if (o.cutoff > limits.max_level) throw Error(ErrorKind::TooLarge, "cutoff exceeds max_level");
  e.opt("cutoff", o.cutoff);
  r.add("word", w.to_string());
  r.add("ring", ring.to_string());
  r.add("cutoff", std::uint64_t{o.cutoff});
  r.add("series", magnus(w, rank, ring, o.cutoff).to_string());
  return kVerified;
}

FiltrationKind kind_of(const Options& o) { return FiltrationKind::parse(o.kind, o.p); }

void echo_filtration(const Options& o, const Word& w, const FiltrationKind& kind, Echo& e) {
  e.opt("word", w.to_string());
  if (o.rank) e.opt("rank", o.rank);
  e.opt("kind", kind.name());
  if (kind.series != Series::LowerCentral) e.opt("p", kind.p);
  e.opt("n", o.n);
}

int do_filtration(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const Word w = Word::parse(o.word, o.rank);
  const FiltrationKind kind = kind_of(o);
  echo_filtration(o, w, kind, e);
  r.add("word", w.to_string());
  r.add("filtration", kind.to_string());
  r.add("n", std::uint64_t{o.n});
  const bool member = in_filtration(w, kind, o.n, limits);
  r.add("verdict", member ? "member" : "not a member");
  if (member) return kVerified;
  const WitnessRep rep = witness_rep(w, kind, o.n, limits);
  r.add("witness_index", rep.index.to_string());
  r.add("witness_ring", rep.ring.to_string());
  r.add("witness_corner", rep.image.at(0, rep.index.size()).str());
  return kRefuted;
}

int do_witness(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const Word w = Word::parse(o.word, o.rank);
  const FiltrationKind kind = kind_of(o);
  echo_filtration(o, w, kind, e);
  r.add("word", w.to_string());
  r.add("filtration", kind.to_string());
  r.add("n", std::uint64_t{o.n});
  try {
    const WitnessRep rep = witness_rep(w, kind, o.n, limits);
    r.add("index", rep.index.to_string());
    r.add("ring", rep.ring.to_string());
    add_matrix(r, "image", rep.image);
    if (rep.embedded) add_matrix(r, "embedded", *rep.embedded);
    return kVerified;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NoWitness) throw;
    r.add("verdict", "no witness: the word lies in the filtration term");
    return kRefuted;
  }
}

int do_series(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const FinGroup g = parse_group(o.group, limits);
  FiltrationKind kind = FiltrationKind::parse(o.kind, o.p);
  e.opt("group", o.group);
  e.opt("kind", kind.name());
  if (kind.series != Series::LowerCentral) e.opt("p", kind.p);
  if (o.levels != 64) e.opt("levels", o.levels);
  const SeriesTable t = series(g, kind, o.levels);
  r.add("group", g.name());
  r.add("order", std::uint64_t{g.order()});
  r.add("filtration", kind.to_string());
  for (std::size_t i = 0; i < t.levels.size(); ++i)
    r.add("level_" + std::to_string(i + 1), std::uint64_t{t.levels[i].size()});
  r.add("reached_trivial", t.reached_trivial);
  if (t.reached_trivial) r.add("trivial_from_level", std::uint64_t{t.levels.size()});
  r.add("stabilized", t.stabilized);
  return kVerified;
}

int do_homs(const Options& o, const Limits& limits, Report& r, Echo& e) {
  Presentation pres;
  if (!o.presentation.empty()) {
    std::ifstream in(o.presentation);
    if (!in) throw Error(ErrorKind::Parse, "cannot open presentation '" + o.presentation + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    pres = Presentation::parse(buf.str());
    e.opt("presentation", o.presentation);
  } else {
    pres.rank = o.rank;
    std::stringstream ss(o.relators);
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!no_spaces(item).empty()) pres.relators.push_back(Word::parse(item, o.rank));
    std::string canon;
    for (const Word& w : pres.relators) canon += (canon.empty() ? "" : ";") + w.to_string();
    e.opt("rank", o.rank);
    if (!canon.empty()) e.opt("relators", canon);
  }
  const FinGroup h = parse_group(o.target, limits);
  e.opt("target", o.target);
  if (o.list) e.flag("list");
  r.add("rank", std::uint64_t{pres.rank});
  r.add("relators", std::uint64_t{pres.relators.size()});
  r.add("target", h.name());
  r.add("target_order", std::uint64_t{h.order()});
  std::vector<std::string> listed;
  const std::uint64_t count = for_each_hom(pres, h, [&](std::span<const Elem> im) {
    if (o.list) listed.push_back(join_index_list(std::vector<Elem>(im.begin(), im.end()), h));
    return true;
  }, limits);
  r.add("homomorphisms", count);
  for (std::size_t i = 0; i < listed.size(); ++i) r.add("hom_" + std::to_string(i + 1), listed[i]);
  return kVerified;
}

int do_conjugator(const Options& o, const Limits&, Report& r, Echo& e) {
  const ConjugationTarget target = ConjugationTarget::parse(o.target);
  const std::uint32_t p = require_p(o);
  e.opt("target", target.to_string());
  e.opt("p", p);
  e.opt("s", o.s);
  const UniMat a = solve_conjugation(target, p, o.s);
  const RingSpec field = RingSpec::prime_field(p);
  const UniMat b = UniMat::jordan(a.size(), field);
  r.add("target", target.to_string());
  r.add("p", std::uint64_t{p});
  r.add("s", std::uint64_t{o.s});
  r.add("size", std::uint64_t{a.size()});
  add_matrix(r, "A", a);
  r.add("order_A", order(a));
  const std::int64_t t = target.exponent(p);
  r.add("exponent", std::to_string(t));
  const bool ok = a * b * a.inverse() == b.pow(t);
  r.add("conjugation_holds", ok);
  return ok ? kVerified : kRefuted;
}

int do_family(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const FamilyParams params = FamilyParams::parse(o.family);
  e.opt("family", params.to_string());
  const Family fam = build_family(params, limits);
  r.add("family", params.to_string());
  r.add("order", std::uint64_t{fam.group.order()});
  std::string gens;
  for (std::size_t i = 0; i < fam.generator_names.size(); ++i)
    gens += (i ? " " : "") + fam.generator_names[i] + "=" + fam.group.format(fam.group.generator(i));
  r.add("generators", gens);
  std::uint64_t exponent = 1;
  for (Elem x = 0; x < fam.group.order(); ++x) exponent = std::max(exponent, fam.group.element_order(x));
  r.add("exponent", exponent);
  r.add("abelian", fam.group.is_abelian());
  return kVerified;
}

int do_separate(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const FamilyParams params = FamilyParams::parse(o.family);
  const Family fam = build_family(params, limits);
  Code code;
  std::stringstream ss(no_spaces(o.element));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "element must be a comma-separated coordinate list");
    code.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  const auto u = fam.group.find(code);
  if (!u) throw Error(ErrorKind::Parse, "element " + o.element + " is not in " + params.to_string());
  e.opt("family", params.to_string());
  std::string canon;
  for (std::size_t i = 0; i < code.size(); ++i) canon += (i ? "," : "") + std::to_string(code[i]);
  e.opt("element", canon);
  r.add("family", params.to_string());
  r.add("element", fam.group.format(*u));
  try {
    const SeparatingRep rep = separating_rep(fam, *u);
    r.add("size", std::uint64_t{rep.size});
    r.add("case", rep.outer_case ? "outer" : "inner");
    for (std::size_t i = 0; i < rep.generator_images.size(); ++i)
      add_matrix(r, "rho(" + fam.generator_names[i] + ")", rep.generator_images[i]);
    add_matrix(r, "rho(u)", rep.image_of_u);
    r.add("homomorphism", rep.homomorphism);
    const bool ok = rep.homomorphism && !rep.image_of_u.is_identity();
    r.add("separates", ok);
    return ok ? kVerified : kRefuted;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NoWitness) throw;
    r.add("verdict", "the identity cannot be separated");
    return kRefuted;
  }
}

int do_kernel_verify(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const FamilyParams params = FamilyParams::parse(o.family);
  e.opt("family", params.to_string());
  e.opt("n", o.n);
  const KernelReport k = verify_kernel_property(params, o.n, limits);
  r.add("family", params.to_string());
  r.add("n", std::uint64_t{o.n});
  r.add("quotient", k.quotient);
  r.add("quotient_order", std::uint64_t{k.group_order});
  r.add("target_size", std::uint64_t{k.target_size});
  r.add("zassenhaus_level_n_trivial", k.zassenhaus_trivial);
  r.add("nontrivial_elements", std::uint64_t{k.nontrivial});
  r.add("separated", std::uint64_t{k.separated});
  r.add("representations_are_homs", k.reps_are_homs);
  r.add("verdict", k.holds() ? "kernel n-unipotent property holds" : "kernel n-unipotent property FAILS");
  return k.holds() ? kVerified : kRefuted;
}

std::uint32_t massey_p(const Options& o, const FinGroup& g) { return o.p ? o.p : smallest_prime_factor(g.order()); }

void report_verdict(Report& r, const MasseyVerdict& v, const std::string& prefix) {
  r.add(prefix + "verdict", to_string(v.status));
  r.add(prefix + "bar_homs", v.bar_homs);
  r.add(prefix + "liftable", v.liftable);
}

int do_massey(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const FinGroup g = parse_group(o.group, limits);
  const std::uint32_t p = massey_p(o, g);
  const auto alphas = parse_alphas(o.alphas, g, p, o.n);
  e.opt("group", o.group);
  e.opt("alphas", o.alphas);
  e.opt("n", o.n);
  if (o.p) e.opt("p", o.p);
  const MasseyVerdict v = dwyer_search(g, alphas, p, limits);
  r.add("group", g.name());
  r.add("p", std::uint64_t{p});
  r.add("n", std::uint64_t{o.n});
  report_verdict(r, v, "");
  r.add("nodes", v.nodes);
  if (v.witness)
    for (std::size_t i = 0; i < v.witness->size(); ++i)
      r.add("witness_g" + std::to_string(i + 1), BarUniMat((*v.witness)[i]).to_string());
  if (v.lift)
    for (std::size_t i = 0; i < v.lift->size(); ++i) add_matrix(r, "lift_g" + std::to_string(i + 1), (*v.lift)[i]);
  return v.status == MasseyStatus::Undefined ? kRefuted : kVerified;
}

int do_cross_check(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const FinGroup g = parse_group(o.group, limits);
  const std::uint32_t p = massey_p(o, g);
  const auto alphas = parse_alphas(o.alphas, g, p, o.n);
  e.opt("group", o.group);
  e.opt("alphas", o.alphas);
  e.opt("n", o.n);
  if (o.p) e.opt("p", o.p);
  const CrossCheck c = cross_check(g, alphas, p, limits);
  r.add("group", g.name());
  r.add("p", std::uint64_t{p});
  r.add("n", std::uint64_t{o.n});
  report_verdict(r, c.dwyer, "dwyer_");
  r.add("cochain_verdict", to_string(c.cochain_status));
  r.add("defining_systems", c.defining_systems);
  r.add("correspondence", c.correspondence);
  r.add("agree", c.agree());
  return c.agree() ? kVerified : kRefuted;
}

int do_embed(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const std::uint32_t p = require_p(o);
  if (!o.character_case.empty()) {
    const CharacterCase c = parse_character_case(o.character_case);
    e.opt("case", to_string(c));
    e.opt("p", p);
    e.opt("s", o.s);
    e.opt("k", o.k);
    const PowerCharacterRep rep = power_character_rep(p, o.s, o.k, c, limits);
    r.add("case", to_string(c));
    r.add("group", rep.group.name());
    r.add("order", std::uint64_t{rep.group.order()});
    for (std::size_t i = 0; i < rep.generator_images.size(); ++i) {
      add_matrix(r, "rho(" + rep.generator_names[i] + ")", rep.generator_images[i]);
      r.add("chi(" + rep.generator_names[i] + ")", std::uint64_t{rep.chi[i]});
    }
    r.add("homomorphism", rep.homomorphism);
    r.add("superdiagonal_is_chi", rep.superdiagonal_is_chi);
    return rep.homomorphism && rep.superdiagonal_is_chi ? kVerified : kRefuted;
  }
  const SmallGroup which = parse_small_group(o.small);
  e.opt("group", to_string(which));
  e.opt("p", p);
  const EmbeddingReport rep = minimal_embedding(which, p, limits);
  r.add("group", rep.group.name());
  r.add("order", std::uint64_t{rep.group.order()});
  r.add("size", std::uint64_t{rep.size});
  for (std::size_t i = 0; i < rep.generator_images.size(); ++i)
    add_matrix(r, "image_g" + std::to_string(i + 1), rep.generator_images[i]);
  r.add("homomorphism", rep.homomorphism);
  r.add("injective", rep.injective);
  r.add("image_order", std::uint64_t{rep.image_order});
  r.add("scanned_below", rep.below.group_order);
  r.add("exponent_below", rep.below.exponent);
  r.add("minimal", rep.minimal);
  return rep.homomorphism && rep.injective && rep.minimal ? kVerified : kRefuted;
}

int do_appendix(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const std::uint32_t p = require_p(o);
  std::vector<FinGroup> targets;
  for (const std::string& t : o.targets) targets.push_back(parse_group(t, limits));
  e.opt("p", p);
  e.opt("N", o.N);
  for (const std::string& t : o.targets) e.opt("target", t);
  const unsigned n = o.n ? o.n : 3;
  if (o.n) e.opt("n", o.n);
  const AppendixInstance inst = build_instance(p, o.N, std::move(targets));
  const ViolationReport v = violates_kernel_property(inst, n, limits);
  r.add("p", std::uint64_t{p});
  r.add("N", std::uint64_t{o.N});
  r.add("n", std::uint64_t{n});
  r.add("relators", std::uint64_t{inst.presentation.relators.size()});
  r.add("witness", "[x1,x2]");
  r.add("not_in_G3", v.g3.not_in_g3);
  r.add("functional_certifies", v.g3.functional_certifies);
  r.add("in_kernel_filtration", v.kernel.in_kernel);
  for (std::size_t i = 0; i < v.kernel.targets.size(); ++i) {
    const TargetCheck& t = v.kernel.targets[i];
    const std::string key = "target_" + std::to_string(i + 1);
    r.add(key, t.name);
    r.add(key + "_order", std::uint64_t{t.order});
    r.add(key + "_homs", t.hom_count ? std::to_string(*t.hom_count) : std::string("skipped (budget)"));
    if (t.counterexample) r.add(key + "_separating_images", join_index_list(*t.counterexample, inst.targets[i]));
  }
  switch (v.verdict) {
    case AppendixVerdict::Violates:
      r.add("verdict", "kernel " + std::to_string(n) + "-unipotent property FAILS");
      return kVerified;
    case AppendixVerdict::Inconclusive:
      r.add("verdict", "Inconclusive: N does not exceed the target order");
      return kRefuted;
    case AppendixVerdict::NotViolated:
      r.add("verdict", "no violation exhibited");
      return kRefuted;
  }
  return kRefuted;
}

int do_compare(const Options& o, const Limits& limits, Report& r, Echo& e) {
  const FinGroup g = parse_group(o.group, limits);
  const std::uint32_t p = require_p(o);
  e.opt("group", o.group);
  e.opt("p", p);
  if (o.max_level != 4) e.opt("max-level", o.max_level);
  const FiltrationReport f = compare_filtrations(g, p, o.max_level, limits);
  r.add("group", g.name());
  r.add("order", std::uint64_t{g.order()});
  r.add("p", std::uint64_t{p});
  for (std::size_t i = 0; i < f.pcentral_in_zassenhaus.size(); ++i)
    r.add("pcentral_" + std::to_string(i + 1) + "_in_zassenhaus_" + std::to_string(i + 1), bool(f.pcentral_in_zassenhaus[i]));
  r.add("zassenhaus_p+1_in_pcentral_3", f.zassenhaus_p1_in_pcentral3);
  if (f.equal_at_3) r.add("pcentral_3_equals_zassenhaus_3", *f.equal_at_3);
  if (f.zassenhaus_in_kernel) {
    r.add("kernel_filtration_order", std::uint64_t{f.kernel_size});
    r.add("zassenhaus_p+1_in_kernel", *f.zassenhaus_in_kernel);
    r.add("kernel_in_pcentral_3", *f.kernel_in_pcentral3);
  } else {
    r.add("kernel_filtration", "skipped (budget)");
  }
  r.add("all_hold", f.all_hold());
  return f.all_hold() ? kVerified : kRefuted;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooLarge: return kBudget;
    case ErrorKind::NoWitness: return kRefuted;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with filtrations, unipotent representations and Massey products", "ulab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("ulab ") + kVersion);
  Globals globals;
  Options o;
  app.add_option("--format", globals.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--config", globals.config, "JSON file with size and search limits");
  app.add_option("--threads", globals.threads, "worker cap")->check(CLI::PositiveNumber);
  app.add_flag("--timings", globals.timings, "append elapsed time to the report");

  std::vector<std::pair<CLI::App*, Handler>> verbs;
  auto verb = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    verbs.emplace_back(sub, std::move(h));
    return sub;
  };

  auto* magnus_cmd = verb("magnus", "Magnus expansion of a word", do_magnus);
  magnus_cmd->add_option("--word", o.word)->required();
  magnus_cmd->add_option("--rank", o.rank);
  magnus_cmd->add_option("--ring", o.ring);
  magnus_cmd->add_option("--cutoff", o.cutoff);
  magnus_cmd->add_option("--index", o.index, "print one coefficient, e.g. (1,2)");

  for (auto [name, handler] : {std::pair<const char*, Handler>{"filtration", do_filtration},
                               std::pair<const char*, Handler>{"witness", do_witness}}) {
    auto* c = verb(name, "filtration membership and witnesses", handler);
    c->add_option("--word", o.word)->required();
    c->add_option("--rank", o.rank);
    c->add_option("--kind", o.kind)->required();
    c->add_option("--p", o.p);
    c->add_option("--n", o.n)->required();
  }

  auto* series_cmd = verb("series", "filtration series of a finite group", do_series);
  series_cmd->add_option("--group", o.group)->required();
  series_cmd->add_option("--kind", o.kind)->required();
  series_cmd->add_option("--p", o.p);
  series_cmd->add_option("--levels", o.levels);

  auto* homs_cmd = verb("homs", "enumerate homomorphisms from a presentation", do_homs);
  homs_cmd->add_option("--presentation", o.presentation);
  homs_cmd->add_option("--rank", o.rank);
  homs_cmd->add_option("--relators", o.relators, "relators separated by ';'");
  homs_cmd->add_option("--target", o.target)->required();
  homs_cmd->add_flag("--list", o.list);

  auto* conj_cmd = verb("conjugator", "A with A B A^-1 a prescribed power of B", do_conjugator);
  conj_cmd->add_option("--target", o.target)->required();
  conj_cmd->add_option("--p", o.p)->required();
  conj_cmd->add_option("--s", o.s)->required();

  auto* family_cmd = verb("family", "build a parametric group", do_family);
  family_cmd->add_option("--family", o.family)->required();

  auto* sep_cmd = verb("separate", "separating representation for an element", do_separate);
  sep_cmd->add_option("--family", o.family)->required();
  sep_cmd->add_option("--element", o.element)->required();

  auto* kv_cmd = verb("kernel-verify", "kernel n-unipotent property on a quotient", do_kernel_verify);
  kv_cmd->add_option("--family", o.family)->required();
  kv_cmd->add_option("--n", o.n)->required();

  for (auto [name, handler] : {std::pair<const char*, Handler>{"massey", do_massey},
                               std::pair<const char*, Handler>{"cross-check", do_cross_check}}) {
    auto* c = verb(name, "Massey products", handler);
    c->add_option("--group", o.group)->required();
    c->add_option("--alphas", o.alphas, "characters: id, neg, zero or values a:b:... on generators")->required();
    c->add_option("--n", o.n)->required();
    c->add_option("--p", o.p);
  }

  auto* embed_cmd = verb("embed", "embeddings into U_{p+1}(F_p) and power-character representations", do_embed);
  embed_cmd->add_option("--group", o.small, "zp2 or mp3");
  embed_cmd->add_option("--case", o.character_case, "0, 1 or 2");
  embed_cmd->add_option("--p", o.p)->required();
  embed_cmd->add_option("--s", o.s);
  embed_cmd->add_option("--k", o.k);

  CLI::App* appendix_cmd = app.add_subcommand("appendix", "commutator counterexamples");
  appendix_cmd->require_subcommand(1);
  appendix_cmd->fallthrough();
  CLI::App* verify_cmd = appendix_cmd->add_subcommand("verify", "check an instance");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--p", o.p)->required();
  verify_cmd->add_option("--N", o.N)->required();
  verify_cmd->add_option("--target", o.targets)->required();
  verify_cmd->add_option("--n", o.n);
  verbs.emplace_back(verify_cmd, do_appendix);

  auto* cmp_cmd = verb("compare", "compare p-central and Zassenhaus filtrations", do_compare);
  cmp_cmd->add_option("--group", o.group)->required();
  cmp_cmd->add_option("--p", o.p)->required();
  cmp_cmd->add_option("--max-level", o.max_level);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "ulab " << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Limits limits = globals.config.empty() ? limits_from_environment() : load_limits(globals.config);
    limits.threads = std::min(limits.threads, globals.threads);
    for (auto& [sub, handler] : verbs) {
      if (!sub->parsed()) continue;
      const std::string name = sub == verify_cmd ? "appendix verify" : sub->get_name();
      Echo echo(name);
      Report body;
      const auto start = std::chrono::steady_clock::now();
      const int code = handler(o, limits, body, echo);
      const auto stop = std::chrono::steady_clock::now();
      Report report;
      report.add("tool", std::string("ulab ") + kVersion);
      report.add("command", echo.str());
      std::istringstream lines(body.text());
      std::string line;
      while (std::getline(lines, line)) {
        const auto colon = line.find(": ");
        report.add(line.substr(0, colon), line.substr(colon + 2));
      }
      if (globals.timings)
        report.add("elapsed_ms",
                   std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count()));
      report.add("exit", std::to_string(code));
      out << (globals.format == "json" ? report.json() : report.text());
      return code;
    }
    err << "error: no command\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace ulab::cli
