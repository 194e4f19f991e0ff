#include "ulab/ncseries.hpp"

#include <algorithm>
#include <charconv>

#include "ulab/error.hpp"

namespace ulab {

MultiIndex MultiIndex::slice(std::size_t from, std::size_t to) const {
  return MultiIndex(std::vector<std::uint16_t>(entries.begin() + from, entries.begin() + to));
}

MultiIndex MultiIndex::concat(const MultiIndex& o) const {
  MultiIndex r = *this;
  r.entries.insert(r.entries.end(), o.entries.begin(), o.entries.end());
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries[i]);
  }
  return s + ")";
}

MultiIndex MultiIndex::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  std::string_view s = compact;
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  MultiIndex out;
  while (!s.empty()) {
    auto comma = s.find(',');
    auto part = s.substr(0, comma);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || v == 0 || v > 0xFFFF)
      throw Error(ErrorKind::Parse, "bad multi-index entry '" + std::string(part) + "'");
    out.entries.push_back(static_cast<std::uint16_t>(v));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.entries.size() <=> b.entries.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.entries.begin(), a.entries.end(),
                                                b.entries.begin(), b.entries.end());
}

std::vector<MultiIndex> all_indices(unsigned d, unsigned k) {
  std::vector<MultiIndex> out;
  if (d == 0) return k == 0 ? std::vector<MultiIndex>{MultiIndex{}} : out;
  std::vector<std::uint16_t> cur(k, 1);
  while (true) {
    out.emplace_back(cur);
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == d) cur[--pos] = 1;
    if (pos == 0) break;
    ++cur[pos - 1];
  }
  return out;
}

NCSeries::NCSeries(unsigned rank, unsigned cutoff, const RingSpec& spec)
    : rank_(rank), cutoff_(cutoff), spec_(spec) {}

NCSeries NCSeries::one(unsigned rank, unsigned cutoff, const RingSpec& spec) {
  NCSeries s(rank, cutoff, spec);
  s.set(MultiIndex{}, 1);
  return s;
}

NCSeries NCSeries::generator(unsigned rank, unsigned cutoff, const RingSpec& spec, unsigned gen) {
  if (gen < 1 || gen > rank)
    throw Error(ErrorKind::BadWord, "generator x" + std::to_string(gen) + " outside rank " +
                                        std::to_string(rank));
  NCSeries s = one(rank, cutoff, spec);
  s.set(MultiIndex{static_cast<std::uint16_t>(gen)}, 1);
  return s;
}

RingElem NCSeries::coeff(const MultiIndex& index) const {
  auto it = terms_.find(index);
  return RingElem(spec_, it == terms_.end() ? Int(0) : it->second);
}

void NCSeries::set(const MultiIndex& index, const Int& value) {
  if (index.size() > cutoff_) return;
  Int v = spec_.reduce(value);
  if (v == 0) terms_.erase(index);
  else terms_[index] = std::move(v);
}

void NCSeries::add(const MultiIndex& index, const Int& value) {
  if (index.size() > cutoff_) return;
  auto it = terms_.find(index);
  if (it == terms_.end()) {
    set(index, value);
    return;
  }
  Int v = spec_.reduce(it->second + value);
  if (v == 0) terms_.erase(it);
  else it->second = std::move(v);
}

std::string NCSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [index, value] : terms_) {
    const bool negative = value < 0;
    const std::string magnitude = (negative ? Int(-value) : value).str();
    if (first) out += negative ? "-" + magnitude : magnitude;
    else out += (negative ? " - " : " + ") + magnitude;
    first = false;
    if (index.empty()) continue;
    out += '*';
    for (auto g : index.entries) out += "X" + std::to_string(g);
  }
  return out;
}

namespace {
void require_compatible(const NCSeries& a, const NCSeries& b) {
  if (a.rank() != b.rank() || a.cutoff() != b.cutoff() || !(a.spec() == b.spec()))
    throw Error(ErrorKind::SpecMismatch, "series shapes differ");
}
}  // namespace

NCSeries nc_mul(const NCSeries& a, const NCSeries& b) {
  require_compatible(a, b);
  NCSeries out(a.rank(), a.cutoff(), a.spec());
  std::map<MultiIndex, Int> acc;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      if (ia.size() + ib.size() > a.cutoff()) break;  // b iterates by increasing degree
      acc[ia.concat(ib)] += ca * cb;
    }
  }
  for (auto& [index, value] : acc) out.set(index, value);
  return out;
}

NCSeries nc_invert(const NCSeries& a) {
  const RingSpec& spec = a.spec();
  const Int c0 = a.constant().value();
  Int c0_inv;
  if (spec.is_finite()) {
    auto inv = inverse_mod(static_cast<std::uint32_t>(c0), spec.modulus());
    if (!inv) throw Error(ErrorKind::NotAUnit, "constant term " + c0.str() + " is not a unit");
    c0_inv = *inv;
  } else {
    if (c0 != 1 && c0 != -1)
      throw Error(ErrorKind::NotAUnit, "constant term " + c0.str() + " is not a unit in Z");
    c0_inv = c0;
  }
  // a = c0 (1 + N) with N = c0^-1 (a - c0); a^-1 = c0^-1 sum_k (-N)^k.
  NCSeries minus_n(a.rank(), a.cutoff(), spec);
  for (const auto& [index, value] : a.terms())
    if (!index.empty()) minus_n.set(index, -c0_inv * value);
  NCSeries sum = NCSeries::one(a.rank(), a.cutoff(), spec);
  NCSeries power = sum;
  for (unsigned k = 1; k <= a.cutoff(); ++k) {
    power = nc_mul(power, minus_n);
    if (power.terms().empty()) break;
    for (const auto& [index, value] : power.terms()) sum.add(index, value);
  }
  NCSeries out(a.rank(), a.cutoff(), spec);
  for (const auto& [index, value] : sum.terms()) out.set(index, c0_inv * value);
  return out;
}

NCSeries nc_pow(const NCSeries& a, std::uint64_t e) {
  NCSeries result = NCSeries::one(a.rank(), a.cutoff(), a.spec());
  NCSeries base = a;
  while (e) {
    if (e & 1) result = nc_mul(result, base);
    e >>= 1;
    if (e) base = nc_mul(base, base);
  }
  return result;
}

NCSeries magnus(const Word& w, unsigned rank, const RingSpec& spec, unsigned cutoff) {
  NCSeries out = NCSeries::one(rank, cutoff, spec);
  for (const auto& letter : w.letters()) {
    NCSeries binomial = NCSeries::generator(rank, cutoff, spec, letter.gen);
    const std::uint64_t magnitude =
        letter.exp < 0 ? static_cast<std::uint64_t>(-letter.exp) : static_cast<std::uint64_t>(letter.exp);
    NCSeries factor = nc_pow(letter.exp < 0 ? nc_invert(binomial) : binomial, magnitude);
    out = nc_mul(out, factor);
  }
  return out;
}

RingElem epsilon(const Word& w, const MultiIndex& index, const RingSpec& spec) {
  if (index.empty()) return RingElem(spec, 1);
  const unsigned rank = std::max<unsigned>(w.rank(), *std::max_element(index.entries.begin(),
                                                                        index.entries.end()));
  return magnus(w, rank, spec, static_cast<unsigned>(index.size())).coeff(index);
}

}  // namespace ulab
