#include "ulab/freewords.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "ulab/error.hpp"

namespace ulab {

// ---- Word ----

Word::Word(unsigned rank, std::vector<Letter> letters) : rank_(rank) {
  for (const Letter& l : letters) {
    if (l.gen < 1 || l.gen > rank)
      throw Error(ErrorKind::BadWord, "generator x" + std::to_string(l.gen) + " outside rank " +
                                          std::to_string(rank));
    if (l.exp == 0) continue;
    if (!letters_.empty() && letters_.back().gen == l.gen) {
      letters_.back().exp += l.exp;
      if (letters_.back().exp == 0) letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::generator(unsigned rank, unsigned gen, std::int64_t exp) {
  return Word(rank, {Letter{gen, exp}});
}

std::uint64_t Word::length() const {
  std::uint64_t total = 0;
  for (const Letter& l : letters_) total += static_cast<std::uint64_t>(std::llabs(l.exp));
  return total;
}

Word Word::operator*(const Word& o) const {
  if (rank_ != o.rank_)
    throw Error(ErrorKind::BadWord, "rank mismatch " + std::to_string(rank_) + " vs " +
                                        std::to_string(o.rank_));
  std::vector<Letter> all = letters_;
  all.insert(all.end(), o.letters_.begin(), o.letters_.end());
  return Word(rank_, std::move(all));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->gen, -it->exp});
  return Word(rank_, std::move(out));
}

Word Word::pow(std::int64_t e) const {
  Word base = e < 0 ? inverse() : *this;
  Word result(rank_);
  for (std::uint64_t k = e < 0 ? -static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(e); k;
       k >>= 1) {
    if (k & 1) result = result * base;
    if (k > 1) base = base * base;
  }
  return result;
}

Word Word::with_rank(unsigned rank) const {
  if (rank < rank_) {
    for (const Letter& l : letters_)
      if (l.gen > rank) throw Error(ErrorKind::BadWord, "word uses generators beyond new rank");
  }
  return Word(rank, letters_);
}

std::string Word::to_string() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (const Letter& l : letters_) {
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(l.gen);
    if (l.exp != 1) s += '^' + std::to_string(l.exp);
  }
  return s;
}

Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

namespace {

// Recursive descent over the word grammar. Words are built at a provisional
// rank large enough for every generator and re-ranked at the end.
class WordParser {
 public:
  explicit WordParser(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) src_ += c;
  }

  Word parse_all() {
    if (src_.empty()) fail("empty word");
    Word w = product();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return w;
  }

  unsigned max_gen() const { return max_gen_; }

 private:
  static constexpr unsigned kWorkRank = 1u << 16;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, what + " in word '" + src_ + "'");
  }
  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::int64_t integer() {
    std::size_t start = pos_;
    if (peek('-') || peek('+')) ++pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::int64_t v = 0;
    const char* b = src_.data() + start + (src_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(b, src_.data() + pos_, v);
    if (ec != std::errc{} || ptr != src_.data() + pos_) fail("bad integer");
    return v;
  }

  Word product() {
    Word w = power();
    while (pos_ < src_.size() && src_[pos_] != ')' && src_[pos_] != ']' && src_[pos_] != ',') {
      if (peek('*')) ++pos_;
      w = w * power();
    }
    return w;
  }

  Word power() {
    Word base = atom();
    while (peek('^')) {
      ++pos_;
      base = base.pow(integer());
    }
    return base;
  }

  Word atom() {
    if (peek('(')) {
      ++pos_;
      Word w = product();
      expect(')');
      return w;
    }
    if (peek('[')) {
      ++pos_;
      Word w = product();
      expect(',');
      do {
        w = commutator(w, product());
      } while (peek(',') && (++pos_, true));
      expect(']');
      return w;
    }
    if (peek('e')) {
      ++pos_;
      return Word(kWorkRank);
    }
    if (peek('x')) {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      unsigned gen = 0;
      auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, gen);
      if (ec != std::errc{} || start == pos_ || gen == 0 || gen >= kWorkRank)
        fail("bad generator index");
      max_gen_ = std::max(max_gen_, gen);
      return Word::generator(kWorkRank, gen);
    }
    if (pos_ >= src_.size()) fail("unexpected end");
    fail("unexpected '" + std::string(1, src_[pos_]) + "'");
  }

  std::string src_;
  std::size_t pos_ = 0;
  unsigned max_gen_ = 0;
};

}  // namespace

Word Word::parse(std::string_view text, unsigned rank) {
  WordParser parser(text);
  Word w = parser.parse_all();
  if (rank == 0) rank = parser.max_gen();
  if (parser.max_gen() > rank)
    throw Error(ErrorKind::BadWord, "word uses x" + std::to_string(parser.max_gen()) +
                                        " but rank is " + std::to_string(rank));
  return Word(rank, w.letters());
}

// ---- filtrations ----

FiltrationKind FiltrationKind::zassenhaus(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParams, "p must be prime");
  return {Series::Zassenhaus, p};
}

FiltrationKind FiltrationKind::p_central(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParams, "p must be prime");
  return {Series::PCentral, p};
}

FiltrationKind FiltrationKind::parse(std::string_view name, std::uint32_t p) {
  if (name == "lower-central" || name == "lower") return lower_central();
  if (name == "zassenhaus") return zassenhaus(p);
  if (name == "p-central" || name == "pcentral") return p_central(p);
  throw Error(ErrorKind::Parse, "unknown filtration '" + std::string(name) + "'");
}

std::string FiltrationKind::name() const {
  switch (series) {
    case Series::LowerCentral: return "lower-central";
    case Series::Zassenhaus: return "zassenhaus";
    case Series::PCentral: return "p-central";
  }
  return "?";
}

std::string FiltrationKind::to_string() const {
  return series == Series::LowerCentral ? name() : name() + ":" + std::to_string(p);
}

RingSpec coefficient_ring(const FiltrationKind& kind, unsigned n) {
  switch (kind.series) {
    case Series::LowerCentral: return RingSpec::integers();
    case Series::Zassenhaus: return RingSpec::prime_field(kind.p);
    case Series::PCentral: return RingSpec::mod_prime_power(kind.p, std::max(1u, n));
  }
  return RingSpec::integers();
}

namespace {

void check_limits(const Word& w, unsigned n, const Limits& limits) {
  if (n > limits.max_level)
    throw Error(ErrorKind::TooLarge, "level " + std::to_string(n) + " exceeds max_level " +
                                         std::to_string(limits.max_level));
  if (w.length() > limits.max_word_length)
    throw Error(ErrorKind::TooLarge, "word length " + std::to_string(w.length()) +
                                         " exceeds max_word_length " +
                                         std::to_string(limits.max_word_length));
}

bool violates(const FiltrationKind& kind, unsigned n, std::size_t length, const Int& coeff) {
  if (coeff == 0) return false;
  if (kind.series != Series::PCentral) return true;
  // Residue mod p^n is nonzero, so its valuation is finite and < n.
  return *val_p(coeff, kind.p) < n - length;
}

std::optional<std::pair<MultiIndex, Int>> first_violation(const Word& w,
                                                          const FiltrationKind& kind,
                                                          unsigned n) {
  if (n <= 1 || w.rank() == 0) return std::nullopt;
  const NCSeries series = magnus(w, w.rank(), coefficient_ring(kind, n), n - 1);
  for (const auto& [index, coeff] : series.terms()) {
    if (index.empty()) continue;
    if (violates(kind, n, index.size(), coeff)) return std::make_pair(index, coeff);
  }
  return std::nullopt;
}

}  // namespace

bool in_filtration(const Word& w, const FiltrationKind& kind, unsigned n, const Limits& limits) {
  check_limits(w, n, limits);
  return !first_violation(w, kind, n).has_value();
}

UniMat rho_I(const Word& w, const MultiIndex& index, const RingSpec& spec) {
  const std::size_t k = index.size();
  UniMat result = UniMat::identity(k + 1, spec);
  for (const Letter& l : w.letters()) {
    SquareMatrix image = SquareMatrix::identity(k + 1, spec);
    bool touched = false;
    for (std::size_t mu = 0; mu < k; ++mu) {
      if (index[mu] == l.gen) {
        image.set(mu, mu + 1, 1);
        touched = true;
      }
    }
    if (touched) result = result * UniMat(std::move(image)).pow(l.exp);
  }
  return result;
}

UniMat rho_I_from_series(const Word& w, const MultiIndex& index, const RingSpec& spec) {
  const std::size_t k = index.size();
  unsigned rank = w.rank();
  for (auto g : index.entries) rank = std::max<unsigned>(rank, g);
  const Word wide = w.with_rank(rank);
  const NCSeries series = magnus(wide, rank, spec, static_cast<unsigned>(k));
  SquareMatrix m = SquareMatrix::identity(k + 1, spec);
  for (std::size_t mu = 0; mu < k; ++mu)
    for (std::size_t nu = mu + 1; nu <= k; ++nu) m.set(mu, nu, series.coeff(index.slice(mu, nu)).value());
  return UniMat(std::move(m));
}

WitnessRep witness_rep(const Word& w, const FiltrationKind& kind, unsigned n, const Limits& limits) {
  check_limits(w, n, limits);
  const auto hit = first_violation(w, kind, n);
  if (!hit)
    throw Error(ErrorKind::NoWitness, w.to_string() + " lies in level " + std::to_string(n) +
                                          " of the " + kind.name() + " filtration");
  const MultiIndex& index = hit->first;
  const unsigned k = static_cast<unsigned>(index.size());
  WitnessRep rep;
  rep.index = index;
  rep.ring = kind.series == Series::PCentral ? RingSpec::mod_prime_power(kind.p, n - k)
                                              : coefficient_ring(kind, n);
  rep.image = rho_I(w, index, rep.ring);
  if (rep.image.at(0, k) == 0) throw std::logic_error("witness corner vanished");
  if (kind.series != Series::PCentral) rep.embedded = embed_top_left(rep.image, n);
  return rep;
}

}  // namespace ulab
