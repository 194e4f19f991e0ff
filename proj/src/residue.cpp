#include "ulab/residue.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "ulab/error.hpp"

namespace ulab {
namespace {

constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 31;

std::uint32_t parse_uint(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::Parse, "bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

RingSpec RingSpec::prime_field(std::uint32_t p) { return mod_prime_power(p, 1); }

RingSpec RingSpec::mod_prime_power(std::uint32_t p, std::uint32_t r) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParams, std::to_string(p) + " is not prime");
  if (r < 1) throw Error(ErrorKind::BadParams, "exponent r must be >= 1");
  std::uint64_t m = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    m *= p;
    if (m >= kModulusLimit)
      throw Error(ErrorKind::TooLarge, "modulus " + std::to_string(p) + "^" + std::to_string(r) +
                                           " exceeds 2^31");
  }
  return RingSpec(r == 1 ? RingKind::PrimeField : RingKind::ModPrimePower, p, r);
}

RingSpec RingSpec::integers() { return RingSpec(RingKind::Integers, 0, 0); }

RingSpec RingSpec::parse(std::string_view text) {
  text = trim(text);
  if (text == "Z") return integers();
  if (text.starts_with("Fp:")) return prime_field(parse_uint(text.substr(3), "prime"));
  if (text.starts_with("Zmod:")) {
    auto body = text.substr(5);
    auto caret = body.find('^');
    if (caret == std::string_view::npos) return mod_prime_power(parse_uint(body, "prime"), 1);
    return mod_prime_power(parse_uint(body.substr(0, caret), "prime"),
                           parse_uint(body.substr(caret + 1), "exponent"));
  }
  throw Error(ErrorKind::Parse, "unknown ring spec '" + std::string(text) + "'");
}

std::string RingSpec::to_string() const {
  if (!is_finite()) return "Z";
  if (r_ == 1) return "Fp:" + std::to_string(p_);
  return "Zmod:" + std::to_string(p_) + "^" + std::to_string(r_);
}

std::uint32_t RingSpec::modulus() const {
  if (!is_finite()) throw Error(ErrorKind::SpecMismatch, "the integers have no modulus");
  return static_cast<std::uint32_t>(ipow(p_, r_));
}

Int RingSpec::reduce(const Int& x) const {
  if (!is_finite()) return x;
  Int m = modulus();
  Int v = x % m;
  if (v < 0) v += m;
  return v;
}

std::uint32_t RingSpec::reduce_small(std::int64_t x) const {
  const std::int64_t m = modulus();
  std::int64_t v = x % m;
  if (v < 0) v += m;
  return static_cast<std::uint32_t>(v);
}

namespace {
void require_same(const RingSpec& a, const RingSpec& b) {
  if (!(a == b))
    throw Error(ErrorKind::SpecMismatch, a.to_string() + " vs " + b.to_string());
}
}  // namespace

RingElem RingElem::operator+(const RingElem& o) const {
  require_same(spec_, o.spec_);
  return RingElem(spec_, value_ + o.value_);
}

RingElem RingElem::operator-(const RingElem& o) const {
  require_same(spec_, o.spec_);
  return RingElem(spec_, value_ - o.value_);
}

RingElem RingElem::operator*(const RingElem& o) const {
  require_same(spec_, o.spec_);
  return RingElem(spec_, value_ * o.value_);
}

RingElem RingElem::operator-() const { return RingElem(spec_, -value_); }

bool RingElem::operator==(const RingElem& o) const {
  require_same(spec_, o.spec_);
  return value_ == o.value_;
}

std::string RingElem::to_string() const { return value_.str(); }

RingElem reduce(const Int& x, const RingSpec& spec) { return RingElem(spec, x); }

std::optional<unsigned> val_p(const Int& x, std::uint32_t p) {
  if (x == 0) return std::nullopt;
  Int v = x < 0 ? Int(-x) : x;
  unsigned e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

std::optional<std::uint32_t> inverse_mod(std::uint32_t a, std::uint32_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = m, new_r = a % m;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += m;
  return static_cast<std::uint32_t>(t);
}

}  // namespace ulab
