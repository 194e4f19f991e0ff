#pragma once

// Exact coefficient rings: F_p, Z/p^r and the integers.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ulab {

using Int = boost::multiprecision::cpp_int;

enum class RingKind { PrimeField, ModPrimePower, Integers };

class RingSpec {
 public:
  static RingSpec prime_field(std::uint32_t p);
  static RingSpec mod_prime_power(std::uint32_t p, std::uint32_t r);
  static RingSpec integers();

  // "Fp:3", "Zmod:3^2", "Z"
  static RingSpec parse(std::string_view text);
  std::string to_string() const;

  RingKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != RingKind::Integers; }
  bool is_field() const { return is_finite() && r_ == 1; }
  std::uint32_t p() const { return p_; }
  std::uint32_t r() const { return r_; }

  // p^r; only for finite specs. Guaranteed < 2^31.
  std::uint32_t modulus() const;

  // Canonical residue of x (identity for Integers).
  Int reduce(const Int& x) const;
  std::uint32_t reduce_small(std::int64_t x) const;

  // Fp:p and Zmod:p^1 compare equal.
  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind_class() == b.kind_class() && a.p_ == b.p_ && a.r_ == b.r_;
  }

 private:
  RingSpec(RingKind kind, std::uint32_t p, std::uint32_t r) : kind_(kind), p_(p), r_(r) {}
  int kind_class() const { return kind_ == RingKind::Integers ? 0 : 1; }

  RingKind kind_;
  std::uint32_t p_;
  std::uint32_t r_;
};

class RingElem {
 public:
  RingElem(const RingSpec& spec, const Int& value) : spec_(spec), value_(spec.reduce(value)) {}

  const RingSpec& spec() const { return spec_; }
  const Int& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;

  // Throws SpecMismatch for differing specs rather than answering false.
  bool operator==(const RingElem& o) const;

  std::string to_string() const;

 private:
  RingSpec spec_;
  Int value_;
};

RingElem reduce(const Int& x, const RingSpec& spec);

bool is_prime(std::uint64_t n);

// Largest e with p^e | x; nullopt stands for +infinity (x = 0).
std::optional<unsigned> val_p(const Int& x, std::uint32_t p);

// Inverse of a unit modulo m (m > 1); nullopt when gcd(a, m) != 1.
std::optional<std::uint32_t> inverse_mod(std::uint32_t a, std::uint32_t m);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace ulab
