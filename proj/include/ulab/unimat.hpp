#pragma once

// Unipotent matrix algebra over residue rings: the shift X, the truncated
// algebra K[X], conjugators realizing automorphisms of K[X], orders,
// centralizers and the quotient by the corner center.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ulab/residue.hpp"

namespace ulab {

// Square matrix over a RingSpec; entries are stored canonically reduced.
// Indices are 0-based throughout.
class SquareMatrix {
 public:
  SquareMatrix(std::size_t n, const RingSpec& spec);  // zero matrix

  static SquareMatrix identity(std::size_t n, const RingSpec& spec);
  // Rows separated by ';', entries by ','. Entries are reduced into spec.
  static SquareMatrix parse(std::string_view text, const RingSpec& spec);

  std::size_t size() const { return n_; }
  const RingSpec& spec() const { return spec_; }
  const Int& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const Int& v) { entries_[i * n_ + j] = spec_.reduce(v); }

  bool is_upper_triangular() const;
  bool is_unipotent() const;  // upper triangular with unit diagonal
  bool is_identity() const;

  SquareMatrix operator*(const SquareMatrix& o) const;
  SquareMatrix operator+(const SquareMatrix& o) const;
  SquareMatrix operator-(const SquareMatrix& o) const;
  SquareMatrix scaled(const Int& c) const;

  // Upper triangular with invertible diagonal; back substitution.
  SquareMatrix inverse_upper() const;

  std::string to_string() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_;
  RingSpec spec_;
  std::vector<Int> entries_;
};

// Upper unitriangular matrix; the invariant is checked on construction.
class UniMat {
 public:
  explicit UniMat(SquareMatrix m);

  static UniMat identity(std::size_t n, const RingSpec& spec);
  static UniMat parse(std::string_view text, const RingSpec& spec);
  // 1 + value * e_{ij}, i < j.
  static UniMat elementary(std::size_t n, const RingSpec& spec, std::size_t i, std::size_t j,
                           const Int& value = 1);
  // B = 1 + X with X the superdiagonal shift.
  static UniMat jordan(std::size_t n, const RingSpec& spec);

  std::size_t size() const { return m_.size(); }
  const RingSpec& spec() const { return m_.spec(); }
  const Int& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }
  const SquareMatrix& matrix() const { return m_; }
  bool is_identity() const { return m_.is_identity(); }

  UniMat operator*(const UniMat& o) const;
  UniMat inverse() const;
  UniMat pow(std::int64_t e) const;

  std::string to_string() const { return m_.to_string(); }

  friend bool operator==(const UniMat&, const UniMat&) = default;

 private:
  SquareMatrix m_;
};

// Least m >= 1 with A^m = 1. Throws NoFiniteOrder over the integers unless A = 1.
std::uint64_t order(const UniMat& a);

// Dense row-major uint32 residues (finite specs only) and back.
std::vector<std::uint32_t> to_code(const UniMat& a);
UniMat from_code(std::span<const std::uint32_t> code, std::size_t n, const RingSpec& spec);

// M (size k+1) placed in the top-left corner of the n x n identity.
UniMat embed_top_left(const UniMat& m, std::size_t n);

// U_{n+1} modulo the corner center Z_{n+1}: the (0, n) entry is dropped.
class BarUniMat {
 public:
  explicit BarUniMat(const UniMat& full);

  std::size_t size() const { return rep_.size(); }
  const UniMat& representative() const { return rep_; }
  BarUniMat operator*(const BarUniMat& o) const { return BarUniMat(rep_ * o.rep_); }
  bool is_identity() const { return rep_.is_identity(); }
  std::string to_string() const;

  friend bool operator==(const BarUniMat&, const BarUniMat&) = default;

 private:
  UniMat rep_;  // corner entry held at 0
};

BarUniMat bar_project(const UniMat& m);

// Element sum_i c_i X^i of K[X] = (truncated polynomials, X^n = 0).
class KXElem {
 public:
  KXElem(std::vector<std::uint32_t> coeffs, std::size_t n, const RingSpec& spec);

  std::size_t n() const { return coeffs_.size(); }
  const RingSpec& spec() const { return spec_; }
  std::uint32_t coeff(std::size_t i) const { return coeffs_[i]; }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

  static KXElem one(std::size_t n, const RingSpec& spec);
  static KXElem x(std::size_t n, const RingSpec& spec);

  KXElem operator*(const KXElem& o) const;
  KXElem operator+(const KXElem& o) const;
  KXElem operator-(const KXElem& o) const;
  // Negative exponents go through inverse(); throws NotAUnit.
  KXElem pow(std::int64_t e) const;
  KXElem inverse() const;

  // f(X) as an n x n matrix.
  SquareMatrix to_matrix() const;

  std::string to_string() const;

  friend bool operator==(const KXElem&, const KXElem&) = default;

 private:
  std::vector<std::uint32_t> coeffs_;
  RingSpec spec_;
};

KXElem kx_eval(std::span<const std::int64_t> coeffs, std::size_t n, const RingSpec& spec);
bool kx_is_unit(const KXElem& f);

// The superdiagonal shift X of size n.
SquareMatrix shift_matrix(std::size_t n, const RingSpec& spec);

// Basis of { M : MX = XM } in Mat_n(F_p), from the reduced echelon form of the
// solution space.
std::vector<SquareMatrix> centralizer_of_X(std::size_t n, const RingSpec& spec);

// The upper triangular A with A X A^-1 = X f(X) whose last column is e_n.
// Column i is f(X)^{n-i} e_i for the basis with X e_1 = 0, X e_i = e_{i-1}.
SquareMatrix conjugator_from_automorphism(const KXElem& f);

struct ConjugationTarget {
  enum class Kind { PowerOnePlusQ, NegPowerOnePlusQ, Inverse };
  Kind kind;
  unsigned k = 0;  // unused for Inverse

  // 1 + p^k, -(1 + 2^k) or -1.
  std::int64_t exponent(std::uint32_t p) const;
  std::string to_string() const;
  static ConjugationTarget parse(std::string_view text);
};

// A in U_n(F_p), n = p^s + 1, with A B A^-1 = B^t for B = 1 + X. Requires
// p not dividing t. The conjugator is normalized (last column e_n).
UniMat conjugator_for_power(std::int64_t t, std::uint32_t p, unsigned s);

// Named targets; BadTarget for the p = 2 only targets at odd p or k = 0.
UniMat solve_conjugation(const ConjugationTarget& target, std::uint32_t p, unsigned s);

struct ExponentScan {
  std::uint64_t group_order = 0;
  std::uint64_t exponent = 0;  // lcm of element orders (a power of p)
};

// Exhaustive scan of U_n(F_p) through the batched power kernel.
ExponentScan exponent_scan(std::size_t n, std::uint32_t p, std::uint64_t max_elements);

}  // namespace ulab
