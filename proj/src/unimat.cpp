#include "ulab/unimat.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "ulab/error.hpp"
#include "ulab/modlinalg.hpp"
#include "ulab/simd/kernels.hpp"

namespace ulab {
namespace {

Int unit_inverse(const Int& a, const RingSpec& spec) {
  if (spec.is_finite()) {
    auto inv = inverse_mod(static_cast<std::uint32_t>(a), spec.modulus());
    if (!inv) throw Error(ErrorKind::NotAUnit, a.str() + " is not a unit in " + spec.to_string());
    return *inv;
  }
  if (a == 1 || a == -1) return a;
  throw Error(ErrorKind::NotAUnit, a.str() + " is not a unit in Z");
}

void require_same_shape(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::BadSize, "matrix sizes differ");
  if (!(a.spec() == b.spec()))
    throw Error(ErrorKind::SpecMismatch, a.spec().to_string() + " vs " + b.spec().to_string());
}

}  // namespace

SquareMatrix::SquareMatrix(std::size_t n, const RingSpec& spec)
    : n_(n), spec_(spec), entries_(n * n, Int(0)) {}

SquareMatrix SquareMatrix::identity(std::size_t n, const RingSpec& spec) {
  SquareMatrix m(n, spec);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SquareMatrix SquareMatrix::parse(std::string_view text, const RingSpec& spec) {
  std::vector<std::vector<Int>> rows;
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  std::stringstream row_stream(compact);
  std::string row;
  while (std::getline(row_stream, row, ';')) {
    std::vector<Int> values;
    std::stringstream cell_stream(row);
    std::string cell;
    while (std::getline(cell_stream, cell, ',')) {
      if (cell.empty()) throw Error(ErrorKind::Parse, "empty matrix entry");
      const bool neg = cell[0] == '-';
      const std::string digits = neg ? cell.substr(1) : cell;
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
        throw Error(ErrorKind::Parse, "bad matrix entry '" + cell + "'");
      Int v(digits);
      values.push_back(neg ? Int(-v) : v);
    }
    rows.push_back(std::move(values));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::Parse, "empty matrix");
  SquareMatrix m(n, spec);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorKind::Parse, "matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

bool SquareMatrix::is_upper_triangular() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (at(i, j) != 0) return false;
  return true;
}

bool SquareMatrix::is_unipotent() const {
  if (!is_upper_triangular()) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (at(i, i) != 1) return false;
  return true;
}

bool SquareMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& o) const {
  require_same_shape(*this, o);
  SquareMatrix out(n_, spec_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const Int& b = o.at(k, j);
        if (b != 0) out.entries_[i * n_ + j] += a * b;
      }
    }
  }
  for (auto& e : out.entries_) e = spec_.reduce(e);
  return out;
}

SquareMatrix SquareMatrix::operator+(const SquareMatrix& o) const {
  require_same_shape(*this, o);
  SquareMatrix out(n_, spec_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = spec_.reduce(entries_[i] + o.entries_[i]);
  return out;
}

SquareMatrix SquareMatrix::operator-(const SquareMatrix& o) const {
  require_same_shape(*this, o);
  SquareMatrix out(n_, spec_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = spec_.reduce(entries_[i] - o.entries_[i]);
  return out;
}

SquareMatrix SquareMatrix::scaled(const Int& c) const {
  SquareMatrix out(n_, spec_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = spec_.reduce(entries_[i] * c);
  return out;
}

SquareMatrix SquareMatrix::inverse_upper() const {
  if (!is_upper_triangular()) throw Error(ErrorKind::BadSize, "matrix is not upper triangular");
  SquareMatrix inv(n_, spec_);
  for (std::size_t col = 0; col < n_; ++col) {
    for (std::size_t ii = col + 1; ii-- > 0;) {
      Int acc = ii == col ? 1 : 0;
      for (std::size_t k = ii + 1; k <= col; ++k) acc -= at(ii, k) * inv.at(k, col);
      inv.set(ii, col, acc * unit_inverse(at(ii, ii), spec_));
    }
  }
  return inv;
}

std::string SquareMatrix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) s += ',';
      s += at(i, j).str();
    }
  }
  return s;
}

UniMat::UniMat(SquareMatrix m) : m_(std::move(m)) {
  if (!m_.is_unipotent()) throw Error(ErrorKind::BadSize, "matrix is not upper unitriangular");
}

UniMat UniMat::identity(std::size_t n, const RingSpec& spec) {
  return UniMat(SquareMatrix::identity(n, spec));
}

UniMat UniMat::parse(std::string_view text, const RingSpec& spec) {
  return UniMat(SquareMatrix::parse(text, spec));
}

UniMat UniMat::elementary(std::size_t n, const RingSpec& spec, std::size_t i, std::size_t j,
                          const Int& value) {
  if (i >= j || j >= n) throw Error(ErrorKind::BadSize, "elementary matrix needs i < j < n");
  SquareMatrix m = SquareMatrix::identity(n, spec);
  m.set(i, j, value);
  return UniMat(std::move(m));
}

UniMat UniMat::jordan(std::size_t n, const RingSpec& spec) {
  return UniMat(SquareMatrix::identity(n, spec) + shift_matrix(n, spec));
}

UniMat UniMat::operator*(const UniMat& o) const { return UniMat(m_ * o.m_); }

UniMat UniMat::inverse() const { return UniMat(m_.inverse_upper()); }

UniMat UniMat::pow(std::int64_t e) const {
  UniMat base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  UniMat result = identity(size(), spec());
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::uint64_t order(const UniMat& a) {
  if (a.is_identity()) return 1;
  const RingSpec& spec = a.spec();
  if (!spec.is_finite()) throw Error(ErrorKind::NoFiniteOrder, "non-identity matrix over Z");
  // Unipotent over Z/p^r: the order is a power of p, at most p^(r-1+ceil(log_p n)).
  unsigned bound = spec.r();
  for (std::uint64_t reach = 1; reach < a.size(); reach *= spec.p()) ++bound;
  UniMat cur = a;
  std::uint64_t ord = 1;
  for (unsigned step = 0; step <= bound; ++step) {
    if (cur.is_identity()) return ord;
    cur = cur.pow(spec.p());
    ord *= spec.p();
  }
  throw std::logic_error("order bound exceeded for a unipotent matrix");
}

std::vector<std::uint32_t> to_code(const UniMat& a) {
  if (!a.spec().is_finite()) throw Error(ErrorKind::SpecMismatch, "codes need a finite ring");
  std::vector<std::uint32_t> code(a.size() * a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      code[i * a.size() + j] = static_cast<std::uint32_t>(a.at(i, j));
  return code;
}

UniMat from_code(std::span<const std::uint32_t> code, std::size_t n, const RingSpec& spec) {
  if (code.size() != n * n) throw Error(ErrorKind::BadSize, "code length mismatch");
  SquareMatrix m(n, spec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, code[i * n + j]);
  return UniMat(std::move(m));
}

UniMat embed_top_left(const UniMat& m, std::size_t n) {
  if (m.size() > n)
    throw Error(ErrorKind::BadSize, "cannot embed size " + std::to_string(m.size()) +
                                        " into size " + std::to_string(n));
  SquareMatrix out = SquareMatrix::identity(n, m.spec());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) out.set(i, j, m.at(i, j));
  return UniMat(std::move(out));
}

namespace {
UniMat drop_corner(const UniMat& m) {
  if (m.size() < 2) return m;
  SquareMatrix copy = m.matrix();
  copy.set(0, m.size() - 1, 0);
  return UniMat(std::move(copy));
}
}  // namespace

BarUniMat::BarUniMat(const UniMat& full) : rep_(drop_corner(full)) {}

std::string BarUniMat::to_string() const {
  // The omitted corner is printed as '*'.
  std::string s;
  const std::size_t n = rep_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < n; ++j) {
      if (j) s += ',';
      s += (n > 1 && i == 0 && j == n - 1) ? std::string("*") : rep_.at(i, j).str();
    }
  }
  return s;
}

BarUniMat bar_project(const UniMat& m) { return BarUniMat(m); }

KXElem::KXElem(std::vector<std::uint32_t> coeffs, std::size_t n, const RingSpec& spec)
    : coeffs_(std::move(coeffs)), spec_(spec) {
  if (!spec.is_finite()) throw Error(ErrorKind::SpecMismatch, "K[X] needs a finite ring");
  coeffs_.resize(n, 0);
  for (auto& c : coeffs_) c %= spec.modulus();
}

KXElem KXElem::one(std::size_t n, const RingSpec& spec) {
  std::vector<std::uint32_t> c(n, 0);
  if (n) c[0] = 1 % spec.modulus();
  return KXElem(std::move(c), n, spec);
}

KXElem KXElem::x(std::size_t n, const RingSpec& spec) {
  std::vector<std::uint32_t> c(n, 0);
  if (n > 1) c[1] = 1;
  return KXElem(std::move(c), n, spec);
}

KXElem KXElem::operator*(const KXElem& o) const {
  if (n() != o.n() || !(spec_ == o.spec_)) throw Error(ErrorKind::SpecMismatch, "K[X] shapes differ");
  const std::uint64_t m = spec_.modulus();
  std::vector<std::uint32_t> out(n(), 0);
  for (std::size_t i = 0; i < n(); ++i) {
    if (!coeffs_[i]) continue;
    for (std::size_t j = 0; i + j < n(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{coeffs_[i]} * o.coeffs_[j]) % m);
  }
  return KXElem(std::move(out), n(), spec_);
}

KXElem KXElem::operator+(const KXElem& o) const {
  std::vector<std::uint32_t> out(n());
  for (std::size_t i = 0; i < n(); ++i)
    out[i] = static_cast<std::uint32_t>((std::uint64_t{coeffs_[i]} + o.coeffs_[i]) % spec_.modulus());
  return KXElem(std::move(out), n(), spec_);
}

KXElem KXElem::operator-(const KXElem& o) const {
  const std::uint64_t m = spec_.modulus();
  std::vector<std::uint32_t> out(n());
  for (std::size_t i = 0; i < n(); ++i)
    out[i] = static_cast<std::uint32_t>((coeffs_[i] + m - o.coeffs_[i]) % m);
  return KXElem(std::move(out), n(), spec_);
}

KXElem KXElem::inverse() const {
  const std::uint32_t m = spec_.modulus();
  auto c0_inv = n() ? inverse_mod(coeffs_[0], m) : std::optional<std::uint32_t>(0);
  if (!c0_inv) throw Error(ErrorKind::NotAUnit, to_string() + " is not a unit in K[X]");
  // f = c0 (1 + N); f^-1 = c0^-1 sum_k (-N)^k, and N^n = 0.
  std::vector<std::uint32_t> neg_n(n(), 0);
  for (std::size_t i = 1; i < n(); ++i)
    neg_n[i] = static_cast<std::uint32_t>((m - std::uint64_t{coeffs_[i]} * *c0_inv % m) % m);
  const KXElem step(neg_n, n(), spec_);
  KXElem sum = one(n(), spec_);
  KXElem power = sum;
  for (std::size_t k = 1; k < n(); ++k) {
    power = power * step;
    sum = sum + power;
  }
  std::vector<std::uint32_t> out(n());
  for (std::size_t i = 0; i < n(); ++i)
    out[i] = static_cast<std::uint32_t>(std::uint64_t{sum.coeffs_[i]} * *c0_inv % m);
  return KXElem(std::move(out), n(), spec_);
}

KXElem KXElem::pow(std::int64_t e) const {
  KXElem base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  KXElem result = one(n(), spec_);
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

SquareMatrix KXElem::to_matrix() const {
  SquareMatrix m(n(), spec_);
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = i; j < n(); ++j) m.set(i, j, coeffs_[j - i]);
  return m;
}

std::string KXElem::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < n(); ++i) {
    if (!coeffs_[i]) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(coeffs_[i]);
    if (i == 1) s += "*X";
    else if (i > 1) s += "*X^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

KXElem kx_eval(std::span<const std::int64_t> coeffs, std::size_t n, const RingSpec& spec) {
  if (!spec.is_finite()) throw Error(ErrorKind::SpecMismatch, "K[X] needs a finite ring");
  std::vector<std::uint32_t> c(n, 0);
  for (std::size_t i = 0; i < coeffs.size() && i < n; ++i) c[i] = spec.reduce_small(coeffs[i]);
  return KXElem(std::move(c), n, spec);
}

bool kx_is_unit(const KXElem& f) {
  return f.n() > 0 && inverse_mod(f.coeff(0), f.spec().modulus()).has_value();
}

SquareMatrix shift_matrix(std::size_t n, const RingSpec& spec) {
  SquareMatrix x(n, spec);
  for (std::size_t i = 0; i + 1 < n; ++i) x.set(i, i + 1, 1);
  return x;
}

std::vector<SquareMatrix> centralizer_of_X(std::size_t n, const RingSpec& spec) {
  if (!spec.is_field()) throw Error(ErrorKind::SpecMismatch, "centralizer needs a prime field");
  const std::uint32_t p = spec.p();
  // Unknown M[a][b] is column a*n+b. (MX)[i][j] = M[i][j-1], (XM)[i][j] = M[i+1][j].
  FpMatrix system(0, n * n, p);
  std::vector<std::uint32_t> row(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(row.begin(), row.end(), 0u);
      if (j >= 1) row[i * n + (j - 1)] = (row[i * n + (j - 1)] + 1) % p;
      if (i + 1 < n) row[(i + 1) * n + j] = (row[(i + 1) * n + j] + p - 1) % p;
      system.push_row(row);
    }
  }
  auto kernel = nullspace(std::move(system));
  // Echelonize the basis itself so the answer is canonical.
  FpMatrix basis(0, n * n, p);
  for (const auto& v : kernel) basis.push_row(v);
  const auto pivots = basis.reduce_to_rref();
  std::vector<SquareMatrix> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    SquareMatrix m(n, spec);
    for (std::size_t idx = 0; idx < n * n; ++idx) m.set(idx / n, idx % n, basis.at(r, idx));
    out.push_back(std::move(m));
  }
  return out;
}

SquareMatrix conjugator_from_automorphism(const KXElem& f) {
  if (!kx_is_unit(f)) throw Error(ErrorKind::NotAUnit, "f(X) = " + f.to_string() + " is not a unit");
  const std::size_t n = f.n();
  SquareMatrix a(n, f.spec());
  for (std::size_t col = 0; col < n; ++col) {
    const KXElem power = f.pow(static_cast<std::int64_t>(n - 1 - col));
    for (std::size_t j = 0; j <= col; ++j) a.set(col - j, col, power.coeff(j));
  }
  return a;
}

std::int64_t ConjugationTarget::exponent(std::uint32_t p) const {
  switch (kind) {
    case Kind::PowerOnePlusQ: return 1 + static_cast<std::int64_t>(ipow(p, k));
    case Kind::NegPowerOnePlusQ: return -(1 + static_cast<std::int64_t>(ipow(2, k)));
    case Kind::Inverse: return -1;
  }
  return 1;
}

std::string ConjugationTarget::to_string() const {
  switch (kind) {
    case Kind::PowerOnePlusQ: return "power:" + std::to_string(k);
    case Kind::NegPowerOnePlusQ: return "negpower:" + std::to_string(k);
    case Kind::Inverse: return "inverse";
  }
  return "?";
}

ConjugationTarget ConjugationTarget::parse(std::string_view text) {
  auto parse_k = [&](std::string_view digits) {
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
      throw Error(ErrorKind::Parse, "bad conjugation target '" + std::string(text) + "'");
    return k;
  };
  if (text == "inverse") return {Kind::Inverse, 0};
  if (text.starts_with("power:")) return {Kind::PowerOnePlusQ, parse_k(text.substr(6))};
  if (text.starts_with("negpower:")) return {Kind::NegPowerOnePlusQ, parse_k(text.substr(9))};
  throw Error(ErrorKind::Parse, "conjugation target must be power:K, negpower:K or inverse");
}

UniMat conjugator_for_power(std::int64_t t, std::uint32_t p, unsigned s) {
  const RingSpec field = RingSpec::prime_field(p);
  const std::uint64_t n64 = ipow(p, s) + 1;
  if (s < 1 || n64 > 64) throw Error(ErrorKind::TooLarge, "conjugator size p^s+1 out of range");
  const auto n = static_cast<std::size_t>(n64);
  const std::int64_t t_mod_p = ((t % p) + p) % p;
  if (t_mod_p != 1)
    throw Error(ErrorKind::BadTarget, "B -> B^" + std::to_string(t) +
                                          " has no unipotent conjugator over F_" + std::to_string(p));
  // phi(X) = (1+X)^t - 1 = X f(X); X^n = 0 leaves the top coefficient of f free.
  const KXElem one_plus_x = KXElem::one(n, field) + KXElem::x(n, field);
  const KXElem phi = one_plus_x.pow(t) - KXElem::one(n, field);
  std::vector<std::uint32_t> f(n, 0);
  for (std::size_t i = 1; i < n; ++i) f[i - 1] = phi.coeff(i);
  const SquareMatrix a = conjugator_from_automorphism(KXElem(f, n, field));

  UniMat result(a);
  const UniMat b = UniMat::jordan(n, field);
  if (!(result * b * result.inverse() == b.pow(t)))
    throw std::logic_error("conjugator does not realize B -> B^t");
  return result;
}

UniMat solve_conjugation(const ConjugationTarget& target, std::uint32_t p, unsigned s) {
  using Kind = ConjugationTarget::Kind;
  if (target.kind != Kind::PowerOnePlusQ && p != 2)
    throw Error(ErrorKind::BadTarget, target.to_string() + " requires p = 2");
  if (target.kind != Kind::Inverse && target.k < 1)
    throw Error(ErrorKind::BadTarget, "k must be >= 1");
  // Only t mod p^(s+1), the order of B, matters.
  const std::int64_t modulus = static_cast<std::int64_t>(ipow(p, s + 1));
  std::int64_t q = 1;
  for (unsigned i = 0; i < target.k && q != 0; ++i) q = q * (target.kind == Kind::PowerOnePlusQ ? p : 2) % modulus;
  std::int64_t t = 0;
  switch (target.kind) {
    case Kind::PowerOnePlusQ: t = (1 + q) % modulus; break;
    case Kind::NegPowerOnePlusQ: t = ((-(1 + q)) % modulus + modulus) % modulus; break;
    case Kind::Inverse: t = modulus - 1; break;
  }
  return conjugator_for_power(t, p, s);
}

ExponentScan exponent_scan(std::size_t n, std::uint32_t p, std::uint64_t max_elements) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParams, "p must be prime");
  const std::size_t free = n * (n - 1) / 2;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < free; ++i) {
    total *= p;
    if (total > max_elements)
      throw Error(ErrorKind::TooLarge, "U_" + std::to_string(n) + "(F_" + std::to_string(p) +
                                           ") exceeds the scan budget");
  }
  ExponentScan scan;
  scan.group_order = total;
  if (free == 0) {
    scan.exponent = 1;
    return scan;
  }

  const auto& kernels = simd::active_kernels();
  constexpr std::size_t kBatch = 4096;
  const std::size_t nn = n * n;
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) positions.emplace_back(i, j);

  std::vector<std::uint32_t> soa(nn * kBatch, 0);
  std::vector<std::uint8_t> ok(kBatch);
  std::vector<std::uint32_t> digits(free, 0);

  for (std::uint64_t e = p;; e *= p) {
    bool all_identity = true;
    std::fill(digits.begin(), digits.end(), 0u);
    for (std::uint64_t done = 0; done < total && all_identity;) {
      const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, total - done));
      for (std::size_t b = 0; b < count; ++b) {
        for (std::size_t f = 0; f < free; ++f) {
          const auto [i, j] = positions[f];
          soa[(i * n + j) * count + b] = digits[f];
        }
        for (std::size_t f = free; f-- > 0;) {
          if (++digits[f] < p) break;
          digits[f] = 0;
        }
      }
      kernels.unitri_pow_is_identity(soa.data(), count, n, p, e, ok.data());
      all_identity = std::all_of(ok.begin(), ok.begin() + count, [](std::uint8_t v) { return v; });
      done += count;
    }
    if (all_identity) {
      scan.exponent = e;
      return scan;
    }
    if (e > ipow(p, static_cast<unsigned>(n))) throw std::logic_error("exponent scan did not terminate");
  }
}

}  // namespace ulab
