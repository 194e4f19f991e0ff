#include "ulab/modlinalg.hpp"

#include <algorithm>

#include "ulab/error.hpp"
#include "ulab/residue.hpp"
#include "ulab/simd/kernels.hpp"

namespace ulab {

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParams, "FpMatrix needs a prime modulus");
}

void FpMatrix::push_row(std::span<const std::uint32_t> values) {
  if (values.size() != cols_) throw Error(ErrorKind::BadSize, "row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::vector<std::size_t> FpMatrix::reduce_to_rref() {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
    std::size_t pivot = lead;
    while (pivot < rows_ && at(pivot, c) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != lead)
      std::swap_ranges(row(pivot).begin(), row(pivot).end(), row(lead).begin());
    const std::uint32_t inv = *inverse_mod(at(lead, c), p_);
    for (auto& v : row(lead)) v = static_cast<std::uint32_t>(std::uint64_t{v} * inv % p_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead || at(r, c) == 0) continue;
      simd::axpy_mod(row(r), row(lead), p_ - at(r, c), p_);
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

std::size_t rank(FpMatrix m) { return m.reduce_to_rref().size(); }

std::vector<std::vector<std::uint32_t>> nullspace(FpMatrix a) {
  const auto pivots = a.reduce_to_rref();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const std::uint32_t coeff = a.at(r, free);
      v[pivots[r]] = coeff == 0 ? 0 : a.p() - coeff;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<std::uint32_t>> solve(FpMatrix a, std::span<const std::uint32_t> b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::BadSize, "right-hand side length mismatch");
  FpMatrix aug(0, a.cols() + 1, a.p());
  std::vector<std::uint32_t> buf(a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), buf.begin());
    buf.back() = b[r] % a.p();
    aug.push_row(buf);
  }
  const auto pivots = aug.reduce_to_rref();
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<std::uint32_t> x(a.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols());
  return x;
}

}  // namespace ulab
