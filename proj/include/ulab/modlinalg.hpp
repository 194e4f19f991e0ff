#pragma once

// Dense linear algebra over F_p on uint32 residues, built on the SIMD row
// kernels.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ulab {

class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t p() const { return p_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  // Appends a row (reduced mod p by the caller).
  void push_row(std::span<const std::uint32_t> values);

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> reduce_to_rref();

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

std::size_t rank(FpMatrix m);

// Basis of { x : A x = 0 }, one vector per free column, in RREF-derived order.
std::vector<std::vector<std::uint32_t>> nullspace(FpMatrix a);

// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<std::uint32_t>> solve(FpMatrix a, std::span<const std::uint32_t> b);

}  // namespace ulab
