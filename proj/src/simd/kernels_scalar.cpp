#include <vector>

#include "ulab/simd/kernels.hpp"

namespace ulab::simd {
namespace {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t len, std::uint32_t c,
                 std::uint32_t m) {
  if (c == 0) return;
  for (std::size_t i = 0; i < len; ++i)
    dst[i] = static_cast<std::uint32_t>((dst[i] + std::uint64_t{c} * src[i]) % m);
}

void matmul_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                   std::size_t n, std::uint32_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += std::uint64_t{a[i * n + k]} * b[k * n + j];
        acc %= m;
      }
      out[i * n + j] = static_cast<std::uint32_t>(acc);
    }
  }
}

// c = a * b for unitriangular matrices, touching only the strict upper part.
void unitri_mul(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                std::uint32_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint64_t acc = a[i * n + j] + std::uint64_t{b[i * n + j]};
      for (std::size_t k = i + 1; k < j; ++k) acc += std::uint64_t{a[i * n + k]} * b[k * n + j];
      c[i * n + j] = static_cast<std::uint32_t>(acc % m);
    }
  }
}

void unitri_pow_scalar(const std::uint32_t* soa, std::size_t count, std::size_t n,
                       std::uint32_t m, std::uint64_t e, std::uint8_t* out) {
  const std::size_t nn = n * n;
  std::vector<std::uint32_t> base(nn), acc(nn), tmp(nn);
  for (std::size_t b = 0; b < count; ++b) {
    for (std::size_t idx = 0; idx < nn; ++idx) base[idx] = soa[idx * count + b];
    std::fill(acc.begin(), acc.end(), 0u);
    for (std::uint64_t k = e; k != 0; k >>= 1) {
      if (k & 1) {
        unitri_mul(acc.data(), base.data(), tmp.data(), n, m);
        acc.swap(tmp);
      }
      if (k > 1) {
        unitri_mul(base.data(), base.data(), tmp.data(), n, m);
        base.swap(tmp);
      }
    }
    bool identity = true;
    for (std::size_t i = 0; i < n && identity; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (acc[i * n + j] != 0) {
          identity = false;
          break;
        }
    out[b] = identity ? 1 : 0;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", axpy_scalar, matmul_scalar, unitri_pow_scalar};
  return table;
}

}  // namespace ulab::simd
