#pragma once

// Modular integer kernels over residues stored as uint32. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant; the table
// used by the rest of the library is chosen once at startup from the CPU
// features (override with ULAB_KERNELS=scalar).
//
// Inputs are assumed reduced (every entry < m). The AVX2 variants handle
// moduli below kAvx2MaxModulus and delegate to the scalar code otherwise.

#include <cstddef>
#include <cstdint>
#include <span>

namespace ulab::simd {

inline constexpr std::uint32_t kAvx2MaxModulus = 4096;

struct KernelTable {
  const char* name;

  // dst[i] = (dst[i] + c * src[i]) mod m, c < m.
  void (*axpy_mod)(std::uint32_t* dst, const std::uint32_t* src, std::size_t len,
                   std::uint32_t c, std::uint32_t m);

  // out = a * b mod m; dense row-major n x n. out must not alias a or b.
  void (*matmul_mod)(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                     std::size_t n, std::uint32_t m);

  // Lane-interleaved batch of `count` upper unitriangular n x n matrices:
  // entry (i, j) of matrix b lives at soa[(i * n + j) * count + b]. Writes
  // out[b] = 1 if matrix b raised to `e` is the identity, else 0.
  void (*unitri_pow_is_identity)(const std::uint32_t* soa, std::size_t count, std::size_t n,
                                 std::uint32_t m, std::uint64_t e, std::uint8_t* out);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();

inline void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                     std::uint32_t c, std::uint32_t m) {
  active_kernels().axpy_mod(dst.data(), src.data(), dst.size(), c, m);
}

inline void matmul_mod(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out, std::size_t n, std::uint32_t m) {
  active_kernels().matmul_mod(a.data(), b.data(), out.data(), n, m);
}

}  // namespace ulab::simd
