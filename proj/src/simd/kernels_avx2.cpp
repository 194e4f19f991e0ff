#include <immintrin.h>

#include <array>
#include <vector>

#include "ulab/simd/kernels.hpp"

#pragma GCC diagnostic ignored "-Wignored-attributes"

namespace ulab::simd {
namespace {

// x mod m for lanes with 0 <= x < 2^24 and m < 4096. The float quotient is
// off by at most one, which the two conditional corrections absorb.
struct Reducer {
  __m256i m;
  __m256i m_minus_1;
  __m256 inv_m;

  explicit Reducer(std::uint32_t modulus)
      : m(_mm256_set1_epi32(static_cast<int>(modulus))),
        m_minus_1(_mm256_set1_epi32(static_cast<int>(modulus) - 1)),
        inv_m(_mm256_set1_ps(1.0f / static_cast<float>(modulus))) {}

  __m256i operator()(__m256i x) const {
    __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(x), inv_m));
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, m));
    r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(_mm256_setzero_si256(), r), m));
    r = _mm256_sub_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(r, m_minus_1), m));
    return r;
  }
};

__m256i tail_mask(std::size_t remaining) {
  alignas(32) static const std::int32_t lanes[16] = {-1, -1, -1, -1, -1, -1, -1, -1,
                                                     0,  0,  0,  0,  0,  0,  0,  0};
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lanes + 8 - remaining));
}

void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t len, std::uint32_t c,
               std::uint32_t m) {
  if (m >= kAvx2MaxModulus) {
    scalar_kernels().axpy_mod(dst, src, len, c, m);
    return;
  }
  if (c == 0) return;
  const Reducer reduce(m);
  const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i x = _mm256_add_epi32(d, _mm256_mullo_epi32(s, cv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce(x));
  }
  if (i < len) {
    const __m256i mask = tail_mask(len - i);
    auto* d_ptr = reinterpret_cast<int*>(dst + i);
    auto* s_ptr = reinterpret_cast<const int*>(src + i);
    __m256i d = _mm256_maskload_epi32(d_ptr, mask);
    __m256i s = _mm256_maskload_epi32(s_ptr, mask);
    __m256i x = _mm256_add_epi32(d, _mm256_mullo_epi32(s, cv));
    _mm256_maskstore_epi32(d_ptr, mask, reduce(x));
  }
}

void matmul_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                 std::size_t n, std::uint32_t m) {
  if (m >= kAvx2MaxModulus) {
    scalar_kernels().matmul_mod(a, b, out, n, m);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t* row = out + i * n;
    std::fill(row, row + n, 0u);
    for (std::size_t k = 0; k < n; ++k) axpy_avx2(row, b + k * n, n, a[i * n + k], m);
  }
}

// Eight matrices at a time, one per lane; strict upper part only.
void unitri_mul8(const __m256i* a, const __m256i* b, __m256i* c, std::size_t n,
                 const Reducer& reduce) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      __m256i acc = reduce(_mm256_add_epi32(a[i * n + j], b[i * n + j]));
      for (std::size_t k = i + 1; k < j; ++k)
        acc = reduce(_mm256_add_epi32(acc, _mm256_mullo_epi32(a[i * n + k], b[k * n + j])));
      c[i * n + j] = acc;
    }
  }
}

void unitri_pow_avx2(const std::uint32_t* soa, std::size_t count, std::size_t n, std::uint32_t m,
                     std::uint64_t e, std::uint8_t* out) {
  if (m >= kAvx2MaxModulus || n < 2) {
    scalar_kernels().unitri_pow_is_identity(soa, count, n, m, e, out);
    return;
  }
  const Reducer reduce(m);
  const std::size_t nn = n * n;
  std::vector<__m256i> base(nn), acc(nn), tmp(nn);
  const std::size_t full = count - count % 8;
  for (std::size_t b = 0; b < full; b += 8) {
    for (std::size_t idx = 0; idx < nn; ++idx) {
      base[idx] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(soa + idx * count + b));
      acc[idx] = _mm256_setzero_si256();
    }
    for (std::uint64_t k = e; k != 0; k >>= 1) {
      if (k & 1) {
        unitri_mul8(acc.data(), base.data(), tmp.data(), n, reduce);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) acc[i * n + j] = tmp[i * n + j];
      }
      if (k > 1) {
        unitri_mul8(base.data(), base.data(), tmp.data(), n, reduce);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) base[i * n + j] = tmp[i * n + j];
      }
    }
    __m256i nonzero = _mm256_setzero_si256();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) nonzero = _mm256_or_si256(nonzero, acc[i * n + j]);
    alignas(32) std::array<std::uint32_t, 8> lanes{};
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), nonzero);
    for (std::size_t l = 0; l < 8; ++l) out[b + l] = lanes[l] == 0 ? 1 : 0;
  }
  if (full < count) {
    // Repack the tail so the scalar kernel sees a dense batch.
    const std::size_t rest = count - full;
    std::vector<std::uint32_t> tail(nn * rest);
    for (std::size_t idx = 0; idx < nn; ++idx)
      for (std::size_t l = 0; l < rest; ++l) tail[idx * rest + l] = soa[idx * count + full + l];
    scalar_kernels().unitri_pow_is_identity(tail.data(), rest, n, m, e, out + full);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", axpy_avx2, matmul_avx2, unitri_pow_avx2};
  return table;
}

}  // namespace ulab::simd
