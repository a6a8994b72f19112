// Compiled with -mavx2; only reached after a runtime CPU check.
#include "relhom/exactla/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace relhom::la::simd::detail {

namespace {

// t < 2^16 in every lane. Barrett with m = floor(2^16 / p) leaves r in [0, 2p).
inline __m256i reduce16(__m256i t, __m256i m, __m256i pv) {
  const __m256i q = _mm256_mulhi_epu16(t, m);
  const __m256i r = _mm256_sub_epi16(t, _mm256_mullo_epi16(q, pv));
  return _mm256_min_epu16(r, _mm256_sub_epi16(r, pv));
}

}  // namespace

void axpy_mod_avx2(Residue* dst, const Residue* src, std::size_t n, Residue c, std::uint32_t p) {
  const __m256i cv = _mm256_set1_epi16(static_cast<short>(c));
  const __m256i pv = _mm256_set1_epi16(static_cast<short>(p));
  const __m256i m = _mm256_set1_epi16(static_cast<short>(65536u / p));
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i t = _mm256_add_epi16(d, _mm256_mullo_epi16(s, cv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce16(t, m, pv));
  }
  axpy_mod_scalar(dst + i, src + i, n - i, c, p);
}

void scale_mod_avx2(Residue* dst, std::size_t n, Residue c, std::uint32_t p) {
  const __m256i cv = _mm256_set1_epi16(static_cast<short>(c));
  const __m256i pv = _mm256_set1_epi16(static_cast<short>(p));
  const __m256i m = _mm256_set1_epi16(static_cast<short>(65536u / p));
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce16(_mm256_mullo_epi16(d, cv), m, pv));
  }
  scale_mod_scalar(dst + i, n - i, c, p);
}

}  // namespace relhom::la::simd::detail

#endif
