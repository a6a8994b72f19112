#include "relhom/exactla/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace relhom::la::simd::detail {

namespace {

inline uint16x8_t reduce16(uint16x8_t t, uint16_t m, uint16x8_t pv) {
  const uint32x4_t lo = vmull_n_u16(vget_low_u16(t), m);
  const uint32x4_t hi = vmull_n_u16(vget_high_u16(t), m);
  const uint16x8_t q = vcombine_u16(vshrn_n_u32(lo, 16), vshrn_n_u32(hi, 16));
  const uint16x8_t r = vsubq_u16(t, vmulq_u16(q, pv));
  return vminq_u16(r, vsubq_u16(r, pv));
}

}  // namespace

void axpy_mod_neon(Residue* dst, const Residue* src, std::size_t n, Residue c, std::uint32_t p) {
  const uint16x8_t pv = vdupq_n_u16(static_cast<uint16_t>(p));
  const auto m = static_cast<uint16_t>(65536u / p);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const uint16x8_t t = vmlaq_n_u16(vld1q_u16(dst + i), vld1q_u16(src + i), c);
    vst1q_u16(dst + i, reduce16(t, m, pv));
  }
  axpy_mod_scalar(dst + i, src + i, n - i, c, p);
}

void scale_mod_neon(Residue* dst, std::size_t n, Residue c, std::uint32_t p) {
  const uint16x8_t pv = vdupq_n_u16(static_cast<uint16_t>(p));
  const auto m = static_cast<uint16_t>(65536u / p);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    vst1q_u16(dst + i, reduce16(vmulq_n_u16(vld1q_u16(dst + i), c), m, pv));
  }
  scale_mod_scalar(dst + i, n - i, c, p);
}

}  // namespace relhom::la::simd::detail

#endif
