#include "relhom/exactla/kernels.hpp"

namespace relhom::la::simd::detail {

void axpy_mod_scalar(Residue* dst, const Residue* src, std::size_t n, Residue c, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<Residue>((dst[i] + static_cast<std::uint32_t>(c) * src[i]) % p);
  }
}

void scale_mod_scalar(Residue* dst, std::size_t n, Residue c, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<Residue>((static_cast<std::uint32_t>(c) * dst[i]) % p);
  }
}

}  // namespace relhom::la::simd::detail
