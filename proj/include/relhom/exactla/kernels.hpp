#pragma once
// Row kernels for arithmetic modulo a small prime.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (AArch64) variant. The variant used
// by the public entry points is picked once at runtime from the CPU feature
// set; it can be pinned with force_backend() or the RELHOM_SIMD environment
// variable ("scalar", "avx2", "neon"). All variants produce bit-identical
// results, which the equivalence tests check on random inputs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace relhom::la {

using Residue = std::uint16_t;

/// Largest supported modulus. Products of two residues plus one residue must
/// fit in 16 bits for the vector kernels: 250 * 250 + 250 < 65536.
inline constexpr std::uint32_t kMaxPrime = 251;

namespace simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
void force_backend(Backend b);

/// dst[i] = (dst[i] + c * src[i]) mod p. Inputs must already be reduced.
void axpy_mod(std::span<Residue> dst, std::span<const Residue> src, Residue c, std::uint32_t p);

/// dst[i] = (c * dst[i]) mod p.
void scale_mod(std::span<Residue> dst, Residue c, std::uint32_t p);

/// Index of the first nonzero entry, or dst.size() when all are zero.
std::size_t first_nonzero(std::span<const Residue> v);

namespace detail {

void axpy_mod_scalar(Residue* dst, const Residue* src, std::size_t n, Residue c, std::uint32_t p);
void scale_mod_scalar(Residue* dst, std::size_t n, Residue c, std::uint32_t p);

#if defined(__x86_64__) || defined(_M_X64)
void axpy_mod_avx2(Residue* dst, const Residue* src, std::size_t n, Residue c, std::uint32_t p);
void scale_mod_avx2(Residue* dst, std::size_t n, Residue c, std::uint32_t p);
#endif

#if defined(__aarch64__)
void axpy_mod_neon(Residue* dst, const Residue* src, std::size_t n, Residue c, std::uint32_t p);
void scale_mod_neon(Residue* dst, std::size_t n, Residue c, std::uint32_t p);
#endif

}  // namespace detail
}  // namespace simd
}  // namespace relhom::la
