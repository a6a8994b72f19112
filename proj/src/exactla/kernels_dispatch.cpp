#include <atomic>
#include <cstdlib>
#include <string>

#include "relhom/exactla/kernels.hpp"

namespace relhom::la::simd {

namespace {

Backend detect() {
  if (const char* env = std::getenv("RELHOM_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::Scalar;
    if (want == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
    if (want == "neon" && backend_available(Backend::Neon)) return Backend::Neon;
  }
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "scalar";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (backend_available(b)) current().store(b, std::memory_order_relaxed);
}

void axpy_mod(std::span<Residue> dst, std::span<const Residue> src, Residue c, std::uint32_t p) {
  const std::size_t n = dst.size() < src.size() ? dst.size() : src.size();
  if (c == 0 || n == 0) return;
  switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2: detail::axpy_mod_avx2(dst.data(), src.data(), n, c, p); return;
#endif
#if defined(__aarch64__)
    case Backend::Neon: detail::axpy_mod_neon(dst.data(), src.data(), n, c, p); return;
#endif
    default: detail::axpy_mod_scalar(dst.data(), src.data(), n, c, p); return;
  }
}

void scale_mod(std::span<Residue> dst, Residue c, std::uint32_t p) {
  if (c == 1 || dst.empty()) return;
  switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2: detail::scale_mod_avx2(dst.data(), dst.size(), c, p); return;
#endif
#if defined(__aarch64__)
    case Backend::Neon: detail::scale_mod_neon(dst.data(), dst.size(), c, p); return;
#endif
    default: detail::scale_mod_scalar(dst.data(), dst.size(), c, p); return;
  }
}

std::size_t first_nonzero(std::span<const Residue> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

}  // namespace relhom::la::simd
