#include <vector>

#include "doctest.h"
#include "gen.hpp"
#include "relhom/exactla/kernels.hpp"
#include "relhom/exactla/matrix.hpp"

namespace simd = relhom::la::simd;
using relhom::la::Residue;

namespace {

struct BackendGuard {
  simd::Backend saved = simd::active_backend();
  ~BackendGuard() { simd::force_backend(saved); }
};

std::vector<Residue> random_residues(std::size_t n, std::uint32_t p) {
  std::vector<Residue> v(n);
  for (auto& x : v) x = static_cast<Residue>(gen::rng()() % p);
  return v;
}

}  // namespace

TEST_CASE("every available backend matches the scalar kernels") {
  BackendGuard guard;
  for (auto b : {simd::Backend::Scalar, simd::Backend::Avx2, simd::Backend::Neon}) {
    if (!simd::backend_available(b)) continue;
    CAPTURE(simd::backend_name(b));
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u, 101u, 251u}) {
      for (std::size_t n : {0u, 1u, 7u, 15u, 16u, 17u, 33u, 64u, 100u}) {
        for (int trial = 0; trial < 8; ++trial) {
          const auto src = random_residues(n, p);
          const auto dst0 = random_residues(n, p);
          const auto c = static_cast<Residue>(gen::rng()() % p);

          auto want = dst0;
          simd::detail::axpy_mod_scalar(want.data(), src.data(), n, c, p);
          simd::force_backend(b);
          auto got = dst0;
          simd::axpy_mod(got, src, c, p);
          CHECK(got == want);

          auto want_s = dst0;
          simd::detail::scale_mod_scalar(want_s.data(), n, c, p);
          auto got_s = dst0;
          simd::scale_mod(got_s, c, p);
          CHECK(got_s == want_s);
        }
      }
    }
  }
}

TEST_CASE("extreme residues stay reduced") {
  BackendGuard guard;
  for (auto b : {simd::Backend::Scalar, simd::Backend::Avx2, simd::Backend::Neon}) {
    if (!simd::backend_available(b)) continue;
    simd::force_backend(b);
    const std::uint32_t p = 251;
    std::vector<Residue> dst(40, 250), src(40, 250);
    simd::axpy_mod(dst, src, 250, p);
    for (auto x : dst) CHECK(x == (250u + 250u * 250u) % p);
  }
}

TEST_CASE("matrix products agree across backends") {
  BackendGuard guard;
  const auto a = gen::matrix(7, 20, 37);
  const auto b = gen::matrix(7, 37, 19);
  simd::force_backend(simd::Backend::Scalar);
  const auto want = a * b;
  const auto want_rank = relhom::la::rank(a);
  for (auto be : {simd::Backend::Avx2, simd::Backend::Neon}) {
    if (!simd::backend_available(be)) continue;
    simd::force_backend(be);
    CHECK(a * b == want);
    CHECK(relhom::la::rank(a) == want_rank);
  }
}
