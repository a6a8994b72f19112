#include <vector>

#include "doctest.h"
#include "gen.hpp"
#include "relhom/error.hpp"
#include "relhom/exactla/matrix.hpp"

using relhom::la::Matrix;
namespace la = relhom::la;

namespace {

bool is_rref(const Matrix& r, const std::vector<std::size_t>& pivots) {
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const std::size_t lead = la::simd::first_nonzero(r.row(i));
    if (i < pivots.size()) {
      if (lead != pivots[i] || r.at(i, lead) != 1) return false;
      if (i > 0 && pivots[i] <= pivots[i - 1]) return false;
      for (std::size_t k = 0; k < r.rows(); ++k) {
        if (k != i && r.at(k, lead) != 0) return false;
      }
    } else if (lead != r.cols()) {
      return false;
    }
  }
  return true;
}

bool reduced(const Matrix& m) {
  for (auto x : m.data()) {
    if (x >= m.p()) return false;
  }
  return true;
}

// Enumerates every vector of F_p^n as a column.
std::vector<Matrix> all_vectors(std::uint32_t p, std::size_t n) {
  std::vector<Matrix> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Matrix v(p, n, 1);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v.set(i, 0, static_cast<long long>(c % p));
      c /= p;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("rref on identity, zero and a repeated row") {
  const Matrix id = Matrix::identity(2, 3);
  auto r = la::rref(id);
  CHECK(r.R == id);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.T == id);

  auto z = la::rref(Matrix::zero(2, 2, 3));
  CHECK(z.R.is_zero());
  CHECK(z.pivots.empty());
  CHECK(z.T == Matrix::identity(2, 2));

  auto d = la::rref(Matrix::from_rows(2, 2, 2, {1, 1, 1, 1}));
  CHECK(d.R == Matrix::from_rows(2, 2, 2, {1, 1, 0, 0}));
  CHECK(d.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel and image examples") {
  auto ki = la::kernel_image(Matrix::identity(2, 2));
  CHECK(ki.kernel.cols() == 0);
  CHECK(ki.image.cols() == 2);

  auto zi = la::kernel_image(Matrix::zero(2, 1, 2));
  CHECK(zi.kernel.cols() == 2);
  CHECK(zi.image.cols() == 0);

  auto row = la::kernel_image(Matrix::from_rows(2, 1, 2, {1, 1}));
  REQUIRE(row.kernel.cols() == 1);
  CHECK(row.kernel == Matrix::from_rows(2, 2, 1, {1, 1}));
  CHECK(row.image.cols() == 1);
}

TEST_CASE("solve examples") {
  const Matrix b = Matrix::from_rows(3, 2, 1, {2, 1});
  auto x = la::solve(Matrix::identity(3, 2), b);
  REQUIRE(x);
  CHECK(*x == b);

  CHECK_FALSE(la::solve(Matrix::zero(2, 2, 2), Matrix::from_rows(2, 2, 1, {1, 0})));

  const Matrix a = Matrix::from_rows(2, 2, 2, {1, 1, 0, 0});
  auto y = la::solve(a, Matrix::from_rows(2, 2, 1, {1, 0}));
  REQUIRE(y);
  CHECK(a * *y == Matrix::from_rows(2, 2, 1, {1, 0}));

  CHECK_THROWS_AS(la::solve(a, Matrix::zero(2, 3, 1)), relhom::Error);
}

TEST_CASE("subspace examples") {
  const Matrix u = Matrix::from_rows(2, 2, 1, {1, 0});
  auto same = la::subspace_ops(u, u);
  CHECK(la::same_span(same.sum, u));
  CHECK(la::same_span(same.intersection, u));

  const Matrix v = Matrix::from_rows(2, 2, 1, {0, 1});
  auto comp = la::subspace_ops(u, v);
  CHECK(comp.sum.cols() == 2);
  CHECK(comp.intersection.cols() == 0);

  auto lines = la::subspace_ops(Matrix::from_rows(3, 2, 1, {1, 1}), Matrix::from_rows(3, 2, 1, {1, 2}));
  CHECK(lines.sum.cols() == 2);
  CHECK(lines.intersection.cols() == 0);

  CHECK_THROWS_AS(la::subspace_ops(u, Matrix::zero(2, 3, 1)), relhom::Error);
}

TEST_CASE("distinct lines of F3^2 number four and meet pairwise in zero") {
  std::vector<Matrix> lines;
  for (const auto& v : all_vectors(3, 2)) {
    if (v.is_zero()) continue;
    bool seen = false;
    for (const auto& l : lines) seen = seen || la::same_span(l, v);
    if (!seen) lines.push_back(la::span_basis(v));
  }
  REQUIRE(lines.size() == 4);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto ops = la::subspace_ops(lines[i], lines[j]);
      CHECK(ops.sum.cols() == 2);
      CHECK(ops.intersection.cols() == 0);
    }
  }
}

TEST_CASE("property: rref, rank and nullity on random matrices") {
  for (std::uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t rows = gen::below(9), cols = gen::below(9);
      const Matrix a = trial % 2 ? gen::matrix(p, rows, cols) : gen::low_rank(p, rows, cols, gen::below(4));
      auto r = la::rref(a);
      CHECK(r.T * a == r.R);
      CHECK(is_rref(r.R, r.pivots));
      CHECK(la::rref_only(r.R) == r.R);
      CHECK(la::inverse(r.T).has_value());
      CHECK(la::rank(a) == la::rank(a.transpose()));
      CHECK(la::rank(a) <= std::min(rows, cols));
      auto ki = la::kernel_image(a);
      CHECK(ki.kernel.cols() + ki.image.cols() == cols);
      CHECK((a * ki.kernel).is_zero());
      CHECK(la::rank(ki.kernel) == ki.kernel.cols());
      CHECK(reduced(r.R));
      CHECK(reduced(r.T));
      CHECK(reduced(ki.kernel));
    }
  }
}

TEST_CASE("property: solve agrees with enumeration") {
  for (std::uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t cols = 1 + gen::below(p == 2 ? 8 : 5);
      const std::size_t rows = 1 + gen::below(6);
      const Matrix a = gen::low_rank(p, rows, cols, gen::below(cols + 1));
      const Matrix b = trial % 3 == 0 ? a * gen::matrix(p, cols, 1) : gen::matrix(p, rows, 1);
      bool brute = false;
      for (const auto& x : all_vectors(p, cols)) {
        if (a * x == b) {
          brute = true;
          break;
        }
      }
      auto x = la::solve(a, b);
      CHECK(x.has_value() == brute);
      if (x) {
        CHECK(a * *x == b);
        CHECK(reduced(*x));
      }
    }
  }
}

TEST_CASE("property: subspace dimension formula and quotient kernel") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t n = 1 + gen::below(7);
      const Matrix u = gen::low_rank(p, n, 1 + gen::below(4), gen::below(4));
      const Matrix v = gen::low_rank(p, n, 1 + gen::below(4), gen::below(4));
      auto ops = la::subspace_ops(u, v);
      CHECK(ops.sum.cols() + ops.intersection.cols() == la::rank(u) + la::rank(v));
      CHECK(la::contains(u, ops.intersection));
      CHECK(la::contains(v, ops.intersection));
      CHECK((ops.quotient.projection * u).is_zero());
      CHECK(la::kernel(ops.quotient.projection).cols() == la::rank(u));
      CHECK(ops.quotient.projection * ops.quotient.section == Matrix::identity(p, n - la::rank(u)));
    }
  }
}
