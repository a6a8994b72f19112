#include "relhom/algmod/algebra.hpp"

#include <sstream>

#include "relhom/error.hpp"

namespace relhom::alg {

Algebra::Algebra(std::string name, std::uint32_t p, std::size_t dim, std::vector<Residue> unit)
    : name_(std::move(name)), p_(p), dim_(dim), unit_(std::move(unit)), constants_(dim * dim * dim, 0) {
  if (!la::is_prime(p) || p > la::kMaxPrime) throw Error(ErrorCode::InvalidInput, "modulus must be a prime <= 251");
  if (unit_.size() != dim) throw Error(ErrorCode::ShapeMismatch, "unit has wrong length");
  for (auto& u : unit_) u = static_cast<Residue>(u % p);
}

void Algebra::set_c(std::size_t i, std::size_t j, std::size_t k, long long v) {
  constants_[(i * dim_ + j) * dim_ + k] = la::reduce(v, p_);
}

Matrix Algebra::left_mult(std::size_t i) const {
  Matrix m(p_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    for (std::size_t k = 0; k < dim_; ++k) m.set(k, j, c(i, j, k));
  }
  return m;
}

Matrix Algebra::left_mult(const Matrix& x) const {
  Matrix m(p_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x.at(i, 0) != 0) m = m + left_mult(i).scaled(x.at(i, 0));
  }
  return m;
}

Matrix Algebra::right_mult(const Matrix& x) const {
  Matrix m(p_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const Residue xj = x.at(j, 0);
      if (xj == 0) continue;
      for (std::size_t k = 0; k < dim_; ++k) m.add_to(k, i, static_cast<long long>(xj) * c(i, j, k));
    }
  }
  return m;
}

Matrix Algebra::multiply(const Matrix& x, const Matrix& y) const { return left_mult(x) * y; }

Algebra Algebra::opposite() const {
  Algebra op(name_ + "^op", p_, dim_, unit_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) op.set_c(i, j, k, c(j, i, k));
    }
  }
  return op;
}

bool Algebra::same_structure(const Algebra& o) const {
  return p_ == o.p_ && dim_ == o.dim_ && unit_ == o.unit_ && constants_ == o.constants_;
}

AlgebraDiagnostics validate_algebra(const Algebra& a) {
  AlgebraDiagnostics diag;
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  for (std::size_t i = 0; i < d && !diag.failing_triple; ++i) {
    for (std::size_t j = 0; j < d && !diag.failing_triple; ++j) {
      for (std::size_t k = 0; k < d && !diag.failing_triple; ++k) {
        for (std::size_t n = 0; n < d; ++n) {
          long long lhs = 0, rhs = 0;
          for (std::size_t m = 0; m < d; ++m) {
            lhs += static_cast<long long>(a.c(i, j, m)) * a.c(m, k, n);
            rhs += static_cast<long long>(a.c(j, k, m)) * a.c(i, m, n);
          }
          if ((lhs - rhs) % static_cast<long long>(p) != 0) {
            std::ostringstream os;
            os << "associativity fails for basis triple (" << i << "," << j << "," << k << ") at coordinate " << n;
            diag.problems.push_back(os.str());
            diag.failing_triple = std::array<std::size_t, 3>{i, j, k};
            break;
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      long long left = 0, right = 0;
      for (std::size_t u = 0; u < d; ++u) {
        left += static_cast<long long>(a.unit()[u]) * a.c(u, i, k);
        right += static_cast<long long>(a.unit()[u]) * a.c(i, u, k);
      }
      const long long want = i == k ? 1 : 0;
      if ((left - want) % static_cast<long long>(p) != 0 || (right - want) % static_cast<long long>(p) != 0) {
        std::ostringstream os;
        os << "unit law fails on basis element " << i;
        diag.problems.push_back(os.str());
        break;
      }
    }
  }
  diag.ok = diag.problems.empty();
  return diag;
}

AlgebraPtr make_kA2() {
  // Basis e1, e2, a for the quiver 1 -> 2.
  auto a = std::make_shared<Algebra>("kA2", 2, 3, std::vector<Residue>{1, 1, 0});
  a->set_c(0, 0, 0, 1);
  a->set_c(1, 1, 1, 1);
  a->set_c(1, 2, 2, 1);
  a->set_c(2, 0, 2, 1);
  return a;
}

AlgebraPtr make_ss2() {
  auto a = std::make_shared<Algebra>("ss2", 2, 2, std::vector<Residue>{1, 1});
  a->set_c(0, 0, 0, 1);
  a->set_c(1, 1, 1, 1);
  return a;
}

AlgebraPtr make_loc2() {
  // Basis 1, x with x^2 = 0.
  auto a = std::make_shared<Algebra>("loc2", 2, 2, std::vector<Residue>{1, 0});
  a->set_c(0, 0, 0, 1);
  a->set_c(0, 1, 1, 1);
  a->set_c(1, 0, 1, 1);
  return a;
}

}  // namespace relhom::alg
