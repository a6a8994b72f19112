#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relhom/exactla/matrix.hpp"

namespace relhom::alg {

using la::Matrix;
using la::Residue;

/// Associative unital algebra over F_p given by structure constants
/// e_i e_j = sum_k c(i, j, k) e_k.
class Algebra {
 public:
  Algebra(std::string name, std::uint32_t p, std::size_t dim, std::vector<Residue> unit);

  const std::string& name() const { return name_; }
  std::uint32_t p() const { return p_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Residue>& unit() const { return unit_; }
  Matrix unit_column() const { return Matrix::column(p_, unit_); }

  Residue c(std::size_t i, std::size_t j, std::size_t k) const { return constants_[(i * dim_ + j) * dim_ + k]; }
  void set_c(std::size_t i, std::size_t j, std::size_t k, long long v);
  const std::vector<Residue>& constants() const { return constants_; }

  /// Matrix of y -> e_i y in the basis.
  Matrix left_mult(std::size_t i) const;
  /// Matrix of y -> x y for a coordinate column x.
  Matrix left_mult(const Matrix& x) const;
  /// Matrix of y -> y x.
  Matrix right_mult(const Matrix& x) const;
  Matrix multiply(const Matrix& x, const Matrix& y) const;

  Algebra opposite() const;
  bool same_structure(const Algebra& o) const;

 private:
  std::string name_;
  std::uint32_t p_;
  std::size_t dim_;
  std::vector<Residue> unit_;
  std::vector<Residue> constants_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

struct AlgebraDiagnostics {
  bool ok = true;
  /// Human-readable findings; the first violated triple is named explicitly.
  std::vector<std::string> problems;
  /// (i, j, k) of the first associativity failure, when there is one.
  std::optional<std::array<std::size_t, 3>> failing_triple;
};

AlgebraDiagnostics validate_algebra(const Algebra& a);

/// Standard fixtures over F_2.
AlgebraPtr make_kA2();
AlgebraPtr make_ss2();
AlgebraPtr make_loc2();

}  // namespace relhom::alg
