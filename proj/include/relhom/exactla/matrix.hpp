#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relhom/exactla/kernels.hpp"

namespace relhom::la {

/// Dense row-major matrix over F_p. Entries are always reduced.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  /// Entries are reduced modulo p; negative values are allowed.
  static Matrix from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows);
  static Matrix from_rows(std::uint32_t p, std::size_t rows, std::size_t cols,
                          std::initializer_list<long long> entries);
  static Matrix identity(std::uint32_t p, std::size_t n);
  static Matrix zero(std::uint32_t p, std::size_t rows, std::size_t cols) { return {p, rows, cols}; }
  static Matrix column(std::uint32_t p, const std::vector<Residue>& v);
  static Matrix unit_column(std::uint32_t p, std::size_t n, std::size_t i);

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long v);
  void add_to(std::size_t r, std::size_t c, long long v);

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Residue>& data() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& o) const = default;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix select_columns(const std::vector<std::size_t>& cols) const;
  Matrix select_rows(const std::vector<std::size_t>& rows) const;
  std::vector<Residue> column_vector(std::size_t c) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(Residue c) const;

  /// Row operations used by elimination; they go through the SIMD kernels.
  void row_axpy(std::size_t dst, std::size_t src, Residue c);
  void row_scale(std::size_t r, Residue c);
  void swap_rows(std::size_t a, std::size_t b);

  std::string to_string() const;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

Residue reduce(long long v, std::uint32_t p);
Residue inverse_mod(Residue a, std::uint32_t p);
bool is_prime(std::uint32_t p);

Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const std::vector<Matrix>& parts);
/// Row-major vectorization: entry (r, c) goes to index r * cols + c.
Matrix vec(const Matrix& m);
Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);
/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

struct Rref {
  Matrix R;
  std::vector<std::size_t> pivots;
  Matrix T;
};

/// T * A = R with R in reduced row-echelon form. Pivot choice is the first
/// nonzero entry in column order, so the output is deterministic.
Rref rref(const Matrix& a);
/// Reduced row-echelon form without the transform.
Matrix rref_only(const Matrix& a, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& a);

/// Columns spanning {x : A x = 0}, one per free column, in free-column order.
Matrix kernel(const Matrix& a);
/// Pivot columns of A; they form a basis of the column space.
Matrix image(const Matrix& a);

struct KernelImage {
  Matrix kernel;
  Matrix image;
};
KernelImage kernel_image(const Matrix& a);

/// Some X with A X = B, or nullopt when a column of B is outside the image.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
/// Left inverse of a matrix with independent columns.
Matrix left_inverse(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

/// Canonical column basis of the span of U's columns (transposed rref of U^T).
Matrix span_basis(const Matrix& u);
bool same_span(const Matrix& u, const Matrix& v);
/// True iff every column of v lies in the span of u's columns.
bool contains(const Matrix& u, const Matrix& v);

struct Quotient {
  /// q * x gives coordinates of x modulo span(U); kernel of q is span(U).
  Matrix projection;
  /// Columns are the chosen complement (standard basis vectors); projection * section = I.
  Matrix section;
};

Matrix subspace_sum(const Matrix& u, const Matrix& v);
Matrix subspace_intersection(const Matrix& u, const Matrix& v);
Quotient quotient(const Matrix& u, std::size_t ambient, std::uint32_t p);

struct SubspaceOps {
  Matrix sum;
  Matrix intersection;
  Quotient quotient;
};
/// Sum, intersection and the projection modulo U. Throws AMBIENT_MISMATCH.
SubspaceOps subspace_ops(const Matrix& u, const Matrix& v);

}  // namespace relhom::la
