#include "relhom/exactla/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>
#include <utility>

#include "relhom/error.hpp"

namespace relhom::la {

namespace {

void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw Error(code, what);
}

// Reduced row-echelon form in place, choosing pivots among the first
// `pivot_cols` columns only. Returns the pivot columns.
std::vector<std::size_t> eliminate(Matrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  const std::uint32_t p = m.p();
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t found = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (m.at(i, c) != 0) {
        found = i;
        break;
      }
    }
    if (found == m.rows()) continue;
    m.swap_rows(r, found);
    m.row_scale(r, inverse_mod(m.at(r, c), p));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Residue e = m.at(i, c);
      if (e != 0) m.row_axpy(i, r, static_cast<Residue>(p - e));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Residue reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

Residue inverse_mod(Residue a, std::uint32_t p) {
  require(a % p != 0, ErrorCode::InvalidInput, "inverse of zero");
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    const long long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return reduce(t, p);
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Matrix::Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  require(is_prime(p) && p <= kMaxPrime, ErrorCode::InvalidInput, "modulus must be a prime <= 251");
}

Matrix Matrix::from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(p, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == nc, ErrorCode::ShapeMismatch, "ragged rows");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_rows(std::uint32_t p, std::size_t rows, std::size_t cols,
                         std::initializer_list<long long> entries) {
  require(entries.size() == rows * cols, ErrorCode::ShapeMismatch, "entry count");
  Matrix m(p, rows, cols);
  std::size_t i = 0;
  for (long long v : entries) {
    m.data_[i++] = reduce(v, p);
  }
  return m;
}

Matrix Matrix::identity(std::uint32_t p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::column(std::uint32_t p, const std::vector<Residue>& v) {
  Matrix m(p, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.data_[i] = static_cast<Residue>(v[i] % p);
  return m;
}

Matrix Matrix::unit_column(std::uint32_t p, std::size_t n, std::size_t i) {
  Matrix m(p, n, 1);
  m.data_[i] = 1;
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, long long v) { data_[r * cols_ + c] = reduce(v, p_); }

void Matrix::add_to(std::size_t r, std::size_t c, long long v) {
  data_[r * cols_ + c] = reduce(static_cast<long long>(data_[r * cols_ + c]) + v, p_);
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  }
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, ErrorCode::ShapeMismatch, "block out of range");
  Matrix b(p_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc,
                b.data_.begin() + static_cast<std::ptrdiff_t>(r * nc));
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_ && b.p_ == p_, ErrorCode::ShapeMismatch,
          "set_block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r) {
    std::copy_n(b.data_.begin() + static_cast<std::ptrdiff_t>(r * b.cols_), b.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
  }
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
  Matrix m(p_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) m.data_[r * cols.size() + j] = at(r, cols[j]);
  }
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
  Matrix m(p_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_block(i, 0, block(rows[i], 0, 1, cols_));
  return m;
}

std::vector<Residue> Matrix::column_vector(std::size_t c) const {
  std::vector<Residue> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_, ErrorCode::ShapeMismatch, "matrix sum");
  Matrix s = *this;
  simd::axpy_mod(s.data_, o.data_, 1, p_);
  return s;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_, ErrorCode::ShapeMismatch, "matrix difference");
  Matrix s = *this;
  simd::axpy_mod(s.data_, o.data_, static_cast<Residue>(p_ - 1), p_);
  return s;
}

Matrix Matrix::operator-() const { return scaled(static_cast<Residue>(p_ - 1)); }

Matrix Matrix::operator*(const Matrix& o) const {
  require(cols_ == o.rows_ && p_ == o.p_, ErrorCode::ShapeMismatch, "matrix product");
  Matrix out(p_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Residue a = at(r, k);
      if (a != 0) simd::axpy_mod(out.row(r), o.row(k), a, p_);
    }
  }
  return out;
}

Matrix Matrix::scaled(Residue c) const {
  Matrix s = *this;
  c = static_cast<Residue>(c % p_);
  if (c == 0) return Matrix(p_, rows_, cols_);
  simd::scale_mod(s.data_, c, p_);
  return s;
}

void Matrix::row_axpy(std::size_t dst, std::size_t src, Residue c) {
  simd::axpy_mod(row(dst), row(src), c, p_);
}

void Matrix::row_scale(std::size_t r, Residue c) { simd::scale_mod(row(r), c, p_); }

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << at(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix hstack(const std::vector<Matrix>& parts) {
  require(!parts.empty(), ErrorCode::ShapeMismatch, "hstack of nothing");
  std::size_t nc = 0;
  for (const auto& m : parts) {
    require(m.rows() == parts.front().rows() && m.p() == parts.front().p(), ErrorCode::ShapeMismatch, "hstack");
    nc += m.cols();
  }
  Matrix out(parts.front().p(), parts.front().rows(), nc);
  std::size_t c = 0;
  for (const auto& m : parts) {
    out.set_block(0, c, m);
    c += m.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  require(!parts.empty(), ErrorCode::ShapeMismatch, "vstack of nothing");
  std::size_t nr = 0;
  for (const auto& m : parts) {
    require(m.cols() == parts.front().cols() && m.p() == parts.front().p(), ErrorCode::ShapeMismatch, "vstack");
    nr += m.rows();
  }
  Matrix out(parts.front().p(), nr, parts.front().cols());
  std::size_t r = 0;
  for (const auto& m : parts) {
    out.set_block(r, 0, m);
    r += m.rows();
  }
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) { return hstack(std::vector<Matrix>{a, b}); }
Matrix vstack(const Matrix& a, const Matrix& b) { return vstack(std::vector<Matrix>{a, b}); }

Matrix block_diag(const std::vector<Matrix>& parts) {
  require(!parts.empty(), ErrorCode::ShapeMismatch, "block_diag of nothing");
  std::size_t nr = 0, nc = 0;
  for (const auto& m : parts) {
    nr += m.rows();
    nc += m.cols();
  }
  Matrix out(parts.front().p(), nr, nc);
  std::size_t r = 0, c = 0;
  for (const auto& m : parts) {
    out.set_block(r, c, m);
    r += m.rows();
    c += m.cols();
  }
  return out;
}

Matrix vec(const Matrix& m) {
  Matrix v(m.p(), m.rows() * m.cols(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) v.set(r * m.cols() + c, 0, m.at(r, c));
  }
  return v;
}

Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  require(v.rows() == rows * cols && v.cols() == 1, ErrorCode::ShapeMismatch, "unvec");
  Matrix m(v.p(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, v.at(r * cols + c, 0));
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require(a.p() == b.p(), ErrorCode::ShapeMismatch, "kron modulus");
  Matrix out(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Residue x = a.at(i, j);
      if (x != 0) out.set_block(i * b.rows(), j * b.cols(), b.scaled(x));
    }
  }
  return out;
}

Rref rref(const Matrix& a) {
  Matrix aug = hstack(a, Matrix::identity(a.p(), a.rows()));
  auto pivots = eliminate(aug, a.cols());
  return {aug.block(0, 0, a.rows(), a.cols()), std::move(pivots), aug.block(0, a.cols(), a.rows(), a.rows())};
}

Matrix rref_only(const Matrix& a, std::vector<std::size_t>* pivots) {
  Matrix r = a;
  auto piv = eliminate(r, a.cols());
  if (pivots) *pivots = std::move(piv);
  return r;
}

std::size_t rank(const Matrix& a) {
  std::vector<std::size_t> piv;
  rref_only(a, &piv);
  return piv.size();
}

Matrix kernel(const Matrix& a) {
  std::vector<std::size_t> piv;
  const Matrix r = rref_only(a, &piv);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  Matrix k(a.p(), a.cols(), a.cols() - piv.size());
  std::size_t j = 0;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    k.set(f, j, 1);
    for (std::size_t i = 0; i < piv.size(); ++i) k.set(piv[i], j, -static_cast<long long>(r.at(i, f)));
    ++j;
  }
  return k;
}

Matrix image(const Matrix& a) {
  std::vector<std::size_t> piv;
  rref_only(a, &piv);
  return a.select_columns(piv);
}

KernelImage kernel_image(const Matrix& a) { return {kernel(a), image(a)}; }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.p() == b.p(), ErrorCode::ShapeMismatch, "solve shapes");
  Matrix aug = hstack(a, b);
  const auto piv = eliminate(aug, a.cols());
  for (std::size_t r = piv.size(); r < aug.rows(); ++r) {
    for (std::size_t c = a.cols(); c < aug.cols(); ++c) {
      if (aug.at(r, c) != 0) return std::nullopt;
    }
  }
  Matrix x(a.p(), a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    for (std::size_t c = 0; c < b.cols(); ++c) x.set(piv[i], c, aug.at(i, a.cols() + c));
  }
  return x;
}

Matrix left_inverse(const Matrix& a) {
  // Solve X A = I through A^T X^T = I.
  auto xt = solve(a.transpose(), Matrix::identity(a.p(), a.cols()));
  require(xt.has_value(), ErrorCode::InvalidInput, "left inverse of a non-injective matrix");
  return xt->transpose();
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  Rref r = rref(a);
  if (r.pivots.size() != a.rows()) return std::nullopt;
  return r.T;
}

Matrix span_basis(const Matrix& u) {
  std::vector<std::size_t> piv;
  const Matrix r = rref_only(u.transpose(), &piv);
  return r.block(0, 0, piv.size(), u.rows()).transpose();
}

bool contains(const Matrix& u, const Matrix& v) {
  require(u.rows() == v.rows(), ErrorCode::AmbientMismatch, "contains");
  if (v.cols() == 0) return true;
  return rank(hstack(u, v)) == rank(u);
}

bool same_span(const Matrix& u, const Matrix& v) { return span_basis(u) == span_basis(v); }

Matrix subspace_sum(const Matrix& u, const Matrix& v) {
  require(u.rows() == v.rows() && u.p() == v.p(), ErrorCode::AmbientMismatch, "subspace sum");
  return span_basis(hstack(u, v));
}

Matrix subspace_intersection(const Matrix& u, const Matrix& v) {
  require(u.rows() == v.rows() && u.p() == v.p(), ErrorCode::AmbientMismatch, "subspace intersection");
  const Matrix bu = span_basis(u);
  const Matrix bv = span_basis(v);
  if (bu.cols() == 0 || bv.cols() == 0) return Matrix(u.p(), u.rows(), 0);
  const Matrix k = kernel(hstack(bu, -bv));
  return span_basis(bu * k.block(0, 0, bu.cols(), k.cols()));
}

Quotient quotient(const Matrix& u, std::size_t ambient, std::uint32_t p) {
  require(u.rows() == ambient, ErrorCode::AmbientMismatch, "quotient");
  const Matrix b = span_basis(u).transpose();  // rows in reduced echelon form
  std::vector<std::size_t> piv;
  rref_only(b, &piv);
  std::vector<bool> is_pivot(ambient, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < ambient; ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  // x mod U: subtract x[piv_i] * b_i, then read the free coordinates.
  // reduce_op = I - B^T E where E selects the pivot coordinates.
  Matrix reduce_op = Matrix::identity(p, ambient);
  Matrix e(p, piv.size(), ambient);
  for (std::size_t i = 0; i < piv.size(); ++i) e.set(i, piv[i], 1);
  if (!piv.empty()) reduce_op = reduce_op - b.transpose() * e;
  Quotient q;
  q.projection = reduce_op.select_rows(free);
  q.section = Matrix(p, ambient, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) q.section.set(free[j], j, 1);
  return q;
}

SubspaceOps subspace_ops(const Matrix& u, const Matrix& v) {
  require(u.rows() == v.rows() && u.p() == v.p(), ErrorCode::AmbientMismatch, "subspace_ops");
  return {subspace_sum(u, v), subspace_intersection(u, v), quotient(u, u.rows(), u.p())};
}

}  // namespace relhom::la
