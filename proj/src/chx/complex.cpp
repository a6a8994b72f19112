#include "relhom/chx/complex.hpp"

#include <algorithm>
#include <limits>

#include "relhom/error.hpp"
#include "relhom/exactla/kernels.hpp"

namespace relhom::chx {

namespace {

Matrix zeros(std::uint32_t p, std::size_t r, std::size_t c) { return Matrix(p, r, c); }

std::pair<long, long> union_window(const Complex& x, const Complex& y) {
  if (x.terms.empty()) return {y.lo, y.hi()};
  if (y.terms.empty()) return {x.lo, x.hi()};
  return {std::min(x.lo, y.lo), std::max(x.hi(), y.hi())};
}

// Left inverse of the vectorized basis, giving coordinates of a map.
Matrix coordinate_map(const std::vector<Matrix>& basis) {
  std::vector<Matrix> cols;
  for (const auto& b : basis) cols.push_back(la::vec(b));
  return la::left_inverse(la::hstack(cols));
}

}  // namespace

Module Complex::term(long i) const {
  return in_window(i) ? terms[static_cast<std::size_t>(i - lo)] : alg::zero_module(algebra);
}

Matrix Complex::diff(long i) const {
  if (in_window(i) && in_window(i + 1)) return diffs[static_cast<std::size_t>(i - lo)];
  return zeros(p(), dim(i + 1), dim(i));
}

bool Complex::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const Module& m) { return m.dim == 0; });
}

std::optional<std::pair<long, long>> Complex::support() const {
  std::optional<std::pair<long, long>> s;
  for (long i = lo; i <= hi(); ++i) {
    if (dim(i) == 0) continue;
    if (!s) s = std::make_pair(i, i);
    s->second = i;
  }
  return s;
}

Matrix ComplexMorphism::at(long i) const {
  const long k = i - lo;
  if (k >= 0 && k < static_cast<long>(maps.size())) return maps[static_cast<std::size_t>(k)];
  return zeros(source.p(), target.dim(i), source.dim(i));
}

Complex make_complex(AlgebraPtr a, long lo, std::vector<Module> terms, std::vector<Matrix> diffs,
                     std::string provenance) {
  Complex x{std::move(a), lo, std::move(terms), std::move(diffs), std::move(provenance)};
  if (auto p = complex_problem(x); !p.empty()) throw Error(ErrorCode::InvalidInput, p);
  return x;
}

std::string complex_problem(const Complex& x) {
  if (x.terms.size() > 0 && x.diffs.size() + 1 != x.terms.size()) return "need one differential between consecutive terms";
  if (x.terms.empty() && !x.diffs.empty()) return "differentials without terms";
  for (long i = x.lo; i <= x.hi(); ++i) {
    const Module& m = x.terms[static_cast<std::size_t>(i - x.lo)];
    if (!alg::same_algebra(m, alg::zero_module(x.algebra))) return "term " + std::to_string(i) + " lives over another algebra";
    if (auto p = alg::module_problem(m); !p.empty()) return "term " + std::to_string(i) + ": " + p;
  }
  for (long i = x.lo; i < x.hi(); ++i) {
    const Matrix& d = x.diffs[static_cast<std::size_t>(i - x.lo)];
    const Morphism dm{x.term(i), x.term(i + 1), d};
    if (auto p = alg::morphism_problem(dm); !p.empty()) return "d^" + std::to_string(i) + ": " + p;
  }
  for (long i = x.lo; i + 1 < x.hi(); ++i) {
    if (!(x.diff(i + 1) * x.diff(i)).is_zero()) return "d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " != 0";
  }
  return {};
}

std::string map_problem(const ComplexMorphism& f) {
  const auto [lo, hi] = union_window(f.source, f.target);
  for (long i = lo; i <= hi; ++i) {
    const Matrix m = f.at(i);
    if (m.rows() != f.target.dim(i) || m.cols() != f.source.dim(i)) return "degree " + std::to_string(i) + ": wrong shape";
    if (auto p = alg::morphism_problem(Morphism{f.source.term(i), f.target.term(i), m}); !p.empty()) {
      return "degree " + std::to_string(i) + ": " + p;
    }
    if (!(f.target.diff(i) * m == f.at(i + 1) * f.source.diff(i))) {
      return "square at degree " + std::to_string(i) + " does not commute";
    }
  }
  return {};
}

Complex zero_complex(AlgebraPtr a) { return Complex{std::move(a), 0, {}, {}, "zero"}; }

Complex stalk(const Module& m, long degree) { return Complex{m.algebra, degree, {m}, {}, "stalk"}; }

Complex two_term(const Morphism& f, long degree) {
  return make_complex(f.source.algebra, degree, {f.source, f.target}, {f.f}, "two_term");
}

Complex disk(const Module& j, long i) {
  return Complex{j.algebra, i - 1, {j, j}, {Matrix::identity(j.p(), j.dim)}, "disk"};
}

Complex shift_window(const Complex& x, long new_lo, long new_hi) {
  Complex y{x.algebra, new_lo, {}, {}, x.provenance};
  for (long i = new_lo; i <= new_hi; ++i) y.terms.push_back(x.term(i));
  for (long i = new_lo; i < new_hi; ++i) y.diffs.push_back(x.diff(i));
  return y;
}

Complex direct_sum(const Complex& x, const Complex& y) {
  const auto [lo, hi] = union_window(x, y);
  Complex s{x.algebra, lo, {}, {}, "direct_sum"};
  if (x.terms.empty() && y.terms.empty()) return s;
  for (long i = lo; i <= hi; ++i) s.terms.push_back(alg::direct_sum(x.term(i), y.term(i)));
  for (long i = lo; i < hi; ++i) s.diffs.push_back(la::block_diag({x.diff(i), y.diff(i)}));
  return s;
}

ComplexMorphism identity_map(const Complex& x) {
  return make_map(x, x, [&](long i) { return Matrix::identity(x.p(), x.dim(i)); }, "identity");
}

ComplexMorphism zero_map(const Complex& x, const Complex& y) {
  return make_map(x, y, [&](long i) { return zeros(x.p(), y.dim(i), x.dim(i)); }, "zero");
}

ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f) {
  return make_map(f.source, g.target, [&](long i) { return g.at(i) * f.at(i); }, "compose");
}

ComplexMorphism add(const ComplexMorphism& f, const ComplexMorphism& g) {
  return make_map(f.source, f.target, [&](long i) { return f.at(i) + g.at(i); }, "add");
}

ComplexMorphism scale(const ComplexMorphism& f, la::Residue c) {
  return make_map(f.source, f.target, [&](long i) { return f.at(i).scaled(c); }, f.provenance);
}

bool equal_maps(const ComplexMorphism& f, const ComplexMorphism& g) {
  const auto [lo, hi] = union_window(f.source, f.target);
  for (long i = lo; i <= hi; ++i) {
    if (!(f.at(i) == g.at(i))) return false;
  }
  return true;
}

ComplexMorphism direct_sum(const ComplexMorphism& f, const ComplexMorphism& g) {
  return make_map(direct_sum(f.source, g.source), direct_sum(f.target, g.target),
                  [&](long i) { return la::block_diag({f.at(i), g.at(i)}); }, "direct_sum");
}

ComplexMorphism sum_injection_first(const Complex& x, const Complex& y) {
  return make_map(x, direct_sum(x, y), [&](long i) {
    return la::vstack(Matrix::identity(x.p(), x.dim(i)), zeros(x.p(), y.dim(i), x.dim(i)));
  }, "injection");
}

ComplexMorphism sum_projection_first(const Complex& x, const Complex& y) {
  return make_map(direct_sum(x, y), x, [&](long i) {
    return la::hstack(Matrix::identity(x.p(), x.dim(i)), zeros(x.p(), x.dim(i), y.dim(i)));
  }, "projection");
}

Module cohomology(const Complex& x, long n) {
  if (!x.in_window(n)) return alg::zero_module(x.algebra);
  return alg::homology(x.diff(n - 1), x.term(n), x.diff(n));
}

Complex cone(const ComplexMorphism& phi) {
  const Complex& x = phi.source;
  const Complex& y = phi.target;
  if (x.terms.empty() && y.terms.empty()) return zero_complex(x.algebra);
  long lo = 0, hi = 0;
  if (x.terms.empty()) {
    lo = y.lo, hi = y.hi();
  } else if (y.terms.empty()) {
    lo = x.lo - 1, hi = x.hi() - 1;
  } else {
    lo = std::min(x.lo - 1, y.lo), hi = std::max(x.hi() - 1, y.hi());
  }
  Complex c{x.algebra, lo, {}, {}, "cone"};
  for (long n = lo; n <= hi; ++n) c.terms.push_back(alg::direct_sum(x.term(n + 1), y.term(n)));
  for (long n = lo; n < hi; ++n) {
    const Matrix top = la::hstack(-x.diff(n + 1), zeros(x.p(), x.dim(n + 2), y.dim(n)));
    const Matrix bottom = la::hstack(phi.at(n + 1), y.diff(n));
    c.diffs.push_back(la::vstack(top, bottom));
  }
  return c;
}

Truncation truncate(const Complex& x, long n) {
  if (x.terms.empty() || n <= x.lo) return {x, identity_map(x)};
  if (n > x.hi()) {
    Complex z = zero_complex(x.algebra);
    return {z, zero_map(x, z)};
  }
  const alg::QuotientModule q = alg::quotient_module(x.term(n), la::image(x.diff(n - 1)));
  Complex t{x.algebra, n, {q.module}, {}, "truncate"};
  for (long i = n + 1; i <= x.hi(); ++i) t.terms.push_back(x.term(i));
  if (n < x.hi()) t.diffs.push_back(x.diff(n) * q.section);
  for (long i = n + 1; i < x.hi(); ++i) t.diffs.push_back(x.diff(i));
  ComplexMorphism quo = make_map(x, t, [&](long i) -> Matrix {
    if (i < n) return zeros(x.p(), 0, x.dim(i));
    if (i == n) return q.projection.f;
    return Matrix::identity(x.p(), x.dim(i));
  }, "truncation quotient");
  return {t, quo};
}

std::size_t HomComplex::cohomology_dim(long n) const {
  if (n < lo || n > hi()) return 0;
  const std::size_t k = static_cast<std::size_t>(n - lo);
  const std::size_t d = components[k].dim;
  const std::size_t out = k < diffs.size() ? la::rank(diffs[k]) : 0;
  const std::size_t in = k > 0 ? la::rank(diffs[k - 1]) : 0;
  return d - out - in;
}

bool HomComplex::acyclic() const {
  for (long n = lo; n <= hi(); ++n) {
    if (cohomology_dim(n) != 0) return false;
  }
  return true;
}

namespace {

// Components of degrees n0..n1 of Hom(X, Y) and the differentials between them.
HomComplex hom_window(const ModuleCategory& cat, const Complex& x, const Complex& y, long n0, long n1) {
  HomComplex h;
  h.p = cat.p();
  const auto sx = x.support();
  const auto sy = y.support();
  if (!sx || !sy) return h;
  h.lo = std::max(n0, sy->first - sx->second);
  const long hi = std::min(n1, sy->second - sx->first);
  if (hi < h.lo) {
    h.lo = 0;
    return h;
  }
  for (long n = h.lo; n <= hi; ++n) {
    HomComplex::Component comp{n, {}, 0};
    for (long i = sx->first; i <= sx->second; ++i) {
      if (x.dim(i) == 0 || y.dim(i + n) == 0) continue;
      auto basis = cat.hom_basis(x.term(i), y.term(i + n));
      if (basis.empty()) continue;
      comp.dim += basis.size();
      comp.pieces.push_back({i, std::move(basis)});
    }
    h.components.push_back(std::move(comp));
  }
  for (std::size_t k = 0; k + 1 < h.components.size(); ++k) {
    const auto& src = h.components[k];
    const auto& dst = h.components[k + 1];
    const long n = src.degree;
    const la::Residue sign = n % 2 == 0 ? 1 : static_cast<la::Residue>(cat.p() - 1);
    Matrix d(cat.p(), dst.dim, src.dim);
    std::size_t row = 0;
    for (const auto& target : dst.pieces) {
      const long j = target.source_degree;
      const std::size_t rows = y.dim(j + n + 1), cols = x.dim(j);
      // Vectorized images of every source basis map, one column each.
      Matrix images(cat.p(), rows * cols, src.dim);
      std::size_t col = 0;
      for (const auto& piece : src.pieces) {
        const long i = piece.source_degree;
        for (const auto& f : piece.basis) {
          // (df)_j = d_Y f_j - (-1)^n f_{j+1} d_X^j, with f concentrated at i.
          if (j == i || j + 1 == i) {
            Matrix g = zeros(cat.p(), rows, cols);
            if (j == i) g = g + y.diff(i + n) * f;
            if (j + 1 == i) g = g - (f * x.diff(j)).scaled(sign);
            for (std::size_t r = 0; r < rows; ++r) {
              for (std::size_t c = 0; c < cols; ++c) images.set(r * cols + c, col, g.at(r, c));
            }
          }
          ++col;
        }
      }
      if (!images.is_zero()) d.set_block(row, 0, coordinate_map(target.basis) * images);
      row += target.basis.size();
    }
    h.diffs.push_back(std::move(d));
  }
  return h;
}

}  // namespace

HomComplex hom_complex(const ModuleCategory& cat, const Complex& x, const Complex& y) {
  return hom_window(cat, x, y, std::numeric_limits<long>::min() / 4, std::numeric_limits<long>::max() / 4);
}

namespace {

ComplexMorphism from_coordinates(const HomComplex& h, const Complex& x, const Complex& y, const Matrix& c) {
  const auto& comp = h.components[static_cast<std::size_t>(-h.lo)];
  std::vector<std::pair<long, Matrix>> parts;
  std::size_t k = 0;
  for (const auto& piece : comp.pieces) {
    Matrix m = zeros(x.p(), y.dim(piece.source_degree), x.dim(piece.source_degree));
    for (const auto& b : piece.basis) {
      const la::Residue coef = c.at(k++, 0);
      if (coef == 0) continue;
      for (std::size_t r = 0; r < m.rows(); ++r) la::simd::axpy_mod(m.row(r), b.row(r), coef, x.p());
    }
    parts.emplace_back(piece.source_degree, std::move(m));
  }
  return make_map(x, y, [&](long i) {
    for (const auto& [deg, m] : parts) {
      if (deg == i) return m;
    }
    return zeros(x.p(), y.dim(i), x.dim(i));
  }, "chain map");
}

Matrix to_coordinates(const HomComplex& h, const ComplexMorphism& f) {
  const auto& comp = h.components[static_cast<std::size_t>(-h.lo)];
  std::vector<Matrix> blocks;
  for (const auto& piece : comp.pieces) blocks.push_back(coordinate_map(piece.basis) * la::vec(f.at(piece.source_degree)));
  return blocks.empty() ? zeros(h.p, 0, 1) : la::vstack(blocks);
}

bool has_degree_zero(const HomComplex& h) { return !h.components.empty() && h.lo <= 0 && h.hi() >= 0; }

}  // namespace

std::vector<ComplexMorphism> chain_maps(const ModuleCategory& cat, const Complex& x, const Complex& y) {
  const HomComplex h = hom_window(cat, x, y, 0, 1);
  std::vector<ComplexMorphism> out;
  if (!has_degree_zero(h)) return out;
  const std::size_t k = static_cast<std::size_t>(-h.lo);
  const std::size_t d = h.components[k].dim;
  const Matrix cycles = k < h.diffs.size() ? la::kernel(h.diffs[k]) : Matrix::identity(cat.p(), d);
  for (std::size_t c = 0; c < cycles.cols(); ++c) out.push_back(from_coordinates(h, x, y, cycles.block(0, c, cycles.rows(), 1)));
  return out;
}

bool is_null_homotopic(const ModuleCategory& cat, const ComplexMorphism& f) {
  const HomComplex h = hom_window(cat, f.source, f.target, -1, 0);
  if (!has_degree_zero(h)) return true;
  const std::size_t k = static_cast<std::size_t>(-h.lo);
  const Matrix v = to_coordinates(h, f);
  if (v.is_zero()) return true;
  if (k == 0) return false;
  return la::contains(la::image(h.diffs[k - 1]), v);
}

}  // namespace relhom::chx
