#include "relhom/algmod/module.hpp"

#include <sstream>

#include "relhom/error.hpp"

namespace relhom::alg {

namespace {

void require_same(const Module& a, const Module& b, const char* what) {
  if (!same_algebra(a, b)) throw Error(ErrorCode::AlgebraMismatch, what);
}

}  // namespace

Matrix Module::act(const Matrix& x) const {
  Matrix m(p(), dim, dim);
  for (std::size_t i = 0; i < action.size(); ++i) {
    if (x.at(i, 0) != 0) m = m + action[i].scaled(x.at(i, 0));
  }
  return m;
}

Morphism Morphism::compose_after(const Morphism& g) const { return compose(*this, g); }

Module make_module(AlgebraPtr a, std::vector<Matrix> action) {
  Module m;
  m.dim = action.empty() ? 0 : action.front().rows();
  m.algebra = std::move(a);
  m.action = std::move(action);
  if (m.action.size() != m.algebra->dim()) throw Error(ErrorCode::ShapeMismatch, "one action matrix per basis element");
  return m;
}

Module zero_module(AlgebraPtr a) {
  std::vector<Matrix> act(a->dim(), Matrix(a->p(), 0, 0));
  return make_module(std::move(a), std::move(act));
}

Module regular_module(AlgebraPtr a) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(a->left_mult(i));
  return make_module(std::move(a), std::move(act));
}

bool same_algebra(const Module& a, const Module& b) {
  return a.algebra == b.algebra || a.algebra->same_structure(*b.algebra);
}

std::string module_problem(const Module& m) {
  const Algebra& a = *m.algebra;
  if (m.action.size() != a.dim()) return "wrong number of action matrices";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (m.action[i].rows() != m.dim || m.action[i].cols() != m.dim || m.action[i].p() != a.p()) {
      return "action matrix " + std::to_string(i) + " has the wrong shape";
    }
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix rhs(a.p(), m.dim, m.dim);
      for (std::size_t k = 0; k < a.dim(); ++k) {
        if (a.c(i, j, k) != 0) rhs = rhs + m.action[k].scaled(a.c(i, j, k));
      }
      if (m.action[i] * m.action[j] != rhs) {
        std::ostringstream os;
        os << "action is not multiplicative on basis pair (" << i << "," << j << ")";
        return os.str();
      }
    }
  }
  if (!m.act(a.unit_column()).is_identity() && m.dim > 0) return "unit does not act as the identity";
  return {};
}

std::string morphism_problem(const Morphism& f) {
  if (!same_algebra(f.source, f.target)) return "source and target live over different algebras";
  if (f.f.rows() != f.target.dim || f.f.cols() != f.source.dim) return "matrix shape does not match the modules";
  for (std::size_t i = 0; i < f.source.action.size(); ++i) {
    if (f.target.action[i] * f.f != f.f * f.source.action[i]) {
      return "matrix does not intertwine the action of basis element " + std::to_string(i);
    }
  }
  return {};
}

Morphism identity(const Module& m) { return {m, m, Matrix::identity(m.p(), m.dim)}; }

Morphism zero_morphism(const Module& source, const Module& target) {
  require_same(source, target, "zero morphism");
  return {source, target, Matrix(source.p(), target.dim, source.dim)};
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (g.source.dim != f.target.dim) throw Error(ErrorCode::ShapeMismatch, "composition of incompatible morphisms");
  return {f.source, g.target, g.f * f.f};
}

Morphism add(const Morphism& a, const Morphism& b) { return {a.source, a.target, a.f + b.f}; }

Morphism scale(const Morphism& a, Residue c) { return {a.source, a.target, a.f.scaled(c)}; }

Submodule submodule(const Module& m, const Matrix& basis) {
  const Matrix b = la::span_basis(basis);
  const Matrix linv = b.cols() ? la::left_inverse(b) : Matrix(m.p(), 0, m.dim);
  std::vector<Matrix> act;
  for (const auto& r : m.action) {
    const Matrix img = r * b;
    if (b.cols() && !(b * (linv * img) == img)) throw Error(ErrorCode::InvalidInput, "subspace is not a submodule");
    act.push_back(linv * img);
  }
  Module sub = make_module(m.algebra, std::move(act));
  sub.dim = b.cols();
  return {sub, Morphism{sub, m, b}};
}

QuotientModule quotient_module(const Module& m, const Matrix& basis) {
  const la::Quotient q = la::quotient(basis, m.dim, m.p());
  std::vector<Matrix> act;
  for (const auto& r : m.action) act.push_back(q.projection * r * q.section);
  Module quo = make_module(m.algebra, std::move(act));
  quo.dim = q.projection.rows();
  return {quo, Morphism{m, quo, q.projection}, q.section};
}

Module direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "direct sum of an empty family");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < parts.front().action.size(); ++i) {
    std::vector<Matrix> blocks;
    for (const auto& m : parts) {
      require_same(m, parts.front(), "direct sum");
      blocks.push_back(m.action[i]);
    }
    act.push_back(la::block_diag(blocks));
  }
  Module s = make_module(parts.front().algebra, std::move(act));
  s.dim = 0;
  for (const auto& m : parts) s.dim += m.dim;
  return s;
}

Module direct_sum(const Module& a, const Module& b) { return direct_sum(std::vector<Module>{a, b}); }

Morphism sum_injection(const std::vector<Module>& parts, std::size_t i) {
  const Module s = direct_sum(parts);
  std::size_t off = 0;
  for (std::size_t k = 0; k < i; ++k) off += parts[k].dim;
  Matrix f(s.p(), s.dim, parts[i].dim);
  f.set_block(off, 0, Matrix::identity(s.p(), parts[i].dim));
  return {parts[i], s, f};
}

Morphism sum_projection(const std::vector<Module>& parts, std::size_t i) {
  Morphism inj = sum_injection(parts, i);
  return {inj.target, inj.source, inj.f.transpose()};
}

Morphism hcat(const Morphism& f, const Morphism& g) {
  return {direct_sum(f.source, g.source), f.target, la::hstack(f.f, g.f)};
}

Morphism vcat(const Morphism& f, const Morphism& g) {
  return {f.source, direct_sum(f.target, g.target), la::vstack(f.f, g.f)};
}

Morphism direct_sum(const Morphism& f, const Morphism& g) {
  return {direct_sum(f.source, g.source), direct_sum(f.target, g.target), la::block_diag({f.f, g.f})};
}

Matrix spin(const Module& m, const Matrix& vectors) {
  Matrix b = la::span_basis(vectors);
  while (true) {
    std::vector<Matrix> parts{b};
    for (const auto& r : m.action) parts.push_back(r * b);
    Matrix next = la::span_basis(la::hstack(parts));
    if (next.cols() == b.cols()) return next;
    b = std::move(next);
  }
}

Module dual(const Module& m, AlgebraPtr opposite) {
  std::vector<Matrix> act;
  for (const auto& r : m.action) act.push_back(r.transpose());
  Module d = make_module(std::move(opposite), std::move(act));
  d.dim = m.dim;
  return d;
}

MorphismParts morphism_parts(const Morphism& f) {
  if (auto problem = morphism_problem(f); !problem.empty()) throw Error(ErrorCode::InvalidInput, problem);
  const Matrix img = la::image(f.f);
  return {submodule(f.source, la::kernel(f.f)), submodule(f.target, img), quotient_module(f.target, img)};
}

bool is_injective_map(const Morphism& f) { return la::rank(f.f) == f.source.dim; }
bool is_surjective_map(const Morphism& f) { return la::rank(f.f) == f.target.dim; }

Module homology(const Matrix& in, const Module& middle, const Matrix& out) {
  if (in.rows() != middle.dim || out.cols() != middle.dim) throw Error(ErrorCode::ShapeMismatch, "homology of incompatible maps");
  if (!(out * in).is_zero()) throw Error(ErrorCode::ShapeMismatch, "homology of a sequence that is not a complex");
  const Submodule cycles = submodule(middle, la::kernel(out));
  if (cycles.module.dim == 0) return cycles.module;
  const Matrix boundaries = la::left_inverse(cycles.inclusion.f) * in;
  return quotient_module(cycles.module, boundaries).module;
}

}  // namespace relhom::alg
