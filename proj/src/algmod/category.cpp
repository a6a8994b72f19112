#include "relhom/algmod/category.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "relhom/error.hpp"

namespace relhom::alg {

namespace {

using Poly = std::vector<Residue>;  // coefficients, lowest degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const long long x = i < a.size() ? a[i] : 0;
    const long long y = i < b.size() ? b[i] : 0;
    r[i] = la::reduce(x - y, p);
  }
  trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = static_cast<Residue>((r[i + j] + a[i] * b[j]) % p);
  }
  trim(r);
  return r;
}

// Quotient and remainder of a by a nonzero b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const Residue inv = la::inverse_mod(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const auto c = static_cast<Residue>(a.back() * inv % p);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[i + shift] = la::reduce(static_cast<long long>(a[i + shift]) - static_cast<long long>(c) * b[i], p);
    }
    trim(a);
  }
  trim(q);
  return {q, a};
}

Residue poly_eval(const Poly& f, Residue x, std::uint32_t p) {
  std::uint32_t acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
  return static_cast<Residue>(acc);
}

// u with u * a = 1 modulo b, for coprime a and b.
Poly inverse_modulo(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r0 = b, r1 = poly_divmod(a, b, p).second;
  Poly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p);
    Poly t2 = poly_sub(t0, poly_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant.
  const Residue inv = la::inverse_mod(r0.front(), p);
  for (auto& c : t0) c = static_cast<Residue>(c * inv % p);
  return poly_divmod(t0, b, p).second;
}

// Arithmetic of the semisimple quotient B = A / rad A in quotient coordinates.
struct Quotient {
  const Algebra* a;
  Matrix Q, S;
  std::size_t dim() const { return Q.rows(); }
  Matrix mul(const Matrix& u, const Matrix& v) const { return Q * a->multiply(S * u, S * v); }
  Matrix lmul(const Matrix& u) const { return Q * a->left_mult(S * u) * S; }
  Matrix rmul(const Matrix& u) const { return Q * a->right_mult(S * u) * S; }
  Matrix eval(const Poly& f, const Matrix& x, const Matrix& one) const {
    Matrix acc(one.p(), one.rows(), 1);
    for (std::size_t i = f.size(); i-- > 0;) acc = mul(acc, x) + one.scaled(f[i]);
    return acc;
  }
};

// Minimal polynomial of x inside the corner algebra with identity `one`.
Poly minimal_polynomial(const Quotient& b, const Matrix& x, const Matrix& one) {
  const std::uint32_t p = one.p();
  std::vector<Matrix> powers{one};
  while (true) {
    Matrix next = b.mul(x, powers.back());
    auto coeffs = la::solve(la::hstack(powers), next);
    if (coeffs) {
      Poly m(powers.size() + 1, 0);
      for (std::size_t i = 0; i < powers.size(); ++i) m[i] = la::reduce(-static_cast<long long>(coeffs->at(i, 0)), p);
      m.back() = 1;
      return m;
    }
    powers.push_back(std::move(next));
  }
}

// Splits a non-primitive idempotent using one element of its corner algebra.
std::optional<Matrix> split_with(const Quotient& b, const Matrix& x, const Matrix& e) {
  const std::uint32_t p = e.p();
  const Poly m = minimal_polynomial(b, x, e);
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    if (poly_eval(m, static_cast<Residue>(lambda), p) != 0) continue;
    const Poly lin = {la::reduce(-static_cast<long long>(lambda), p), 1};
    Poly f = {1}, g = m;
    while (poly_eval(g, static_cast<Residue>(lambda), p) == 0) {
      g = poly_divmod(g, lin, p).first;
      f = poly_mul(f, lin, p);
    }
    if (g.size() <= 1) continue;
    // v g = 1 mod f, so (v g)(x) is the idempotent of the lambda-part.
    const Poly v = inverse_modulo(g, f, p);
    const Matrix idem = b.eval(poly_mul(v, g, p), x, e);
    if (!idem.is_zero() && idem != e && b.mul(idem, idem) == idem) return idem;
  }
  return std::nullopt;
}

Matrix random_combination(const Matrix& basis, std::mt19937_64& rng) {
  Matrix coeffs(basis.p(), basis.cols(), 1);
  for (std::size_t i = 0; i < basis.cols(); ++i) coeffs.set(i, 0, static_cast<long long>(rng() % basis.p()));
  return basis * coeffs;
}

std::vector<long long> integer_power_trace_input(const Matrix& m) {
  std::vector<long long> v(m.data().begin(), m.data().end());
  return v;
}

// Trace of (integer lift of m)^e modulo `mod`.
long long lifted_power_trace(const Matrix& m, std::uint64_t e, long long mod) {
  const std::size_t n = m.rows();
  using IntMat = std::vector<long long>;
  auto mul = [&](const IntMat& x, const IntMat& y) {
    IntMat r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const long long a = x[i * n + k];
        if (a == 0) continue;
        for (std::size_t j = 0; j < n; ++j) r[i * n + j] = (r[i * n + j] + a * y[k * n + j]) % mod;
      }
    }
    return r;
  };
  IntMat base = integer_power_trace_input(m), acc(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) acc[i * n + i] = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  long long tr = 0;
  for (std::size_t i = 0; i < n; ++i) tr = (tr + acc[i * n + i]) % mod;
  return tr;
}

}  // namespace

Matrix jacobson_radical(const Algebra& a) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  std::vector<Residue> traces(d);
  for (std::size_t m = 0; m < d; ++m) {
    const Matrix l = a.left_mult(m);
    long long t = 0;
    for (std::size_t i = 0; i < d; ++i) t += l.at(i, i);
    traces[m] = la::reduce(t, p);
  }
  // Trace form: x lies in I_0 iff Tr(L_{x e_j}) = 0 for all j.
  Matrix form(p, d, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      long long t = 0;
      for (std::size_t m = 0; m < d; ++m) t += static_cast<long long>(a.c(k, j, m)) * traces[m];
      form.set(j, k, t);
    }
  }
  Matrix basis = la::kernel(form);
  std::uint64_t power = p;
  for (std::size_t level = 1; power <= d && basis.cols() > 0; ++level, power *= p) {
    const long long mod = static_cast<long long>(power) * p;
    Matrix g(p, d, basis.cols());
    for (std::size_t k = 0; k < basis.cols(); ++k) {
      const Matrix bk = basis.block(0, k, d, 1);
      for (std::size_t j = 0; j < d; ++j) {
        const Matrix y = a.right_mult(Matrix::unit_column(p, d, j)) * bk;
        const long long tr = lifted_power_trace(a.left_mult(y), power, mod);
        g.set(j, k, tr / static_cast<long long>(power));
      }
    }
    basis = basis * la::kernel(g);
  }
  return la::span_basis(basis);
}

ModuleCategory::ModuleCategory(AlgebraPtr algebra) : algebra_(std::move(algebra)) { build(true); }

ModuleCategory::ModuleCategory(AlgebraPtr algebra, bool with_opposite) : algebra_(std::move(algebra)) {
  build(with_opposite);
}

ModuleCategory::~ModuleCategory() = default;

void ModuleCategory::build(bool with_opposite) {
  const Algebra& a = *algebra_;
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  if (auto diag = validate_algebra(a); !diag.ok) throw Error(ErrorCode::ValidationError, diag.problems.front());

  radical_ = jacobson_radical(a);

  // Greedy generating set: add basis elements outside the subalgebra so far.
  Matrix span = la::span_basis(a.unit_column());
  for (std::size_t i = 0; i < d; ++i) {
    if (la::contains(span, Matrix::unit_column(p, d, i))) continue;
    generators_.push_back(i);
    while (true) {
      std::vector<Matrix> parts{span};
      for (auto g : generators_) parts.push_back(a.left_mult(g) * span);
      Matrix next = la::span_basis(la::hstack(parts));
      if (next.cols() == span.cols()) break;
      span = std::move(next);
    }
  }

  const la::Quotient q = la::quotient(radical_, d, p);
  const Quotient b{&a, q.projection, q.section};
  const std::size_t bdim = b.dim();

  // Complete set of primitive orthogonal idempotents of B.
  std::mt19937_64 rng(0x51a9c0de5eedULL);
  std::vector<Matrix> pending{q.projection * a.unit_column()}, primitive;
  while (!pending.empty()) {
    Matrix e = pending.back();
    pending.pop_back();
    if (e.is_zero()) continue;
    const Matrix corner = la::image(b.lmul(e) * b.rmul(e));
    if (corner.cols() == 1) {
      primitive.push_back(e);
      continue;
    }
    std::optional<Matrix> part;
    for (std::size_t k = 0; k < corner.cols() && !part; ++k) part = split_with(b, corner.block(0, k, bdim, 1), e);
    for (int trial = 0; trial < 400 && !part; ++trial) part = split_with(b, random_combination(corner, rng), e);
    if (!part) throw Error(ErrorCode::NonSplit, "semisimple quotient of " + a.name() + " is not split over F_p");
    pending.push_back(e - *part);
    pending.push_back(*part);
  }

  // One representative per isomorphism class: Be ~ Bf iff eBf != 0.
  Module bmod;
  {
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < d; ++i) act.push_back(b.Q * a.left_mult(i) * b.S);
    bmod = make_module(algebra_, std::move(act));
    bmod.dim = bdim;
  }
  std::vector<Matrix> reps;
  for (const auto& e : primitive) {
    bool known = false;
    for (const auto& f : reps) {
      if (!(b.lmul(e) * b.rmul(f)).is_zero()) known = true;
    }
    if (!known) reps.push_back(e);
  }
  struct Candidate {
    Module simple;
    Matrix idempotent;
    std::vector<std::size_t> key;
  };
  std::vector<Candidate> found;
  std::size_t total = 0;
  for (const auto& e : reps) {
    Candidate c;
    c.simple = submodule(bmod, la::image(b.rmul(e))).module;
    total += c.simple.dim * c.simple.dim;
    for (const auto& r : c.simple.action) c.key.push_back(la::rank(r));
    // Lift to an idempotent of A.
    Matrix x = b.S * e;
    for (int it = 0;; ++it) {
      const Matrix x2 = a.multiply(x, x);
      if (x2 == x) break;
      if (it > 64) throw Error(ErrorCode::NonSplit, "idempotent lifting did not converge");
      x = x2.scaled(3) - a.multiply(x2, x).scaled(2);
    }
    c.idempotent = x;
    found.push_back(std::move(c));
  }
  if (total != bdim) throw Error(ErrorCode::NonSplit, "semisimple quotient of " + a.name() + " is not split over F_p");
  std::stable_sort(found.begin(), found.end(), [](const Candidate& l, const Candidate& r) {
    if (l.key != r.key) return l.key > r.key;
    if (l.simple.dim != r.simple.dim) return l.simple.dim < r.simple.dim;
    for (std::size_t i = 0; i < l.simple.action.size(); ++i) {
      if (l.simple.action[i].data() != r.simple.action[i].data())
        return l.simple.action[i].data() < r.simple.action[i].data();
    }
    return false;
  });

  const Module reg = regular_module(algebra_);
  for (auto& c : found) {
    simples_.push_back(c.simple);
    projectives_.push_back(submodule(reg, a.right_mult(c.idempotent)).module);
    idempotents_.push_back(std::move(c.idempotent));
  }

  if (with_opposite) {
    opposite_.reset(new ModuleCategory(std::make_shared<const Algebra>(a.opposite()), false));
    for (const auto& s : simples_) injectives_.push_back(injective_envelope(s).first);
  }
}

void ModuleCategory::require_module(const Module& m) const {
  if (!(m.algebra == algebra_ || m.algebra->same_structure(*algebra_))) {
    throw Error(ErrorCode::AlgebraMismatch, "module is over a different algebra");
  }
}

std::vector<Matrix> ModuleCategory::hom_basis(const Module& m, const Module& n) const {
  require_module(m);
  require_module(n);
  const std::size_t nm = n.dim * m.dim;
  if (nm == 0) return {};
  const std::uint32_t pp = p();
  Matrix system(pp, 0, nm);
  if (!generators_.empty()) {
    std::vector<Matrix> rows;
    const Matrix im = Matrix::identity(pp, m.dim), in = Matrix::identity(pp, n.dim);
    for (auto g : generators_) rows.push_back(la::kron(n.action[g], im) - la::kron(in, m.action[g].transpose()));
    system = la::vstack(rows);
  }
  const Matrix k = la::kernel(system);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(la::unvec(k.block(0, c, nm, 1), n.dim, m.dim));
  return out;
}

std::vector<Morphism> ModuleCategory::hom_space(const Module& m, const Module& n) const {
  std::vector<Morphism> out;
  for (auto& f : hom_basis(m, n)) out.push_back({m, n, std::move(f)});
  return out;
}

std::size_t ModuleCategory::hom_dim(const Module& m, const Module& n) const { return hom_basis(m, n).size(); }

bool ModuleCategory::is_morphism(const Matrix& f, const Module& m, const Module& n) const {
  if (f.rows() != n.dim || f.cols() != m.dim) return false;
  for (auto g : generators_) {
    if (n.action[g] * f != f * m.action[g]) return false;
  }
  return true;
}

Submodule ModuleCategory::radical(const Module& m) const {
  require_module(m);
  std::vector<Matrix> parts{Matrix(p(), m.dim, 0)};
  for (std::size_t k = 0; k < radical_.cols(); ++k) parts.push_back(m.act(radical_.block(0, k, radical_.rows(), 1)));
  return submodule(m, la::image(la::hstack(parts)));
}

Submodule ModuleCategory::socle(const Module& m) const {
  require_module(m);
  if (radical_.cols() == 0) return submodule(m, Matrix::identity(p(), m.dim));
  std::vector<Matrix> parts;
  for (std::size_t k = 0; k < radical_.cols(); ++k) parts.push_back(m.act(radical_.block(0, k, radical_.rows(), 1)));
  return submodule(m, la::kernel(la::vstack(parts)));
}

std::vector<std::size_t> ModuleCategory::composition_factors(const Module& m) const {
  require_module(m);
  std::vector<std::size_t> out;
  for (const auto& e : idempotents_) out.push_back(m.dim ? la::rank(m.act(e)) : 0);
  return out;
}

std::size_t ModuleCategory::length(const Module& m) const {
  const auto f = composition_factors(m);
  return std::accumulate(f.begin(), f.end(), std::size_t{0});
}

std::vector<std::size_t> ModuleCategory::socle_multiplicities(const Module& m) const {
  return composition_factors(socle(m).module);
}

std::vector<std::size_t> ModuleCategory::top_multiplicities(const Module& m) const {
  return composition_factors(quotient_module(m, radical(m).inclusion.f).module);
}

Matrix ModuleCategory::idempotent_image(const Module& m, std::size_t i) const {
  return la::image(m.act(idempotents_.at(i)));
}

std::pair<Module, Morphism> ModuleCategory::projective_cover(const Module& m) const {
  require_module(m);
  if (m.dim == 0) return {m, identity(m)};
  const Submodule rad = radical(m);
  const QuotientModule top = quotient_module(m, rad.inclusion.f);
  std::vector<Module> parts;
  std::vector<Matrix> columns;
  const Module reg = regular_module(algebra_);
  for (std::size_t i = 0; i < simples_.size(); ++i) {
    const Matrix w = idempotent_image(m, i);
    std::vector<std::size_t> piv;
    la::rref_only(top.projection.f * w, &piv);
    const Matrix pbasis = submodule(reg, algebra_->right_mult(idempotents_[i])).inclusion.f;
    for (auto c : piv) {
      const Matrix v = w.block(0, c, m.dim, 1);
      Matrix img(p(), m.dim, pbasis.cols());
      for (std::size_t j = 0; j < pbasis.cols(); ++j) img.set_block(0, j, m.act(pbasis.block(0, j, pbasis.rows(), 1)) * v);
      parts.push_back(projectives_[i]);
      columns.push_back(img);
    }
  }
  const Module cover = direct_sum(parts);
  if (cover.dim == m.dim) return {m, identity(m)};
  return {cover, Morphism{cover, m, la::hstack(columns)}};
}

std::pair<Module, Morphism> ModuleCategory::injective_envelope(const Module& m) const {
  require_module(m);
  if (!opposite_) throw Error(ErrorCode::InvalidInput, "injective envelopes need the opposite side");
  if (m.dim == 0) return {m, identity(m)};
  const auto [cover, pi] = opposite_->projective_cover(dual(m, opposite_->algebra()));
  if (cover.dim == m.dim) return {m, identity(m)};
  const Module e = dual(cover, algebra_);
  return {e, Morphism{m, e, pi.f.transpose()}};
}

bool ModuleCategory::is_injective(const Module& m) const {
  if (m.dim == 0) return true;
  if (!opposite_) throw Error(ErrorCode::InvalidInput, "injectivity test needs the opposite side");
  return opposite_->projective_cover(dual(m, opposite_->algebra())).first.dim == m.dim;
}

bool ModuleCategory::is_projective(const Module& m) const { return projective_cover(m).first.dim == m.dim; }

std::vector<std::size_t> ModuleCategory::decompose_injective(const Module& e) const {
  if (!is_injective(e)) throw Error(ErrorCode::NotInjective, "module is not injective");
  return socle_multiplicities(e);
}

std::optional<Matrix> ModuleCategory::is_isomorphic(const Module& m, const Module& n) const {
  require_module(m);
  require_module(n);
  if (m.dim != n.dim) return std::nullopt;
  if (m.dim == 0) return Matrix(p(), 0, 0);
  if (composition_factors(m) != composition_factors(n) || socle_multiplicities(m) != socle_multiplicities(n) ||
      top_multiplicities(m) != top_multiplicities(n)) {
    return std::nullopt;
  }
  const auto basis = hom_basis(m, n);
  if (basis.empty()) return std::nullopt;
  const std::uint32_t pp = p();
  auto combine = [&](const std::vector<Residue>& c) {
    Matrix f(pp, n.dim, m.dim);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (c[i]) f = f + basis[i].scaled(c[i]);
    }
    return f;
  };
  auto invertible = [&](const Matrix& f) { return la::rank(f) == m.dim; };
  for (const auto& f : basis) {
    if (invertible(f)) return f;
  }
  std::mt19937_64 rng(0x150c0ffeeULL);
  std::vector<Residue> c(basis.size());
  for (int t = 0; t < 64; ++t) {
    for (auto& x : c) x = static_cast<Residue>(rng() % pp);
    Matrix f = combine(c);
    if (invertible(f)) return f;
  }
  const std::size_t h = basis.size();
  double space = 1;
  for (std::size_t i = 0; i < h; ++i) space *= pp;
  if (h <= 12 && space <= double(1 << 20)) {
    std::fill(c.begin(), c.end(), 0);
    while (true) {
      std::size_t i = 0;
      while (i < h && ++c[i] == pp) c[i++] = 0;
      if (i == h) break;
      Matrix f = combine(c);
      if (invertible(f)) return f;
    }
    return std::nullopt;
  }
  for (int t = 0; t < 4096; ++t) {
    for (auto& x : c) x = static_cast<Residue>(rng() % pp);
    Matrix f = combine(c);
    if (invertible(f)) return f;
  }
  throw Error(ErrorCode::SearchExhausted, "no invertible intertwiner found in the sampled hom-space");
}

}  // namespace relhom::alg
