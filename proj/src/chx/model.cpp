#include "relhom/chx/model.hpp"

#include <algorithm>
#include <random>

#include "relhom/error.hpp"

namespace relhom::chx {

using report::CheckRecord;
using report::json;

namespace {

Matrix zeros(std::uint32_t p, std::size_t r, std::size_t c) { return Matrix(p, r, c); }

std::pair<long, long> window_of(const std::vector<const Complex*>& xs) {
  long lo = 0, hi = -1;
  bool any = false;
  for (const Complex* x : xs) {
    if (x->terms.empty()) continue;
    lo = any ? std::min(lo, x->lo) : x->lo;
    hi = any ? std::max(hi, x->hi()) : x->hi();
    any = true;
  }
  return {lo, hi};
}

// Block matrix assembled from a grid of part sizes.
struct Blocks {
  Blocks(std::uint32_t p, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
      : rows_(std::move(rows)), cols_(std::move(cols)) {
    std::size_t r = 0, c = 0;
    for (auto x : rows_) r += x;
    for (auto x : cols_) c += x;
    m = Matrix(p, r, c);
  }
  void put(std::size_t bi, std::size_t bj, const Matrix& b) {
    std::size_t r = 0, c = 0;
    for (std::size_t k = 0; k < bi; ++k) r += rows_[k];
    for (std::size_t k = 0; k < bj; ++k) c += cols_[k];
    if (b.rows() != rows_[bi] || b.cols() != cols_[bj]) throw Error(ErrorCode::ShapeMismatch, "block of the wrong shape");
    m.set_block(r, c, b);
  }
  Matrix m;

 private:
  std::vector<std::size_t> rows_, cols_;
};

Module sum_of(const std::vector<Module>& parts) { return alg::direct_sum(parts); }

// X^i -> E(X^i / T X^i).
Morphism torsion_free_envelope(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  const alg::QuotientModule q = tors::torsion_free_quotient(cat, m, t);
  auto [e, iota] = cat.injective_envelope(q.module);
  return {m, e, iota.f * q.projection.f};
}

bool support_at_least(const Complex& x, long bottom) {
  const auto s = x.support();
  return !s || s->first >= bottom;
}

}  // namespace

bool is_tau_acyclic(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t, std::optional<long> top) {
  for (long n = x.lo; n <= x.hi(); ++n) {
    if (top && n > *top) break;
    if (!tors::is_torsion(cat, cohomology(x, n), t)) return false;
  }
  return true;
}

bool is_tau_weq(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, std::optional<long> top) {
  Complex c = cone(phi);
  const bool by_cohomology = is_tau_acyclic(cat, c, t, top);
  if (top && !c.terms.empty() && *top + 1 < c.hi()) c = shift_window(c, c.lo, *top + 1);
  bool by_hom = true;
  for (std::size_t i = 0; i < cat.num_simples() && by_hom; ++i) {
    if (t.torsion_simple(i)) continue;
    const HomComplex h = hom_complex(cat, c, stalk(cat.injective(i), 0));
    for (long m = h.lo; m <= h.hi(); ++m) {
      if (top && -m > *top) continue;
      if (h.cohomology_dim(m) != 0) {
        by_hom = false;
        break;
      }
    }
  }
  if (by_cohomology != by_hom) {
    throw Error(ErrorCode::CrosscheckFailed, "cone cohomology and Hom-complex criteria disagree on a weak equivalence");
  }
  return by_cohomology;
}

bool is_fibrant(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t, std::optional<long> top) {
  for (long i = x.lo; i <= x.hi(); ++i) {
    if (top && i > *top) break;
    if (x.dim(i) != 0 && !tors::in_injective_class(cat, x.term(i), t)) return false;
  }
  return true;
}

bool in_C(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long bottom,
          CofibrationConvention conv) {
  const auto [lo, hi] = window_of({&phi.source, &phi.target});
  for (long i = lo; i <= hi; ++i) {
    if (conv == CofibrationConvention::Strict ? i <= bottom : i < bottom) continue;
    if (phi.source.dim(i) == 0) continue;
    if (!tors::is_I_mono(cat, Morphism{phi.source.term(i), phi.target.term(i), phi.at(i)}, t)) return false;
  }
  return true;
}

bool in_B(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long bottom) {
  const auto [lo, hi] = window_of({&phi.source, &phi.target});
  for (long i = lo; i <= hi; ++i) {
    if (i < bottom) continue;
    const Morphism m{phi.source.term(i), phi.target.term(i), phi.at(i)};
    if (!alg::is_surjective_map(m)) return false;
    const Module k = alg::submodule(m.source, la::kernel(m.f)).module;
    if (k.dim != 0 && !tors::in_injective_class(cat, k, t)) return false;
  }
  return true;
}

ClassFlags class_membership(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long bottom,
                            CofibrationConvention conv, std::optional<long> top) {
  if (!support_at_least(phi.source, bottom) || !support_at_least(phi.target, bottom)) {
    throw Error(ErrorCode::InvalidInput, "complex has entries below the window bottom");
  }
  ClassFlags f;
  f.in_W = is_tau_weq(cat, phi, t, top);
  f.in_B = in_B(cat, phi, t, bottom);
  f.in_C = in_C(cat, phi, t, bottom, conv);
  f.fibrant_source = is_fibrant(cat, phi.source, t, top);
  f.fibrant_target = is_fibrant(cat, phi.target, t, top);
  return f;
}

Morphism extend_along_tau_mono(const ModuleCategory& cat, const Morphism& f, const Morphism& iota,
                               const TorsionTheory& t) {
  if (f.source.dim != iota.source.dim) throw Error(ErrorCode::ShapeMismatch, "map and monomorphism have different sources");
  if (f.target.dim != 0 && !tors::in_injective_class(cat, f.target, t)) {
    throw Error(ErrorCode::NoExtension, "target is not a torsion-free injective");
  }
  if (!tors::is_I_mono(cat, iota, t)) throw Error(ErrorCode::NoExtension, "map is not a tau-monomorphism");
  const auto basis = cat.hom_basis(iota.target, f.target);
  if (basis.empty()) {
    if (!f.f.is_zero()) throw Error(ErrorCode::NoExtension, "no maps to extend with");
    return alg::zero_morphism(iota.target, f.target);
  }
  std::vector<Matrix> cols;
  for (const auto& h : basis) cols.push_back(la::vec(h * iota.f));
  const auto c = la::solve(la::hstack(cols), la::vec(f.f));
  if (!c) throw Error(ErrorCode::NoExtension, "extension system has no solution");
  Matrix g(cat.p(), f.target.dim, iota.target.dim);
  for (std::size_t k = 0; k < basis.size(); ++k) g = g + basis[k].scaled(c->at(k, 0));
  return {iota.target, f.target, g};
}

std::optional<ComplexMorphism> solve_diagonal(const ModuleCategory& cat, const ComplexMorphism& c,
                                              const ComplexMorphism& b, const ComplexMorphism& top,
                                              const ComplexMorphism& bottom_map) {
  const Complex& a2 = c.target;
  const Complex& bb = b.source;
  const auto [lo, hi] = window_of({&c.source, &c.target, &b.source, &b.target});
  const auto basis = chain_maps(cat, a2, bb);
  std::vector<Matrix> rhs_parts;
  for (long i = lo; i <= hi; ++i) {
    rhs_parts.push_back(la::vec(top.at(i)));
    rhs_parts.push_back(la::vec(bottom_map.at(i)));
  }
  if (rhs_parts.empty()) return zero_map(a2, bb);
  const Matrix rhs = la::vstack(rhs_parts);
  if (basis.empty()) {
    if (!rhs.is_zero()) return std::nullopt;
    return zero_map(a2, bb);
  }
  Matrix system(cat.p(), rhs.rows(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::size_t r = 0;
    auto put = [&](const Matrix& m) {
      for (std::size_t u = 0; u < m.rows(); ++u) {
        for (std::size_t v = 0; v < m.cols(); ++v) system.set(r++, k, m.at(u, v));
      }
    };
    for (long i = lo; i <= hi; ++i) {
      const Matrix psi = basis[k].at(i);
      put(psi * c.at(i));
      put(b.at(i) * psi);
    }
  }
  const auto x = la::solve(system, rhs);
  if (!x) return std::nullopt;
  ComplexMorphism out = zero_map(a2, bb);
  for (std::size_t k = 0; k < basis.size(); ++k) out = add(out, scale(basis[k], x->at(k, 0)));
  out.provenance = "lift";
  return out;
}

ComplexMorphism lift_square(const ModuleCategory& cat, const ComplexMorphism& c, const ComplexMorphism& b,
                            const ComplexMorphism& top, const ComplexMorphism& bottom_map, const TorsionTheory& t,
                            long bottom) {
  if (!in_C(cat, c, t, bottom)) throw Error(ErrorCode::NoLiftPrecondition, "left map is not a cofibration");
  if (!in_B(cat, b, t, bottom)) throw Error(ErrorCode::NoLiftPrecondition, "right map is not a fibration");
  if (!is_tau_weq(cat, c, t) && !is_tau_weq(cat, b, t)) {
    throw Error(ErrorCode::NoLiftPrecondition, "neither map is a weak equivalence");
  }
  if (!equal_maps(compose(b, top), compose(bottom_map, c))) {
    throw Error(ErrorCode::NoLiftPrecondition, "square does not commute");
  }
  auto psi = solve_diagonal(cat, c, b, top, bottom_map);
  if (!psi) throw Error(ErrorCode::NoLift, "no diagonal solves the square");
  return *psi;
}

Factorization factor_disk(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long bottom) {
  const Complex& x = phi.source;
  const Complex& y = phi.target;
  if (!support_at_least(x, bottom) || !support_at_least(y, bottom)) {
    throw Error(ErrorCode::InvalidInput, "complex has entries below the window bottom");
  }
  if (in_B(cat, phi, t, bottom) && is_tau_weq(cat, phi, t)) return {identity_map(x), x, phi, std::nullopt};
  const auto p = cat.p();
  // Disk i carries J^i = E(X^i / T X^i) in degrees i-1 and i.
  std::vector<std::pair<long, Morphism>> disks;
  for (long i = std::max(x.lo, bottom + 1); i <= x.hi(); ++i) {
    if (x.dim(i) == 0) continue;
    Morphism iota = torsion_free_envelope(cat, x.term(i), t);
    if (iota.target.dim != 0) disks.emplace_back(i, std::move(iota));
  }
  auto disk_at = [&](long i) -> const Morphism* {
    for (const auto& [deg, m] : disks) {
      if (deg == i) return &m;
    }
    return nullptr;
  };
  auto [lo, hi] = window_of({&x, &y});
  if (!disks.empty()) lo = std::min(lo, disks.front().first - 1);
  const Module zero = alg::zero_module(x.algebra);
  // Parts of Z^k: Y^k, upper slot of disk k, lower slot of disk k+1.
  auto parts = [&](long k) {
    const Morphism* up = disk_at(k);
    const Morphism* low = disk_at(k + 1);
    return std::vector<Module>{y.term(k), up ? up->target : zero, low ? low->target : zero};
  };
  auto dims = [](const std::vector<Module>& ms) {
    std::vector<std::size_t> d;
    for (const auto& m : ms) d.push_back(m.dim);
    return d;
  };
  Complex z{x.algebra, lo, {}, {}, "factor_disk"};
  for (long k = lo; k <= hi; ++k) z.terms.push_back(sum_of(parts(k)));
  for (long k = lo; k < hi; ++k) {
    const auto src = parts(k), dst = parts(k + 1);
    Blocks d(p, dims(dst), dims(src));
    d.put(0, 0, y.diff(k));
    d.put(1, 2, Matrix::identity(p, src[2].dim));
    z.diffs.push_back(d.m);
  }
  ComplexMorphism c = make_map(x, z, [&](long k) {
    const auto dst = parts(k);
    Blocks m(p, dims(dst), {x.dim(k)});
    m.put(0, 0, phi.at(k));
    if (const Morphism* up = disk_at(k)) m.put(1, 0, up->f);
    if (const Morphism* low = disk_at(k + 1)) m.put(2, 0, low->f * x.diff(k));
    return m.m;
  }, "factor_disk cofibration");
  ComplexMorphism b = make_map(z, y, [&](long k) {
    const auto src = parts(k);
    Blocks m(p, {y.dim(k)}, dims(src));
    m.put(0, 0, Matrix::identity(p, y.dim(k)));
    return m.m;
  }, "factor_disk fibration");
  return {c, z, b, std::nullopt};
}

FibrantReplacement fibrant_replacement(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t, long depth) {
  if (x.terms.empty()) {
    const Complex z = zero_complex(x.algebra);
    return {zero_map(x, z), z, depth - 1};
  }
  if (depth <= x.hi() - x.lo) throw Error(ErrorCode::InvalidInput, "depth must exceed the window height");
  const long last = x.hi() + depth;
  if (is_fibrant(cat, x, t)) return {identity_map(x), x, last - 1};
  FibrantReplacement fr = fibrant_replacement_to(cat, x, t, last);
  // Trailing zero terms carry no information.
  while (fr.r.terms.size() > 1 && fr.r.terms.back().dim == 0) {
    fr.r.terms.pop_back();
    fr.r.diffs.pop_back();
  }
  fr.rho.target = fr.r;
  return fr;
}

FibrantReplacement fibrant_replacement_to(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t,
                                          long last) {
  const auto p = cat.p();
  if (x.terms.empty()) {
    const Complex z = zero_complex(x.algebra);
    return {zero_map(x, z), z, last - 1};
  }
  const long lo = x.lo;
  Complex r{x.algebra, lo, {}, {}, "fibrant_replacement"};
  std::vector<Matrix> rho;
  Module coker_prev = alg::zero_module(x.algebra);  // coker(d_R^{n-2})
  Matrix to_coker_prev(p, 0, 0);                    // R^{n-1} -> coker_prev
  Matrix rho_bar_prev(p, 0, x.dim(lo - 1));         // X^{n-1} -> coker_prev
  for (long n = lo; n <= last; ++n) {
    const Module xn = x.term(n);
    const Module s = alg::direct_sum(xn, coker_prev);
    // Pushout of X^n <- X^{n-1} -> coker_prev.
    const Matrix rel = la::vstack(x.diff(n - 1), -rho_bar_prev);
    const alg::QuotientModule q = alg::quotient_module(s, la::image(rel));
    const Morphism env = torsion_free_envelope(cat, q.module, t);
    const Matrix total = env.f * q.projection.f;
    const Matrix rho_n = total.block(0, 0, total.rows(), xn.dim);
    const Matrix from_coker = total.block(0, xn.dim, total.rows(), coker_prev.dim);
    if (n > lo) r.diffs.push_back(from_coker * to_coker_prev);
    r.terms.push_back(env.target);
    rho.push_back(rho_n);
    const Matrix incoming = n > lo ? r.diffs.back() : Matrix(p, env.target.dim, 0);
    const alg::QuotientModule c = alg::quotient_module(env.target, la::image(incoming));
    coker_prev = c.module;
    to_coker_prev = c.projection.f;
    rho_bar_prev = to_coker_prev * rho_n;
  }
  ComplexMorphism map = make_map(x, r, [&](long i) -> Matrix {
    if (i < lo || i > last) return zeros(p, r.dim(i), x.dim(i));
    return rho[static_cast<std::size_t>(i - lo)];
  }, "fibrant_replacement");
  return {map, r, last - 1};
}

PathObject path_object(const Complex& r) {
  const auto p = r.p();
  if (r.terms.empty()) {
    const Complex z = zero_complex(r.algebra);
    return {z, zero_map(r, z), zero_map(z, r), zero_map(z, r)};
  }
  const long lo = r.lo, hi = r.hi() + 1;
  auto parts = [&](long n) { return std::vector<Module>{r.term(n), r.term(n - 1), r.term(n)}; };
  auto dims = [&](long n) { return std::vector<std::size_t>{r.dim(n), r.dim(n - 1), r.dim(n)}; };
  Complex path{r.algebra, lo, {}, {}, "path_object"};
  for (long n = lo; n <= hi; ++n) path.terms.push_back(sum_of(parts(n)));
  for (long n = lo; n < hi; ++n) {
    Blocks d(p, dims(n + 1), dims(n));
    d.put(0, 0, r.diff(n));
    d.put(1, 0, Matrix::identity(p, r.dim(n)));
    d.put(1, 1, -r.diff(n - 1));
    d.put(1, 2, -Matrix::identity(p, r.dim(n)));
    d.put(2, 2, r.diff(n));
    path.diffs.push_back(d.m);
  }
  ComplexMorphism diag = make_map(r, path, [&](long n) {
    Blocks m(p, dims(n), {r.dim(n)});
    m.put(0, 0, Matrix::identity(p, r.dim(n)));
    m.put(2, 0, Matrix::identity(p, r.dim(n)));
    return m.m;
  }, "path diagonal");
  auto ev = [&](std::size_t slot) {
    return make_map(path, r, [&, slot](long n) {
      Blocks m(p, {r.dim(n)}, dims(n));
      m.put(0, slot, Matrix::identity(p, r.dim(n)));
      return m.m;
    }, slot == 0 ? "ev0" : "ev1");
  };
  return {path, diag, ev(0), ev(2)};
}

Factorization factor_cocyl(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long depth) {
  const Complex& x = phi.source;
  const Complex& y = phi.target;
  if (depth < 1) throw Error(ErrorCode::InvalidInput, "depth must be positive");
  const auto p = cat.p();
  const auto [wlo, whi] = window_of({&x, &y});
  const long last = whi + depth;
  const FibrantReplacement rx = fibrant_replacement_to(cat, x, t, last);
  const FibrantReplacement ry = fibrant_replacement_to(cat, y, t, last);
  // psi : RX -> RY with psi rho_X = rho_Y phi.
  const Complex zero = zero_complex(x.algebra);
  const auto psi = solve_diagonal(cat, rx.rho, zero_map(ry.r, zero), compose(ry.rho, phi), zero_map(rx.r, zero));
  if (!psi) throw Error(ErrorCode::NoLift, "no comparison map between the fibrant replacements");
  const long lo = wlo, hi = last + 1;
  auto parts = [&](long n) { return std::vector<Module>{rx.r.term(n), ry.r.term(n - 1), y.term(n)}; };
  auto dims = [&](long n) { return std::vector<std::size_t>{rx.r.dim(n), ry.r.dim(n - 1), y.dim(n)}; };
  Complex z{x.algebra, lo, {}, {}, "factor_cocyl"};
  for (long n = lo; n <= hi; ++n) z.terms.push_back(sum_of(parts(n)));
  for (long n = lo; n < hi; ++n) {
    Blocks d(p, dims(n + 1), dims(n));
    d.put(0, 0, rx.r.diff(n));
    d.put(1, 0, psi->at(n));
    d.put(1, 1, -ry.r.diff(n - 1));
    d.put(1, 2, -ry.rho.at(n));
    d.put(2, 2, y.diff(n));
    z.diffs.push_back(d.m);
  }
  ComplexMorphism c = make_map(x, z, [&](long n) {
    Blocks m(p, dims(n), {x.dim(n)});
    m.put(0, 0, rx.rho.at(n));
    m.put(2, 0, phi.at(n));
    return m.m;
  }, "factor_cocyl acyclic cofibration");
  ComplexMorphism b = make_map(z, y, [&](long n) {
    Blocks m(p, {y.dim(n)}, dims(n));
    m.put(0, 2, Matrix::identity(p, y.dim(n)));
    return m.m;
  }, "factor_cocyl fibration");
  return {c, z, b, last - 1};
}

std::optional<Matrix> printed_convention_obstruction(const ModuleCategory& cat, const ComplexMorphism& phi,
                                                     const TorsionTheory& t, long bottom) {
  const Complex& x = phi.source;
  if (x.dim(bottom) == 0) return std::nullopt;
  const Matrix k = la::subspace_intersection(la::kernel(x.diff(bottom)), la::kernel(phi.at(bottom)));
  if (k.cols() == 0) return std::nullopt;
  const alg::Submodule s = alg::submodule(x.term(bottom), k);
  if (tors::is_torsion(cat, s.module, t)) return std::nullopt;
  return s.inclusion.f;
}

std::vector<Complex> complex_battery(const ModuleCategory& cat, long lo, long hi) {
  std::vector<Module> base;
  auto add_new = [&](const Module& m) {
    for (const auto& b : base) {
      if (cat.isomorphic(b, m)) return;
    }
    base.push_back(m);
  };
  for (std::size_t i = 0; i < cat.num_simples(); ++i) add_new(cat.simple(i));
  for (std::size_t i = 0; i < cat.num_simples(); ++i) add_new(cat.projective(i));
  for (std::size_t i = 0; i < cat.num_simples(); ++i) add_new(cat.injective(i));
  std::vector<Complex> out{zero_complex(cat.algebra())};
  for (long d = lo; d <= hi; ++d) {
    for (const auto& m : base) out.push_back(stalk(m, d));
  }
  for (const auto& m : base) {
    for (const auto& n : base) {
      for (const auto& h : cat.hom_basis(m, n)) {
        for (long d = lo; d < hi; ++d) out.push_back(two_term(Morphism{m, n, h}, d));
      }
    }
  }
  return out;
}

json complex_summary(const ModuleCategory& cat, const Complex& x) {
  json terms = json::array();
  for (long i = x.lo; i <= x.hi(); ++i) {
    terms.push_back(json{{"degree", i}, {"dim", x.dim(i)}, {"composition_factors", cat.composition_factors(x.term(i))}});
  }
  return json{{"provenance", x.provenance}, {"terms", std::move(terms)}};
}

}  // namespace relhom::chx
