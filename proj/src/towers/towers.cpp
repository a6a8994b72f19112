#include "relhom/towers/towers.hpp"

#include <algorithm>

#include "relhom/error.hpp"

namespace relhom::tow {

namespace la = relhom::la;
using alg::Module;

namespace {

Matrix zeros(std::uint32_t p, std::size_t r, std::size_t c) { return Matrix(p, r, c); }

std::pair<long, long> union_window(const std::vector<const Complex*>& xs) {
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

// Degreewise sum of several complexes over the union of their windows.
Complex sum_complex(const alg::AlgebraPtr& a, const std::vector<const Complex*>& xs) {
  const auto [lo, hi] = union_window(xs);
  Complex s{a, lo, {}, {}, "sum"};
  if (lo > hi) return s;
  for (long i = lo; i <= hi; ++i) {
    std::vector<Module> parts;
    for (const Complex* x : xs) parts.push_back(x->term(i));
    s.terms.push_back(alg::direct_sum(parts));
  }
  for (long i = lo; i < hi; ++i) {
    std::vector<Matrix> ds;
    for (const Complex* x : xs) ds.push_back(x->diff(i));
    s.diffs.push_back(la::block_diag(ds));
  }
  return s;
}

struct KernelComplex {
  Complex k;
  ComplexMorphism inclusion;
};

// ker g as a subcomplex of its source.
KernelComplex kernel_complex(const ComplexMorphism& g) {
  const Complex& x = g.source;
  const auto p = x.p();
  Complex k{x.algebra, x.lo, {}, {}, "kernel"};
  std::vector<Matrix> emb;
  for (long i = x.lo; i <= x.hi(); ++i) {
    const Module& m = x.term(i);
    if (m.dim == 0) {
      k.terms.push_back(m);
      emb.push_back(zeros(p, 0, 0));
      continue;
    }
    const alg::Submodule s = alg::submodule(m, la::kernel(g.at(i)));
    k.terms.push_back(s.module);
    emb.push_back(s.inclusion.f);
  }
  for (long i = x.lo; i < x.hi(); ++i) {
    const Matrix& e0 = emb[static_cast<std::size_t>(i - x.lo)];
    const Matrix& e1 = emb[static_cast<std::size_t>(i + 1 - x.lo)];
    k.diffs.push_back(la::left_inverse(e1) * x.diff(i) * e0);
  }
  ComplexMorphism inc = chx::make_map(k, x, [&](long i) {
    return k.in_window(i) ? emb[static_cast<std::size_t>(i - x.lo)] : zeros(p, x.dim(i), 0);
  }, "kernel inclusion");
  return {k, inc};
}

// x with e x = b, degree by degree; nullopt when some degree has no solution.
std::optional<ComplexMorphism> lift_through_mono(const ComplexMorphism& e, const ComplexMorphism& b) {
  const Complex& y = b.source;
  bool ok = true;
  ComplexMorphism f = chx::make_map(y, e.source, [&](long i) {
    const Matrix ei = e.at(i), bi = b.at(i);
    if (ei.cols() == 0 || y.dim(i) == 0) {
      if (!bi.is_zero()) ok = false;
      return zeros(y.p(), e.source.dim(i), y.dim(i));
    }
    auto s = la::solve(ei, bi);
    if (!s) {
      ok = false;
      return zeros(y.p(), e.source.dim(i), y.dim(i));
    }
    return *s;
  }, "induced");
  if (!ok) return std::nullopt;
  return f;
}

bool levelwise_equal(const std::vector<ComplexMorphism>& a, const std::vector<ComplexMorphism>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!chx::equal_maps(a[k], b[k])) return false;
  }
  return true;
}

}  // namespace

std::string tower_problem(const Tower& t) {
  if (t.levels.empty()) return "tower has no levels";
  if (t.alphas.size() + 1 != t.levels.size()) return "need one structure map between consecutive levels";
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    const Complex& a = t.levels[k];
    if (auto p = chx::complex_problem(a); !p.empty()) return "level " + std::to_string(k) + ": " + p;
    const auto s = a.support();
    if (s && s->first < -static_cast<long>(k)) return "level " + std::to_string(k) + " has entries below its window";
  }
  for (std::size_t k = 0; k < t.alphas.size(); ++k) {
    const ComplexMorphism& al = t.alphas[k];
    if (auto p = chx::map_problem(al); !p.empty()) return "structure map " + std::to_string(k + 1) + ": " + p;
    const auto [lo, hi] = union_window({&t.levels[k], &t.levels[k + 1]});
    for (long i = lo; i <= hi; ++i) {
      const Matrix m = al.at(i);
      if (m.rows() != t.levels[k].dim(i) || m.cols() != t.levels[k + 1].dim(i)) {
        return "structure map " + std::to_string(k + 1) + " does not join its levels";
      }
    }
  }
  return {};
}

std::string tower_map_problem(const TowerMorphism& f) {
  if (auto p = tower_problem(f.source); !p.empty()) return "source: " + p;
  if (auto p = tower_problem(f.target); !p.empty()) return "target: " + p;
  if (f.maps.size() != f.source.levels.size() || f.maps.size() != f.target.levels.size()) {
    return "levels of source, target and map differ";
  }
  for (std::size_t k = 0; k < f.maps.size(); ++k) {
    if (auto p = chx::map_problem(f.maps[k]); !p.empty()) return "level " + std::to_string(k) + ": " + p;
  }
  for (std::size_t k = 0; k + 1 < f.maps.size(); ++k) {
    const auto lhs = chx::compose(f.maps[k], f.source.alphas[k]);
    const auto rhs = chx::compose(f.target.alphas[k], f.maps[k + 1]);
    if (!chx::equal_maps(lhs, rhs)) return "ladder square " + std::to_string(k + 1) + " does not commute";
  }
  return {};
}

ComplexMorphism factor_through_truncation(const chx::Truncation& tx, const ComplexMorphism& g) {
  const Complex& y = g.target;
  const Complex& xt = tx.complex;
  ComplexMorphism out = chx::make_map(xt, y, [&](long i) {
    if (xt.dim(i) == 0 || y.dim(i) == 0) {
      if (!g.at(i).is_zero()) throw Error(ErrorCode::InvalidInput, "map does not factor through the truncation");
      return zeros(y.p(), y.dim(i), xt.dim(i));
    }
    // gbar q = g, solved as q^T gbar^T = g^T.
    auto s = la::solve(tx.quotient.at(i).transpose(), g.at(i).transpose());
    if (!s) throw Error(ErrorCode::InvalidInput, "map does not factor through the truncation");
    return s->transpose();
  }, "through truncation");
  return out;
}

ComplexMorphism truncate_map(const ComplexMorphism& f, long n) {
  const chx::Truncation tx = chx::truncate(f.source, n);
  const chx::Truncation ty = chx::truncate(f.target, n);
  return factor_through_truncation(tx, chx::compose(ty.quotient, f));
}

Tower tower_of(const Complex& x, std::size_t depth) {
  Tower t{x.algebra, {}, {}};
  std::vector<chx::Truncation> tr;
  for (std::size_t k = 0; k <= depth; ++k) {
    tr.push_back(chx::truncate(x, -static_cast<long>(k)));
    t.levels.push_back(tr.back().complex);
  }
  for (std::size_t k = 0; k < depth; ++k) t.alphas.push_back(factor_through_truncation(tr[k + 1], tr[k].quotient));
  return t;
}

TowerMorphism tower_map_of(const ComplexMorphism& f, std::size_t depth) {
  TowerMorphism m{tower_of(f.source, depth), tower_of(f.target, depth), {}};
  for (std::size_t k = 0; k <= depth; ++k) m.maps.push_back(truncate_map(f, -static_cast<long>(k)));
  return m;
}

std::optional<std::size_t> stabilization_level(const Tower& t) {
  std::size_t from = t.alphas.size();
  while (from > 0) {
    const ComplexMorphism& a = t.alphas[from - 1];
    const auto [lo, hi] = union_window({&a.source, &a.target});
    bool id = true;
    for (long i = lo; i <= hi && id; ++i) {
      const Matrix m = a.at(i);
      id = m.rows() == m.cols() && (m.rows() == 0 || m.is_identity());
    }
    if (!id) break;
    --from;
  }
  if (from == t.alphas.size() && !t.alphas.empty()) return std::nullopt;
  return from;
}

TowerMorphism identity_tower_map(const Tower& t) {
  TowerMorphism m{t, t, {}};
  for (const auto& a : t.levels) m.maps.push_back(chx::identity_map(a));
  return m;
}

TowerMorphism compose(const TowerMorphism& g, const TowerMorphism& f) {
  TowerMorphism m{f.source, g.target, {}};
  for (std::size_t k = 0; k < f.maps.size(); ++k) m.maps.push_back(chx::compose(g.maps.at(k), f.maps[k]));
  return m;
}

bool equal_tower_maps(const TowerMorphism& f, const TowerMorphism& g) { return levelwise_equal(f.maps, g.maps); }

Limit tower_limit(const Tower& t) {
  std::vector<const Complex*> levels;
  for (const auto& a : t.levels) levels.push_back(&a);
  const Complex total = sum_complex(t.algebra, levels);
  const std::size_t n = t.levels.size();
  const auto p = t.algebra->p();
  // (x_k) -> (x_k - alpha_{k+1} x_{k+1}) for k < N.
  std::vector<const Complex*> lower(levels.begin(), levels.end() - (n > 0 ? 1 : 0));
  const Complex target = sum_complex(t.algebra, lower);
  const ComplexMorphism constraint = chx::make_map(total, target, [&](long i) {
    std::vector<std::size_t> row_off{0}, col_off{0};
    for (std::size_t k = 0; k < n; ++k) col_off.push_back(col_off.back() + t.levels[k].dim(i));
    for (std::size_t k = 0; k + 1 < n; ++k) row_off.push_back(row_off.back() + t.levels[k].dim(i));
    Matrix m(p, row_off.back(), col_off.back());
    for (std::size_t k = 0; k + 1 < n; ++k) {
      m.set_block(row_off[k], col_off[k], Matrix::identity(p, t.levels[k].dim(i)));
      m.set_block(row_off[k], col_off[k + 1], -t.alphas[k].at(i));
    }
    return m;
  }, "limit constraint");
  const KernelComplex kc = kernel_complex(constraint);
  Limit lim{kc.k, {}, {}, kc.k.lo};
  for (long i = kc.k.lo; i <= kc.k.hi(); ++i) lim.embeddings.push_back(kc.inclusion.at(i));
  for (std::size_t k = 0; k < n; ++k) {
    lim.projections.push_back(chx::make_map(lim.complex, t.levels[k], [&](long i) {
      std::size_t off = 0;
      for (std::size_t j = 0; j < k; ++j) off += t.levels[j].dim(i);
      const Matrix e = kc.inclusion.at(i);
      return e.block(off, 0, t.levels[k].dim(i), e.cols());
    }, "limit projection"));
  }
  return lim;
}

Complex tower_lim(const Tower& t) { return tower_limit(t).complex; }

ComplexMorphism map_into_limit(const Limit& lim, const std::vector<ComplexMorphism>& g) {
  if (g.size() != lim.projections.size()) throw Error(ErrorCode::ShapeMismatch, "one map per level is required");
  if (g.empty()) throw Error(ErrorCode::InvalidInput, "empty tower");
  const Complex& y = g.front().source;
  const auto p = y.p();
  bool ok = true;
  ComplexMorphism out = chx::make_map(y, lim.complex, [&](long i) {
    if (!lim.complex.in_window(i)) {
      for (const auto& gk : g) ok = ok && gk.at(i).is_zero();
      return zeros(p, lim.complex.dim(i), y.dim(i));
    }
    std::vector<Matrix> parts;
    for (const auto& gk : g) parts.push_back(gk.at(i));
    const Matrix rhs = la::vstack(parts);
    const Matrix& e = lim.embeddings[static_cast<std::size_t>(i - lim.lo)];
    if (y.dim(i) == 0) return zeros(p, lim.complex.dim(i), 0);
    if (e.cols() == 0) {
      ok = ok && rhs.is_zero();
      return zeros(p, 0, y.dim(i));
    }
    auto s = la::solve(e, rhs);
    if (!s) {
      ok = false;
      return zeros(p, lim.complex.dim(i), y.dim(i));
    }
    return *s;
  }, "into limit");
  if (!ok) throw Error(ErrorCode::InvalidInput, "maps are not compatible with the structure maps");
  return out;
}

ComplexMorphism lim_map(const Limit& source, const Limit& target, const TowerMorphism& f) {
  std::vector<ComplexMorphism> g;
  for (std::size_t k = 0; k < f.maps.size(); ++k) g.push_back(chx::compose(f.maps[k], source.projections.at(k)));
  if (g.empty()) throw Error(ErrorCode::InvalidInput, "empty tower");
  return map_into_limit(target, g);
}

ComplexMorphism tower_unit(const Complex& x, std::size_t depth) {
  const Limit lim = tower_limit(tower_of(x, depth));
  std::vector<ComplexMorphism> g;
  for (std::size_t k = 0; k <= depth; ++k) g.push_back(chx::truncate(x, -static_cast<long>(k)).quotient);
  return map_into_limit(lim, g);
}

TowerMorphism tower_counit(const Tower& t) {
  const Limit lim = tower_limit(t);
  TowerMorphism e{tower_of(lim.complex, t.depth()), t, {}};
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    e.maps.push_back(factor_through_truncation(chx::truncate(lim.complex, -static_cast<long>(k)), lim.projections[k]));
  }
  return e;
}

std::vector<PullbackLevel> pullback_levels(const TowerMorphism& f) {
  std::vector<PullbackLevel> out;
  const Tower& a = f.source;
  const Tower& b = f.target;
  for (std::size_t k = 0; k < f.maps.size(); ++k) {
    if (k == 0) {
      const Complex z = chx::zero_complex(a.algebra);
      out.push_back({b.levels[0], chx::zero_map(b.levels[0], z), chx::identity_map(b.levels[0]), f.maps[0]});
      continue;
    }
    const Complex& prev = a.levels[k - 1];
    const Complex& bk = b.levels[k];
    const Complex sum = sum_complex(a.algebra, {&prev, &bk});
    const ComplexMorphism diff = chx::make_map(sum, b.levels[k - 1], [&](long i) {
      return la::hstack(f.maps[k - 1].at(i), -b.alphas[k - 1].at(i));
    }, "pullback difference");
    const KernelComplex kc = kernel_complex(diff);
    auto block = [&](bool first) {
      const Complex& part = first ? prev : bk;
      return chx::make_map(kc.k, part, [&, first](long i) {
        const Matrix e = kc.inclusion.at(i);
        const std::size_t off = first ? 0 : prev.dim(i);
        return e.block(off, 0, part.dim(i), e.cols());
      }, first ? "pullback to source" : "pullback to target");
    };
    const ComplexMorphism stacked = chx::make_map(a.levels[k], sum, [&](long i) {
      return la::vstack(a.alphas[k - 1].at(i), f.maps[k].at(i));
    });
    auto fs = lift_through_mono(kc.inclusion, stacked);
    if (!fs) throw Error(ErrorCode::InvalidInput, "ladder does not commute; no induced map to the pullback");
    out.push_back({kc.k, block(true), block(false), *fs});
  }
  return out;
}

TowerFlags tower_classes(const ModuleCategory& cat, const TowerMorphism& f, const TorsionTheory& t,
                         std::optional<long> top) {
  TowerFlags fl{true, true, true};
  const auto pb = pullback_levels(f);
  for (std::size_t k = 0; k < f.maps.size(); ++k) {
    const long bottom = -static_cast<long>(k);
    fl.in_W = fl.in_W && chx::is_tau_weq(cat, f.maps[k], t, top);
    fl.in_C = fl.in_C && chx::in_C(cat, f.maps[k], t, bottom);
    fl.in_B = fl.in_B && chx::in_B(cat, pb[k].f_star, t, bottom);
  }
  return fl;
}

bool is_fibrant_tower(const ModuleCategory& cat, const Tower& t, const TorsionTheory& tt) {
  Tower zero{t.algebra, {}, {}};
  const Complex z = chx::zero_complex(t.algebra);
  for (std::size_t k = 0; k < t.levels.size(); ++k) zero.levels.push_back(z);
  for (std::size_t k = 0; k + 1 < t.levels.size(); ++k) zero.alphas.push_back(chx::zero_map(z, z));
  TowerMorphism f{t, zero, {}};
  for (const auto& a : t.levels) f.maps.push_back(chx::zero_map(a, z));
  const auto pb = pullback_levels(f);
  for (std::size_t k = 0; k < pb.size(); ++k) {
    if (!chx::in_B(cat, pb[k].f_star, tt, -static_cast<long>(k))) return false;
  }
  return true;
}

LocalComplex localize_complex(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t) {
  Complex l{x.algebra, x.lo, {}, {}, "localized"};
  std::vector<Matrix> units;
  for (long i = x.lo; i <= x.hi(); ++i) {
    const tors::Localization loc = tors::localize(cat, x.term(i), t);
    l.terms.push_back(loc.local);
    units.push_back(loc.unit.f);
  }
  for (long i = x.lo; i < x.hi(); ++i) {
    l.diffs.push_back(tors::localize_morphism(cat, {x.term(i), x.term(i + 1), x.diff(i)}, t).f);
  }
  ComplexMorphism unit = chx::make_map(x, l, [&](long i) {
    return x.in_window(i) ? units[static_cast<std::size_t>(i - x.lo)] : zeros(x.p(), 0, 0);
  }, "localization unit");
  return {l, unit};
}

ComplexMorphism localize_map(const ModuleCategory& cat, const ComplexMorphism& f, const TorsionTheory& t) {
  const Complex ls = localize_complex(cat, f.source, t).local;
  const Complex lt = localize_complex(cat, f.target, t).local;
  return chx::make_map(ls, lt, [&](long i) {
    return tors::localize_morphism(cat, {f.source.term(i), f.target.term(i), f.at(i)}, t).f;
  }, "localized map");
}

ComplexMorphism localization_counit(const ModuleCategory& cat, const Complex& z, const TorsionTheory& t) {
  const LocalComplex lz = localize_complex(cat, z, t);
  return chx::make_map(lz.local, z, [&](long i) {
    const Matrix u = lz.unit.at(i);
    if (u.rows() == 0 && u.cols() == 0) return u;
    auto inv = la::inverse(u);
    if (!inv) throw Error(ErrorCode::InvalidInput, "complex is not local in degree " + std::to_string(i));
    return *inv;
  }, "localization counit");
}

FibrantTower fibrant_tower(const ModuleCategory& cat, const Tower& t, const TorsionTheory& tt, long depth) {
  FibrantTower ft{{t.algebra, {}, {}}, {t, {}, {}}, 0};
  const Complex& a0 = t.levels.at(0);
  const long span = a0.terms.empty() ? 0 : a0.hi() - a0.lo;
  const chx::FibrantReplacement fr = chx::fibrant_replacement(cat, a0, tt, std::max(depth, span + 1));
  ft.tower.levels.push_back(fr.r);
  ft.weq.maps.push_back(fr.rho);
  ft.certified_top = fr.certified_top;
  for (std::size_t k = 0; k + 1 < t.levels.size(); ++k) {
    const ComplexMorphism phi = chx::compose(ft.weq.maps[k], t.alphas[k]);
    const Complex& x = phi.source;
    const long s = x.terms.empty() ? 0 : x.hi() - x.lo;
    const chx::Factorization fac = chx::factor_cocyl(cat, phi, tt, std::max(depth, s + 1));
    ft.tower.levels.push_back(fac.z);
    ft.tower.alphas.push_back(fac.b);
    ft.weq.maps.push_back(fac.c);
    if (fac.certified_top) ft.certified_top = std::min(ft.certified_top, *fac.certified_top);
  }
  ft.weq.target = ft.tower;
  return ft;
}

TowerMorphism compare_fibrant_towers(const ModuleCategory& cat, const FibrantTower& from, const FibrantTower& to,
                                     const TowerMorphism& f) {
  TowerMorphism psi{from.tower, to.tower, {}};
  const Complex z = chx::zero_complex(from.tower.algebra);
  for (std::size_t k = 0; k < from.tower.levels.size(); ++k) {
    const ComplexMorphism& c = from.weq.maps[k];
    const ComplexMorphism top = chx::compose(to.weq.maps[k], f.maps[k]);
    std::optional<ComplexMorphism> d;
    if (k == 0) {
      const Complex& g0 = to.tower.levels[0];
      d = chx::solve_diagonal(cat, c, chx::zero_map(g0, z), top, chx::zero_map(from.tower.levels[0], z));
    } else {
      const ComplexMorphism bottom = chx::compose(psi.maps[k - 1], from.tower.alphas[k - 1]);
      d = chx::solve_diagonal(cat, c, to.tower.alphas[k - 1], top, bottom);
    }
    if (!d) throw Error(ErrorCode::NoLift, "no comparison map at level " + std::to_string(k));
    psi.maps.push_back(*d);
  }
  return psi;
}

}  // namespace relhom::tow
