#include <random>

#include "relhom/error.hpp"
#include "relhom/towers/towers.hpp"

namespace relhom::tow {

using report::CheckRecord;
using report::json;

namespace {

template <class Body>
CheckRecord guarded(const std::string& id, const std::string& reference, Body&& body) {
  report::Stopwatch sw;
  CheckRecord rec;
  try {
    rec = body();
  } catch (const Error& e) {
    rec = report::fail(id, reference, json{{"error", e.what()}});
  }
  rec.wall_seconds = sw.seconds();
  return rec;
}

std::string suffix(const TorsionTheory& t) { return "[" + tors::set_string(t.sigma, t.num_simples) + "]"; }

json summary(const ModuleCategory& cat, const Complex& x) { return chx::complex_summary(cat, x); }

json map_summary(const ModuleCategory& cat, const ComplexMorphism& f) {
  return json{{"source", summary(cat, f.source)}, {"target", summary(cat, f.target)}};
}

bool is_isomorphism(const ComplexMorphism& f) {
  const long lo = std::min(f.source.lo, f.target.lo);
  const long hi = std::max(f.source.hi(), f.target.hi());
  for (long i = lo; i <= hi; ++i) {
    const Matrix m = f.at(i);
    if (m.rows() != m.cols()) return false;
    if (m.rows() != 0 && la::rank(m) != m.rows()) return false;
  }
  return true;
}

// Quasi-isomorphism in the quotient category: every cohomology of the cone
// localizes to zero.
bool in_quotient_weq(const ModuleCategory& cat, const ComplexMorphism& psi, const TorsionTheory& t,
                     std::optional<long> top) {
  const Complex c = chx::cone(psi);
  for (long n = c.lo; n <= c.hi(); ++n) {
    if (top && n > *top) break;
    if (tors::localize(cat, chx::cohomology(c, n), t).local.dim != 0) return false;
  }
  return true;
}

struct MorphismSampler {
  const ModuleCategory& cat;
  std::mt19937_64 rng;

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

  ComplexMorphism random_map(const Complex& x, const Complex& y) {
    ComplexMorphism f = chx::zero_map(x, y);
    for (const auto& g : chx::chain_maps(cat, x, y)) f = chx::add(f, chx::scale(g, static_cast<la::Residue>(below(cat.p()))));
    return f;
  }

  // Identities, every basis chain map between consecutive battery entries and
  // `extra` random maps.
  std::vector<ComplexMorphism> sample(const std::vector<Complex>& battery, std::size_t extra) {
    std::vector<ComplexMorphism> out;
    for (const auto& x : battery) out.push_back(chx::identity_map(x));
    for (std::size_t i = 0; i + 1 < battery.size(); ++i) {
      for (const auto& g : chx::chain_maps(cat, battery[i], battery[i + 1])) out.push_back(g);
    }
    for (std::size_t s = 0; s < extra && !battery.empty(); ++s) {
      out.push_back(random_map(battery[below(battery.size())], battery[below(battery.size())]));
    }
    return out;
  }
};


}  // namespace

std::vector<CheckRecord> tower_report(const ModuleCategory& cat, const TorsionTheory& t,
                                      const std::vector<Complex>& battery, std::size_t depth, std::uint64_t seed) {
  static const char* kLim = "a bounded complex is the limit of its tower of truncations";
  static const char* kAdj = "truncation is left adjoint to the inclusion of half-bounded complexes";
  static const char* kFunctor = "the tower functor respects composition and identities";
  static const char* kPullback = "fibrations of towers are tested on the maps into levelwise pullbacks";
  static const char* kFibrant = "levelwise cocylinder towers are fibrant and receive a levelwise weak equivalence";
  std::vector<CheckRecord> out;
  const std::string sfx = suffix(t);
  MorphismSampler sampler{cat, std::mt19937_64(seed)};
  const auto sample = sampler.sample(battery, 16);

  out.push_back(guarded("towers.limit_of_truncations", kLim, [&] {
    std::size_t checked = 0;
    for (const auto& x : battery) {
      const auto s = x.support();
      const std::size_t need = s ? static_cast<std::size_t>(std::max(0L, -s->first)) : 0;
      const Tower tw = tower_of(x, std::max(depth, need));
      if (auto p = tower_problem(tw); !p.empty()) {
        return report::fail("towers.limit_of_truncations", kLim, json{{"complex", summary(cat, x)}, {"problem", p}});
      }
      const ComplexMorphism eta = tower_unit(x, std::max(depth, need));
      if (!is_isomorphism(eta)) {
        return report::fail("towers.limit_of_truncations", kLim, json{{"complex", summary(cat, x)}});
      }
      const auto st = stabilization_level(tw);
      if (!st || *st > need) {
        return report::fail("towers.limit_of_truncations", kLim,
                            json{{"complex", summary(cat, x)}, {"detail", "tower does not stabilize"}});
      }
      ++checked;
    }
    return report::pass("towers.limit_of_truncations", kLim, json{{"complexes", checked}});
  }));

  out.push_back(guarded("towers.truncation_adjunction", kAdj, [&] {
    std::size_t pairs = 0;
    for (std::size_t k = 0; k <= depth; ++k) {
      const long n = -static_cast<long>(k);
      for (const auto& x : battery) {
        const chx::Truncation tx = chx::truncate(x, n);
        for (const auto& y : battery) {
          const auto s = y.support();
          if (s && s->first < n) continue;
          const std::size_t lhs = chx::chain_maps(cat, tx.complex, y).size();
          const std::size_t rhs = chx::chain_maps(cat, x, y).size();
          if (lhs != rhs) {
            return report::fail("towers.truncation_adjunction", kAdj,
                                json{{"degree", n}, {"source", summary(cat, x)}, {"target", summary(cat, y)},
                                     {"truncated_maps", lhs}, {"maps", rhs}});
          }
          ++pairs;
        }
      }
    }
    return report::pass("towers.truncation_adjunction", kAdj, json{{"pairs", pairs}});
  }));

  out.push_back(guarded("towers.functoriality", kFunctor, [&] {
    std::size_t checked = 0;
    for (std::size_t s = 0; s < 12 && !sample.empty(); ++s) {
      const ComplexMorphism& f = sample[sampler.below(sample.size())];
      const ComplexMorphism g = sampler.random_map(f.target, f.target);
      const TowerMorphism tf = tower_map_of(f, depth), tg = tower_map_of(g, depth);
      const TowerMorphism tgf = tower_map_of(chx::compose(g, f), depth);
      if (auto p = tower_map_problem(tf); !p.empty()) {
        return report::fail("towers.functoriality", kFunctor, json{{"morphism", map_summary(cat, f)}, {"problem", p}});
      }
      if (!equal_tower_maps(compose(tg, tf), tgf) ||
          !equal_tower_maps(tower_map_of(chx::identity_map(f.source), depth), identity_tower_map(tf.source))) {
        return report::fail("towers.functoriality", kFunctor, json{{"morphism", map_summary(cat, f)}});
      }
      ++checked;
    }
    return report::pass("towers.functoriality", kFunctor, json{{"pairs", checked}});
  }));

  out.push_back(guarded("towers.pullback_universal_property" + sfx, kPullback, [&] {
    std::size_t levels = 0;
    for (const auto& f : sample) {
      const TowerMorphism tf = tower_map_of(f, depth);
      const auto pb = pullback_levels(tf);
      for (std::size_t k = 0; k < pb.size(); ++k) {
        const auto& lv = pb[k];
        const bool projections_ok =
            chx::equal_maps(chx::compose(lv.to_target, lv.f_star), tf.maps[k]) &&
            (k == 0 || chx::equal_maps(chx::compose(lv.to_source, lv.f_star), tf.source.alphas[k - 1]));
        // Uniqueness: chain maps into p_k are determined by both projections.
        const auto basis = chx::chain_maps(cat, tf.source.levels[k], lv.p);
        std::vector<Matrix> cols;
        for (const auto& h : basis) {
          std::vector<Matrix> parts;
          const ComplexMorphism a = chx::compose(lv.to_source, h), b = chx::compose(lv.to_target, h);
          const long lo = std::min({a.lo, b.lo});
          const long hi = std::max(a.lo + static_cast<long>(a.maps.size()), b.lo + static_cast<long>(b.maps.size()));
          for (long i = lo; i < hi; ++i) {
            parts.push_back(la::vec(a.at(i)));
            parts.push_back(la::vec(b.at(i)));
          }
          parts.push_back(Matrix(cat.p(), 1, 1));
          cols.push_back(la::vstack(parts));
        }
        const bool unique = cols.empty() || la::rank(la::hstack(cols)) == cols.size();
        if (!projections_ok || !unique) {
          return report::fail("towers.pullback_universal_property" + sfx, kPullback,
                              json{{"morphism", map_summary(cat, f)}, {"level", k}, {"projections", projections_ok},
                                   {"unique", unique}});
        }
        ++levels;
      }
      // f* of an identity is an identity, so the identity is a fibration of towers.
      const auto idf = pullback_levels(identity_tower_map(tf.source));
      for (std::size_t k = 0; k < idf.size(); ++k) {
        if (!chx::in_B(cat, idf[k].f_star, t, -static_cast<long>(k))) {
          return report::fail("towers.pullback_universal_property" + sfx, kPullback,
                              json{{"detail", "identity is not a fibration of towers"}, {"level", k}});
        }
      }
    }
    return report::pass("towers.pullback_universal_property" + sfx, kPullback, json{{"levels", levels}});
  }));

  out.push_back(guarded("towers.fibrant_towers" + sfx, kFibrant, [&] {
    std::size_t checked = 0;
    long top = 0;
    bool first = true;
    for (const auto& x : battery) {
      const FibrantTower ft = fibrant_tower(cat, tower_of(x, depth), t, 3);
      const TowerFlags fl = tower_classes(cat, ft.weq, t, ft.certified_top);
      const bool fibrant = is_fibrant_tower(cat, ft.tower, t);
      if (!fibrant || !fl.in_W || !fl.in_C || !tower_map_problem(ft.weq).empty()) {
        return report::fail("towers.fibrant_towers" + sfx, kFibrant,
                            json{{"complex", summary(cat, x)}, {"fibrant", fibrant}, {"in_W", fl.in_W}, {"in_C", fl.in_C}});
      }
      top = first ? ft.certified_top : std::min(top, ft.certified_top);
      first = false;
      ++checked;
    }
    CheckRecord r = report::pass("towers.fibrant_towers" + sfx, kFibrant, json{{"complexes", checked}});
    if (!first) r.certified_range = std::make_pair(-static_cast<long>(depth), top);
    return r;
  }));
  return out;
}

std::vector<CheckRecord> verify_model_approximation(const ModuleCategory& cat, const TorsionTheory& t,
                                                    const std::vector<Complex>& battery,
                                                    const ApproximationOptions& opts) {
  static const char* kLevel = "each level of towers factors maps as a cofibration followed by an acyclic fibration";
  static const char* kMA1 = "localization then towers is left adjoint to limit then inclusion";
  static const char* kMA2 = "the left adjoint sends weak equivalences to levelwise weak equivalences";
  static const char* kMA3 = "the right adjoint sends weak equivalences of fibrant towers to weak equivalences";
  static const char* kMA4 = "maps adjoint to weak equivalences into fibrant towers are weak equivalences";
  static const char* kC1 = "localization sends weak equivalences to quasi-isomorphisms of the quotient";
  static const char* kC2 = "inclusion sends quasi-isomorphisms of the quotient to weak equivalences";
  static const char* kC3 = "maps adjoint to quotient quasi-isomorphisms are weak equivalences";

  const std::string sfx = suffix(t);
  const std::size_t n = opts.tower_depth;
  const long rdepth = opts.replacement_depth;
  std::vector<CheckRecord> out;
  MorphismSampler sampler{cat, std::mt19937_64(opts.seed)};

  // The level model structures must factor maps before anything else is meaningful.
  CheckRecord level = guarded("approximation.level_factorization" + sfx, kLevel, [&] {
    std::size_t checked = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      const long bottom = -static_cast<long>(k);
      for (const auto& x : battery) {
        const auto s = x.support();
        if (s && s->first < bottom) continue;
        const ComplexMorphism phi = chx::zero_map(x, chx::zero_complex(x.algebra));
        if (opts.convention == chx::CofibrationConvention::Printed) {
          if (auto ob = chx::printed_convention_obstruction(cat, phi, t, bottom)) {
            return report::fail("approximation.level_factorization" + sfx, kLevel,
                                json{{"level", k}, {"complex", summary(cat, x)}, {"obstruction", report::matrix_json(*ob)},
                                     {"reason", "cycles at the window bottom that the map kills are not torsion, so no "
                                                "cofibration into an acyclic complex exists"}});
          }
        }
        const chx::Factorization f = chx::factor_disk(cat, phi, t, bottom);
        const bool c_ok = chx::in_C(cat, f.c, t, bottom, opts.convention);
        const chx::ClassFlags bf = chx::class_membership(cat, f.b, t, bottom, opts.convention);
        if (!c_ok || !bf.in_B || !bf.in_W) {
          return report::fail("approximation.level_factorization" + sfx, kLevel,
                              json{{"level", k}, {"complex", summary(cat, x)}, {"in_C", c_ok}, {"in_B", bf.in_B}, {"in_W", bf.in_W}});
        }
        ++checked;
      }
    }
    return report::pass("approximation.level_factorization" + sfx, kLevel, json{{"complexes", checked}});
  });
  const bool aborted = level.verdict == report::Verdict::Fail;
  out.push_back(level);
  if (aborted) {
    const std::string why = "model structure on the levels fails; approximation checks aborted";
    for (auto [id, ref] : std::vector<std::pair<const char*, const char*>>{
             {"approximation.adjunction", kMA1}, {"approximation.left_adjoint_weak_equivalences", kMA2},
             {"approximation.right_adjoint_fibrant_weak_equivalences", kMA3}, {"approximation.adjoint_weak_equivalences", kMA4},
             {"approximation.compatibility_left", kC1}, {"approximation.compatibility_right", kC2},
             {"approximation.compatibility_adjoint", kC3}}) {
      out.push_back(report::skipped(std::string(id) + sfx, ref, why));
    }
    return out;
  }

  const auto morphisms = sampler.sample(battery, 24);
  std::vector<ComplexMorphism> weqs;
  for (const auto& f : morphisms) {
    if (chx::is_tau_weq(cat, f, t)) weqs.push_back(f);
  }
  auto L = [&](const ComplexMorphism& f) { return tower_map_of(localize_map(cat, f, t), n); };

  out.push_back(guarded("approximation.adjunction" + sfx, kMA1, [&] {
    std::size_t checked = 0;
    for (const auto& x : battery) {
      // Localization and inclusion.
      const LocalComplex lx = localize_complex(cat, x, t);
      const ComplexMorphism q_eta = localize_map(cat, lx.unit, t);
      const ComplexMorphism eps_q = localization_counit(cat, lx.local, t);
      const LocalComplex llx = localize_complex(cat, lx.local, t);
      const bool q1 = chx::equal_maps(chx::compose(eps_q, q_eta), chx::identity_map(lx.local));
      const bool q2 = chx::equal_maps(chx::compose(eps_q, llx.unit), chx::identity_map(lx.local));
      // Towers and limit, on the localized complex and on a fibrant tower.
      const Complex& z = lx.local;
      const TowerMorphism tow_eta = tower_map_of(tower_unit(z, n), n);
      const TowerMorphism eps_tow = tower_counit(tower_of(z, n));
      const bool t1 = equal_tower_maps(compose(eps_tow, tow_eta), identity_tower_map(tower_of(z, n)));
      bool t2 = true;
      for (const Tower& tw : {tower_of(z, n), fibrant_tower(cat, tower_of(z, n), t, rdepth).tower}) {
        const Limit lim = tower_limit(tw);
        const ComplexMorphism eta = tower_unit(lim.complex, n);
        const TowerMorphism eps = tower_counit(tw);
        const ComplexMorphism lim_eps = lim_map(tower_limit(eps.source), lim, eps);
        t2 = t2 && chx::equal_maps(chx::compose(lim_eps, eta), chx::identity_map(lim.complex));
      }
      if (!(q1 && q2 && t1 && t2)) {
        return report::fail("approximation.adjunction" + sfx, kMA1,
                            json{{"complex", summary(cat, x)}, {"localization_left", q1}, {"localization_right", q2},
                                 {"towers_left", t1}, {"towers_right", t2}});
      }
      ++checked;
    }
    return report::pass("approximation.adjunction" + sfx, kMA1, json{{"complexes", checked}});
  }));

  out.push_back(guarded("approximation.left_adjoint_weak_equivalences" + sfx, kMA2, [&] {
    for (const auto& f : weqs) {
      const TowerMorphism lf = L(f);
      if (auto p = tower_map_problem(lf); !p.empty() || !tower_classes(cat, lf, t).in_W) {
        return report::fail("approximation.left_adjoint_weak_equivalences" + sfx, kMA2,
                            json{{"morphism", map_summary(cat, f)}, {"problem", p}});
      }
    }
    return report::pass("approximation.left_adjoint_weak_equivalences" + sfx, kMA2,
                        json{{"morphisms", morphisms.size()}, {"weak_equivalences", weqs.size()}});
  }));

  // Fibrant towers generated from the battery, shared by the last two axioms.
  struct Generated {
    Complex y;
    FibrantTower ft;
  };
  std::vector<Generated> gen;
  long top = 0;
  bool have_top = false;
  auto fibrant_of = [&](const Complex& y) {
    const Complex q = localize_complex(cat, y, t).local;
    Generated g{y, fibrant_tower(cat, tower_of(q, n), t, rdepth)};
    top = have_top ? std::min(top, g.ft.certified_top) : g.ft.certified_top;
    have_top = true;
    return g;
  };
  const long bottom = -static_cast<long>(n);

  out.push_back(guarded("approximation.right_adjoint_fibrant_weak_equivalences" + sfx, kMA3, [&] {
    std::size_t checked = 0;
    for (const auto& f : weqs) {
      const Generated a = fibrant_of(f.source), b = fibrant_of(f.target);
      const TowerMorphism psi = compare_fibrant_towers(cat, a.ft, b.ft, L(f));
      const long cert = std::min(a.ft.certified_top, b.ft.certified_top);
      const bool fibrant = is_fibrant_tower(cat, a.ft.tower, t) && is_fibrant_tower(cat, b.ft.tower, t);
      const bool weq = tower_classes(cat, psi, t, cert).in_W;
      const ComplexMorphism rpsi = lim_map(tower_limit(a.ft.tower), tower_limit(b.ft.tower), psi);
      if (!fibrant || !weq || !chx::is_tau_weq(cat, rpsi, t, cert)) {
        return report::fail("approximation.right_adjoint_fibrant_weak_equivalences" + sfx, kMA3,
                            json{{"morphism", map_summary(cat, f)}, {"fibrant", fibrant}, {"tower_weak_equivalence", weq}});
      }
      ++checked;
    }
    CheckRecord r = report::pass("approximation.right_adjoint_fibrant_weak_equivalences" + sfx, kMA3,
                                 json{{"tower_maps", checked}, {"generator", "levelwise cocylinder towers of localized battery truncations"}});
    if (have_top) r.certified_range = std::make_pair(bottom, top);
    return r;
  }));

  out.push_back(guarded("approximation.adjoint_weak_equivalences" + sfx, kMA4, [&] {
    std::size_t checked = 0;
    auto check = [&](const ComplexMorphism& f) -> std::optional<CheckRecord> {
      // L(Y) -> L(Y') -> F with F fibrant; its adjoint is Y -> S lim F.
      const Generated g = fibrant_of(f.target);
      const TowerMorphism w = compose(g.ft.weq, L(f));
      if (!tower_classes(cat, w, t, g.ft.certified_top).in_W) return std::nullopt;
      const LocalComplex ly = localize_complex(cat, f.source, t);
      const ComplexMorphism eta_tow = tower_unit(ly.local, n);
      const ComplexMorphism lim_w = lim_map(tower_limit(tower_of(ly.local, n)), tower_limit(g.ft.tower), w);
      const ComplexMorphism adjoint = chx::compose(lim_w, chx::compose(eta_tow, ly.unit));
      if (!chx::is_tau_weq(cat, adjoint, t, g.ft.certified_top)) {
        return report::fail("approximation.adjoint_weak_equivalences" + sfx, kMA4, json{{"morphism", map_summary(cat, f)}});
      }
      ++checked;
      return std::nullopt;
    };
    for (const auto& y : battery) {
      if (auto r = check(chx::identity_map(y))) return *r;
    }
    for (const auto& f : weqs) {
      if (auto r = check(f)) return *r;
    }
    CheckRecord r = report::pass("approximation.adjoint_weak_equivalences" + sfx, kMA4, json{{"maps", checked}});
    if (have_top) r.certified_range = std::make_pair(bottom, top);
    return r;
  }));

  out.push_back(guarded("approximation.compatibility_left" + sfx, kC1, [&] {
    std::size_t agree = 0;
    for (const auto& f : morphisms) {
      const bool w = chx::is_tau_weq(cat, f, t);
      const bool qw = in_quotient_weq(cat, localize_map(cat, f, t), t, std::nullopt);
      if (w != qw) {
        return report::fail("approximation.compatibility_left" + sfx, kC1,
                            json{{"morphism", map_summary(cat, f)}, {"weak_equivalence", w}, {"quotient_quasi_isomorphism", qw}});
      }
      ++agree;
    }
    return report::pass("approximation.compatibility_left" + sfx, kC1, json{{"morphisms", agree}});
  }));

  out.push_back(guarded("approximation.compatibility_right" + sfx, kC2, [&] {
    std::size_t checked = 0;
    auto check = [&](const ComplexMorphism& psi, std::optional<long> cert) {
      if (!in_quotient_weq(cat, psi, t, cert)) return true;
      ++checked;
      return chx::is_tau_weq(cat, psi, t, cert);
    };
    for (const auto& f : morphisms) {
      const ComplexMorphism qf = localize_map(cat, f, t);
      if (!check(qf, std::nullopt)) {
        return report::fail("approximation.compatibility_right" + sfx, kC2, json{{"morphism", map_summary(cat, qf)}});
      }
    }
    for (const auto& y : battery) {
      const Complex q = localize_complex(cat, y, t).local;
      const long span = q.terms.empty() ? 0 : q.hi() - q.lo;
      const chx::FibrantReplacement fr = chx::fibrant_replacement(cat, q, t, std::max(rdepth, span + 1));
      if (!check(fr.rho, fr.certified_top)) {
        return report::fail("approximation.compatibility_right" + sfx, kC2, json{{"morphism", map_summary(cat, fr.rho)}});
      }
    }
    return report::pass("approximation.compatibility_right" + sfx, kC2, json{{"quotient_quasi_isomorphisms", checked}});
  }));

  out.push_back(guarded("approximation.compatibility_adjoint" + sfx, kC3, [&] {
    std::size_t checked = 0;
    for (const auto& y : battery) {
      const LocalComplex ly = localize_complex(cat, y, t);
      if (!chx::is_tau_weq(cat, ly.unit, t)) {
        return report::fail("approximation.compatibility_adjoint" + sfx, kC3,
                            json{{"complex", summary(cat, y)}, {"detail", "localization unit is not a weak equivalence"}});
      }
      const long span = ly.local.terms.empty() ? 0 : ly.local.hi() - ly.local.lo;
      const chx::FibrantReplacement fr = chx::fibrant_replacement(cat, ly.local, t, std::max(rdepth, span + 1));
      if (!chx::is_tau_weq(cat, chx::compose(fr.rho, ly.unit), t, fr.certified_top)) {
        return report::fail("approximation.compatibility_adjoint" + sfx, kC3, json{{"complex", summary(cat, y)}});
      }
      checked += 2;
    }
    for (const auto& f : weqs) {
      const LocalComplex ls = localize_complex(cat, f.source, t);
      const ComplexMorphism g = localize_map(cat, f, t);
      if (!in_quotient_weq(cat, g, t, std::nullopt)) continue;
      if (!chx::is_tau_weq(cat, chx::compose(g, ls.unit), t)) {
        return report::fail("approximation.compatibility_adjoint" + sfx, kC3, json{{"morphism", map_summary(cat, f)}});
      }
      ++checked;
    }
    return report::pass("approximation.compatibility_adjoint" + sfx, kC3, json{{"maps", checked}});
  }));
  return out;
}

}  // namespace relhom::tow
