#include "relhom/torsion/checks.hpp"

#include "relhom/error.hpp"

namespace relhom::tors {

using report::CheckRecord;
using report::json;

namespace {

json module_json(const ModuleCategory& cat, const Module& m) {
  return json{{"dim", m.dim}, {"composition_factors", cat.composition_factors(m)}};
}

std::string suffix(const TorsionTheory& t) { return "[" + set_string(t.sigma, t.num_simples) + "]"; }

bool subset(SimpleSet a, SimpleSet b) { return (a & ~b) == 0; }

// Every element of the hom space when it is small, otherwise basis and pairwise sums.
std::vector<Matrix> sweep(const ModuleCategory& cat, const Module& a, const Module& b, std::size_t limit) {
  const auto basis = cat.hom_basis(a, b);
  std::vector<Matrix> out;
  double count = 1;
  for (std::size_t k = 0; k < basis.size(); ++k) count *= cat.p();
  if (count <= static_cast<double>(limit)) {
    for (std::size_t code = 0; code < static_cast<std::size_t>(count); ++code) {
      Matrix f(cat.p(), b.dim, a.dim);
      std::size_t c = code;
      for (const auto& h : basis) {
        f = f + h.scaled(static_cast<la::Residue>(c % cat.p()));
        c /= cat.p();
      }
      out.push_back(f);
    }
    return out;
  }
  out.push_back(Matrix(cat.p(), b.dim, a.dim));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.push_back(basis[i]);
    for (std::size_t j = i + 1; j < basis.size(); ++j) out.push_back(basis[i] + basis[j]);
  }
  return out;
}

}  // namespace

Matrix torsion_by_cogeneration(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  std::vector<Matrix> rows;
  for (std::size_t j = 0; j < cat.num_simples(); ++j) {
    if (t.torsion_simple(j)) continue;
    for (const auto& h : cat.hom_basis(m, cat.injective(j))) rows.push_back(h);
  }
  if (rows.empty()) return Matrix::identity(cat.p(), m.dim);
  return la::kernel(la::vstack(rows));
}

std::vector<Module> small_modules(const ModuleCategory& cat, std::size_t max_dim) {
  std::vector<Module> out;
  auto add = [&](const Module& m) {
    if (m.dim == 0 || m.dim > max_dim) return;
    for (const auto& x : out) {
      if (cat.isomorphic(x, m)) return;
    }
    out.push_back(m);
  };
  const auto battery = standard_battery(cat);
  for (const auto& m : battery) {
    add(m);
    for (const auto& s : {cat.socle(m), cat.radical(m)}) {
      add(s.module);
      add(alg::quotient_module(m, s.inclusion.f).module);
    }
  }
  for (const auto& a : battery) {
    for (const auto& b : battery) {
      if (a.dim > max_dim + 2 || b.dim > max_dim + 2) continue;
      for (const auto& h : cat.hom_basis(a, b)) {
        const auto parts = alg::morphism_parts({a, b, h});
        add(parts.image.module);
        add(parts.kernel.module);
        add(parts.cokernel.module);
      }
    }
  }
  return out;
}

CheckRecord bijection_report(const ModuleCategory& cat, const TorsionTheory& t) {
  static const char* kRef = "theories and injective classes correspond by an order-reversing bijection";
  const std::string id = "bijection.round_trip" + suffix(t);
  const InjectiveClass c = injective_class_of(cat, t);
  const TorsionTheory back = torsion_theory_of_class(cat, c);
  json w{{"theory", set_string(t.sigma, t.num_simples)}, {"class_generators", set_string(c.generators, c.num_simples)}};
  if (!(back == t)) {
    w["round_trip"] = set_string(back.sigma, back.num_simples);
    return report::fail(id, kRef, w);
  }
  if (!(injective_class_of(cat, back) == c)) return report::fail(id, kRef, w);
  // The class is exactly the torsion-free indecomposable injectives.
  for (std::size_t i = 0; i < cat.num_simples(); ++i) {
    const bool member = has(c.generators, i);
    if (member != in_injective_class(cat, cat.injective(i), t) ||
        member != (torsion_by_cogeneration(cat, cat.injective(i), t).cols() == 0)) {
      w["indecomposable"] = i;
      return report::fail(id, kRef, w);
    }
  }
  for (const auto& u : all_torsion_theories(cat)) {
    const InjectiveClass cu = injective_class_of(cat, u);
    const bool le = subset(t.sigma, u.sigma);
    const bool reversed = subset(cu.generators, c.generators);
    if (le != reversed) {
      w["other_theory"] = set_string(u.sigma, u.num_simples);
      w["other_class"] = set_string(cu.generators, cu.num_simples);
      return report::fail(id, kRef, w);
    }
  }
  return report::pass(id, kRef, w);
}

CheckRecord i_mono_report(const ModuleCategory& cat, const TorsionTheory& t, const std::vector<Module>& modules,
                          std::size_t exhaustive_limit) {
  static const char* kRef = "a map is a class monomorphism iff its kernel is torsion iff its localization is mono";
  const std::string id = "i_mono.criteria_agree" + suffix(t);
  std::size_t maps = 0, monos = 0;
  for (const auto& a : modules) {
    for (const auto& b : modules) {
      for (const auto& f : sweep(cat, a, b, exhaustive_limit)) {
        const Morphism phi{a, b, f};
        bool kernel_torsion = false;
        try {
          kernel_torsion = is_I_mono(cat, phi, t);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::CrosscheckFailed) throw;
          return report::fail(id, kRef, json{{"error", e.what()}, {"source", module_json(cat, a)},
                                             {"target", module_json(cat, b)}, {"map", report::matrix_json(f)}});
        }
        const Morphism lf = localize_morphism(cat, phi, t);
        const bool local_mono = alg::is_injective_map(lf);
        if (local_mono != kernel_torsion) {
          return report::fail(id, kRef, json{{"source", module_json(cat, a)}, {"target", module_json(cat, b)},
                                             {"map", report::matrix_json(f)}, {"kernel_torsion", kernel_torsion},
                                             {"localized_mono", local_mono}});
        }
        ++maps;
        monos += kernel_torsion;
      }
    }
  }
  return report::pass(id, kRef, json{{"modules", modules.size()}, {"morphisms", maps}, {"class_monomorphisms", monos}});
}

std::vector<CheckRecord> localization_report(const ModuleCategory& cat, const TorsionTheory& t,
                                             const std::vector<Module>& modules) {
  static const char* kTorsion = "torsion modules localize to zero";
  static const char* kFree = "localization only sees the torsion-free quotient";
  static const char* kPreimage = "the localization is the preimage of the torsion of the envelope cokernel";
  static const char* kHom = "homs between local modules agree with homs in the quotient category";
  static const char* kIdem = "localization is idempotent";
  const std::string sfx = suffix(t);
  std::vector<CheckRecord> out;

  auto run = [&](const std::string& id, const char* ref, auto&& body) {
    report::Stopwatch sw;
    CheckRecord r;
    try {
      r = body();
    } catch (const Error& e) {
      r = report::fail(id, ref, json{{"error", e.what()}});
    }
    r.wall_seconds = sw.seconds();
    out.push_back(r);
  };

  run("localization.torsion_vanishes" + sfx, kTorsion, [&] {
    std::size_t n = 0;
    for (const auto& m : modules) {
      const Matrix tm = torsion_by_cogeneration(cat, m, t);
      const Module tmod = alg::submodule(m, tm).module;
      if (tmod.dim == 0) continue;
      if (localize(cat, tmod, t).local.dim != 0) {
        return report::fail("localization.torsion_vanishes" + sfx, kTorsion, json{{"module", module_json(cat, tmod)}});
      }
      ++n;
    }
    return report::pass("localization.torsion_vanishes" + sfx, kTorsion, json{{"torsion_modules", n}});
  });

  run("localization.torsion_free_part" + sfx, kFree, [&] {
    for (const auto& m : modules) {
      const Module free = alg::quotient_module(m, torsion_by_cogeneration(cat, m, t)).module;
      const Localization lm = localize(cat, m, t);
      if (!cat.isomorphic(lm.local, localize(cat, free, t).local) ||
          !la::same_span(alg::morphism_parts(lm.unit).kernel.inclusion.f, torsion_by_cogeneration(cat, m, t))) {
        return report::fail("localization.torsion_free_part" + sfx, kFree, json{{"module", module_json(cat, m)}});
      }
    }
    return report::pass("localization.torsion_free_part" + sfx, kFree, json{{"modules", modules.size()}});
  });

  run("localization.envelope_preimage" + sfx, kPreimage, [&] {
    for (const auto& m : modules) {
      const Module free = alg::quotient_module(m, torsion_by_cogeneration(cat, m, t)).module;
      const auto [e, iota] = cat.injective_envelope(free);
      const alg::QuotientModule c = alg::quotient_module(e, iota.f);
      const Matrix tc = torsion_by_cogeneration(cat, c.module, t);
      const Module pre = alg::submodule(e, la::subspace_sum(iota.f, c.section * tc)).module;
      const Localization lm = localize(cat, m, t);
      // Independent of the construction: the unit has torsion cokernel and L is local.
      const Module coker = alg::morphism_parts(lm.unit).cokernel.module;
      const bool characterized = torsion_by_cogeneration(cat, coker, t).cols() == coker.dim && is_local(cat, lm.local, t);
      if (!cat.isomorphic(pre, lm.local) || !characterized) {
        return report::fail("localization.envelope_preimage" + sfx, kPreimage,
                            json{{"module", module_json(cat, m)}, {"preimage", module_json(cat, pre)},
                                 {"localization", module_json(cat, lm.local)}, {"characterized", characterized}});
      }
    }
    return report::pass("localization.envelope_preimage" + sfx, kPreimage, json{{"modules", modules.size()}});
  });

  run("localization.local_homs" + sfx, kHom, [&] {
    std::vector<Module> locals;
    for (const auto& m : modules) {
      const Module l = localize(cat, m, t).local;
      if (l.dim != 0) locals.push_back(l);
    }
    std::size_t pairs = 0;
    for (const auto& x : locals) {
      for (const auto& y : locals) {
        const std::size_t q = hom_quotient(cat, x, y, t).size();
        const std::size_t h = cat.hom_dim(x, y);
        if (q != h) {
          return report::fail("localization.local_homs" + sfx, kHom,
                              json{{"source", module_json(cat, x)}, {"target", module_json(cat, y)}, {"quotient_homs", q},
                                   {"homs", h}});
        }
        ++pairs;
      }
    }
    return report::pass("localization.local_homs" + sfx, kHom, json{{"pairs", pairs}});
  });

  run("localization.idempotent" + sfx, kIdem, [&] {
    for (const auto& m : modules) {
      const Localization l1 = localize(cat, m, t);
      const Localization l2 = localize(cat, l1.local, t);
      const bool unit_iso = l2.unit.f.rows() == l2.unit.f.cols() &&
                            (l2.unit.f.rows() == 0 || la::rank(l2.unit.f) == l2.unit.f.rows());
      if (!unit_iso || !cat.isomorphic(l1.local, l2.local)) {
        return report::fail("localization.idempotent" + sfx, kIdem, json{{"module", module_json(cat, m)}});
      }
    }
    return report::pass("localization.idempotent" + sfx, kIdem, json{{"modules", modules.size()}});
  });
  return out;
}

}  // namespace relhom::tors
