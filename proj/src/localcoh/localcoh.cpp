#include "relhom/localcoh/localcoh.hpp"

#include <functional>
#include <future>

#include "relhom/error.hpp"

namespace relhom::lc {

using report::CheckRecord;
using report::json;

namespace {

Matrix restrict_map(const Matrix& d, const Matrix& src_basis, const Matrix& dst_basis) {
  if (dst_basis.cols() == 0 || src_basis.cols() == 0) return Matrix(d.p(), dst_basis.cols(), src_basis.cols());
  return la::left_inverse(dst_basis) * d * src_basis;
}

Module cohomology_at(const std::vector<Module>& terms, const std::vector<Matrix>& maps, std::size_t n) {
  const Module& mid = terms.at(n);
  const Matrix in = n == 0 ? Matrix(mid.p(), mid.dim, 0) : maps.at(n - 1);
  return alg::homology(in, mid, maps.at(n));
}

/// Socle of the target lies in the image of f.
bool essential_image(const ModuleCategory& cat, const Morphism& f) {
  const Matrix soc = cat.socle(f.target).inclusion.f;
  return la::contains(la::image(f.f), soc);
}

std::string theory_name(const TorsionTheory& t) { return tors::set_string(t.sigma, t.num_simples); }

/// Outcome of an isomorphism comparison that never throws.
struct Comparison {
  bool iso = false;
  bool inconclusive = false;
};

Comparison compare(const ModuleCategory& cat, const Module& a, const Module& b) {
  try {
    return {cat.isomorphic(a, b), false};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchExhausted) throw;
    return {false, true};
  }
}

json mismatch(const ModuleCategory& cat, std::size_t degree, const Module& lhs, const Module& rhs, bool inconclusive) {
  json w{{"degree", degree}, {"lhs", module_summary(cat, lhs)}, {"rhs", module_summary(cat, rhs)}};
  if (inconclusive) w["inconclusive"] = true;
  return w;
}

CheckRecord timed(CheckRecord rec, const report::Stopwatch& sw) {
  rec.wall_seconds = sw.seconds();
  return rec;
}

}  // namespace

Resolution min_injective_resolution(const ModuleCategory& cat, const Module& m, std::size_t cap) {
  Resolution r;
  r.base = m;
  r.cap = cap;
  auto [e0, iota] = cat.injective_envelope(m);
  r.terms.push_back(e0);
  r.augmentation = iota;
  Matrix incoming = iota.f;
  for (std::size_t k = 0; k < cap; ++k) {
    const Module& cur = r.terms[k];
    const alg::QuotientModule q = alg::quotient_module(cur, la::image(incoming));
    auto [e, j] = cat.injective_envelope(q.module);
    Morphism d{cur, e, j.f * q.projection.f};
    incoming = d.f;
    r.terms.push_back(e);
    r.diffs.push_back(std::move(d));
  }
  for (const auto& e : r.terms) r.terminated = r.terminated || e.dim == 0;
  return r;
}

std::string resolution_problem(const ModuleCategory& cat, const Resolution& r) {
  if (r.terms.size() != r.cap + 1 || r.diffs.size() != r.cap) return "wrong number of terms";
  for (std::size_t k = 0; k < r.terms.size(); ++k) {
    if (!cat.is_injective(r.terms[k])) return "E^" + std::to_string(k) + " is not injective";
  }
  if (auto p = alg::morphism_problem(r.augmentation); !p.empty()) return "augmentation: " + p;
  if (!alg::is_injective_map(r.augmentation)) return "augmentation is not injective";
  if (!essential_image(cat, r.augmentation)) return "E^0 is not an envelope of the base";
  Matrix incoming = r.augmentation.f;
  for (std::size_t k = 0; k < r.cap; ++k) {
    const Morphism& d = r.diffs[k];
    const std::string at = std::to_string(k);
    if (auto p = alg::morphism_problem(d); !p.empty()) return "d^" + at + ": " + p;
    if (!la::same_span(la::image(incoming), la::kernel(d.f))) return "not exact at E^" + at;
    if (!essential_image(cat, d)) return "E^" + std::to_string(k + 1) + " is not an envelope of the cokernel";
    incoming = d.f;
  }
  return {};
}

std::vector<Module> gamma_all(const ModuleCategory& cat, const Resolution& r, const TorsionTheory& t) {
  std::vector<Module> tt;
  std::vector<Matrix> bases;
  for (const auto& e : r.terms) {
    alg::Submodule s = tors::torsion_submodule(cat, e, t);
    bases.push_back(s.inclusion.f);
    tt.push_back(std::move(s.module));
  }
  std::vector<Matrix> maps;
  for (std::size_t k = 0; k < r.cap; ++k) maps.push_back(restrict_map(r.diffs[k].f, bases[k], bases[k + 1]));
  std::vector<Module> out;
  for (std::size_t n = 0; n < r.cap; ++n) out.push_back(cohomology_at(tt, maps, n));
  return out;
}

Module gamma(const ModuleCategory& cat, const Resolution& r, const TorsionTheory& t, std::size_t n) {
  if (n >= r.cap) throw Error(ErrorCode::InvalidInput, "degree must be below the cap");
  return gamma_all(cat, r, t).at(n);
}

Module gamma(const ModuleCategory& cat, const Module& m, const TorsionTheory& t, std::size_t n, std::size_t cap) {
  if (n >= cap) throw Error(ErrorCode::InvalidInput, "degree must be below the cap");
  return gamma(cat, min_injective_resolution(cat, m, cap), t, n);
}

Module derived_localization(const ModuleCategory& cat, const Resolution& r, const TorsionTheory& t, std::size_t n) {
  if (n >= r.cap) throw Error(ErrorCode::InvalidInput, "degree must be below the cap");
  std::vector<Module> local;
  for (std::size_t k = 0; k <= n + 1; ++k) local.push_back(tors::localize(cat, r.terms[k], t).local);
  std::vector<Matrix> maps;
  for (std::size_t k = 0; k <= n; ++k) maps.push_back(tors::localize_morphism(cat, r.diffs[k], t).f);
  return cohomology_at(local, maps, n);
}

json module_summary(const ModuleCategory& cat, const Module& m) {
  return json{{"dim", m.dim}, {"composition_factors", cat.composition_factors(m)}};
}

std::vector<CheckRecord> coho1_report(const ModuleCategory& cat, const Module& m, const TorsionTheory& t,
                                      std::size_t cap, const std::string& label) {
  struct Clause {
    const char* id;
    const char* reference;
  };
  static const Clause clauses[] = {
      {"torsion_vanishing", "positive-degree local cohomology of a torsion module vanishes"},
      {"torsion_free_part", "positive-degree local cohomology only sees the torsion-free quotient"},
      {"dimension_shift", "local cohomology shifts degree along the envelope cokernel"},
      {"first_via_torsion", "first local cohomology of a torsion-free module is the torsion of its envelope cokernel"},
      {"derived_localization", "higher local cohomology agrees with derived localization one degree lower"},
      {"first_via_localization", "first local cohomology of a torsion-free module is the localization cokernel"},
  };
  std::vector<CheckRecord> out;
  auto id_of = [&](const Clause& c) { return "local_cohomology." + std::string(c.id) + "[" + label + "]"; };
  if (!tors::is_stable(cat, t)) {
    for (const auto& c : clauses) {
      out.push_back(report::skipped(id_of(c), c.reference, "stability: theory " + theory_name(t) + " is not stable"));
    }
    return out;
  }
  if (cap < 2) {
    for (const auto& c : clauses) out.push_back(report::skipped(id_of(c), c.reference, "cap: need at least 2"));
    return out;
  }

  const Resolution res = min_injective_resolution(cat, m, cap);
  const std::vector<Module> g = gamma_all(cat, res, t);
  const bool torsion = tors::is_torsion(cat, m, t);
  const bool torsion_free = tors::is_torsion_free(cat, m, t);
  const alg::QuotientModule envelope_coker = alg::quotient_module(res.terms[0], res.augmentation.f);
  const long top = static_cast<long>(cap) - 1;

  // Positive degrees vanish on torsion modules.
  {
    report::Stopwatch sw;
    const Clause& c = clauses[0];
    if (!torsion) {
      out.push_back(report::skipped(id_of(c), c.reference, "module is not torsion"));
    } else {
      json w = json::object();
      for (std::size_t n = 1; n < cap && w.empty(); ++n) {
        if (g[n].dim != 0) w = json{{"degree", n}, {"gamma", module_summary(cat, g[n])}};
      }
      auto rec = report::verdict(w.empty(), id_of(c), c.reference, w);
      rec.certified_range = {1, top};
      out.push_back(timed(std::move(rec), sw));
    }
  }
  // Replacing M by M / T(M).
  {
    report::Stopwatch sw;
    const Clause& c = clauses[1];
    const Module free_part = tors::torsion_free_quotient(cat, m, t).module;
    const std::vector<Module> gf = gamma_all(cat, min_injective_resolution(cat, free_part, cap), t);
    json w = json::object();
    for (std::size_t n = 1; n < cap && w.empty(); ++n) {
      const Comparison cmp = compare(cat, g[n], gf[n]);
      if (!cmp.iso) w = mismatch(cat, n, g[n], gf[n], cmp.inconclusive);
    }
    auto rec = report::verdict(w.empty(), id_of(c), c.reference, w);
    rec.certified_range = {1, top};
    out.push_back(timed(std::move(rec), sw));
  }
  // Gamma^{n+1}(M) against Gamma^n(E(M)/M).
  {
    report::Stopwatch sw;
    const Clause& c = clauses[2];
    const std::vector<Module> gc = gamma_all(cat, min_injective_resolution(cat, envelope_coker.module, cap), t);
    json w = json::object();
    for (std::size_t n = 1; n + 1 < cap && w.empty(); ++n) {
      const Comparison cmp = compare(cat, g[n + 1], gc[n]);
      if (!cmp.iso) w = mismatch(cat, n, g[n + 1], gc[n], cmp.inconclusive);
    }
    if (cap < 3) {
      out.push_back(report::skipped(id_of(c), c.reference, "cap: need at least 3"));
    } else {
      auto rec = report::verdict(w.empty(), id_of(c), c.reference, w);
      rec.certified_range = {1, top - 1};
      out.push_back(timed(std::move(rec), sw));
    }
  }
  // Gamma^1 of a torsion-free module against T(E(M)/M).
  {
    report::Stopwatch sw;
    const Clause& c = clauses[3];
    if (!torsion_free) {
      out.push_back(report::skipped(id_of(c), c.reference, "module is not torsion-free"));
    } else {
      const Module rhs = tors::torsion_submodule(cat, envelope_coker.module, t).module;
      const Comparison cmp = compare(cat, g[1], rhs);
      auto rec = report::verdict(cmp.iso, id_of(c), c.reference,
                                 cmp.iso ? json::object() : mismatch(cat, 1, g[1], rhs, cmp.inconclusive));
      rec.certified_range = {1, 1};
      out.push_back(timed(std::move(rec), sw));
    }
  }
  // Gamma^{n+1}(M) against the n-th cohomology of L applied to the resolution.
  {
    report::Stopwatch sw;
    const Clause& c = clauses[4];
    if (cap < 3) {
      out.push_back(report::skipped(id_of(c), c.reference, "cap: need at least 3"));
    } else {
      json w = json::object();
      for (std::size_t n = 1; n + 1 < cap && w.empty(); ++n) {
        const Module rl = derived_localization(cat, res, t, n);
        const Comparison cmp = compare(cat, g[n + 1], rl);
        if (!cmp.iso) w = mismatch(cat, n, g[n + 1], rl, cmp.inconclusive);
      }
      auto rec = report::verdict(w.empty(), id_of(c), c.reference, w);
      rec.certified_range = {1, top - 1};
      out.push_back(timed(std::move(rec), sw));
    }
  }
  // Gamma^1 of a torsion-free module against L(M)/M.
  {
    report::Stopwatch sw;
    const Clause& c = clauses[5];
    if (!torsion_free) {
      out.push_back(report::skipped(id_of(c), c.reference, "module is not torsion-free"));
    } else {
      const tors::Localization loc = tors::localize(cat, m, t);
      const Module rhs = alg::quotient_module(loc.local, loc.unit.f).module;
      const Comparison cmp = compare(cat, g[1], rhs);
      auto rec = report::verdict(cmp.iso, id_of(c), c.reference,
                                 cmp.iso ? json::object() : mismatch(cat, 1, g[1], rhs, cmp.inconclusive));
      rec.certified_range = {1, 1};
      out.push_back(timed(std::move(rec), sw));
    }
  }
  return out;
}

std::vector<CheckRecord> vanishing_report(const ModuleCategory& cat, const TorsionTheory& t,
                                          const std::vector<Module>& battery, std::size_t cap) {
  static const char* kExactRef = "local cohomology of a stable exact theory vanishes above degree one";
  static const char* kOrderRef = "vanishing for a larger stable theory implies vanishing for a smaller one";
  static const char* kGdimRef = "nonvanishing local cohomology is bounded by relative Gabriel dimension plus two";

  const bool stable = tors::is_stable(cat, t);
  const std::string not_stable = "stability: theory " + theory_name(t) + " is not stable";
  tors::ExactnessVerdict exact;
  if (stable) exact = tors::exactness_on_battery(cat, t, battery);
  const tors::HypothesisAudit audit = tors::audit_hypotheses(cat, {t}, battery);

  // Stable theories comparable with t, as (larger, smaller) pairs.
  std::vector<std::pair<TorsionTheory, TorsionTheory>> pairs;
  if (stable) {
    for (const auto& u : tors::all_torsion_theories(cat)) {
      if (u == t || !tors::is_stable(cat, u)) continue;
      if ((u.sigma & ~t.sigma) == 0) pairs.emplace_back(t, u);
      if ((t.sigma & ~u.sigma) == 0) pairs.emplace_back(u, t);
    }
  }

  auto per_module = [&](std::size_t idx) {
    const Module& x = battery[idx];
    const std::string tag = "[X" + std::to_string(idx + 1) + "]";
    std::vector<CheckRecord> recs;
    const Resolution res = min_injective_resolution(cat, x, cap);
    const std::vector<Module> g = gamma_all(cat, res, t);

    {
      report::Stopwatch sw;
      const std::string id = "vanishing.exact_theory" + tag;
      if (!stable) {
        recs.push_back(report::skipped(id, kExactRef, not_stable));
      } else if (!exact.exact_on_battery) {
        recs.push_back(report::skipped(id, kExactRef, "exactness: " + exact.witness));
      } else {
        const bool local = tors::is_local(cat, x, t);
        json w = json::object();
        for (std::size_t n = local ? 0 : 2; n < cap && w.empty(); ++n) {
          if (g[n].dim != 0) w = json{{"degree", n}, {"local", local}, {"gamma", module_summary(cat, g[n])}};
        }
        auto rec = report::verdict(w.empty(), id, kExactRef, w);
        rec.certified_range = {local ? 0 : 2, static_cast<long>(cap) - 1};
        recs.push_back(timed(std::move(rec), sw));
      }
    }
    {
      report::Stopwatch sw;
      const std::string id = "vanishing.theory_order" + tag;
      if (!stable) {
        recs.push_back(report::skipped(id, kOrderRef, not_stable));
      } else {
        json w = json::object();
        for (const auto& [big, small] : pairs) {
          if (!w.empty()) break;
          const std::vector<Module> gb = big == t ? g : gamma_all(cat, res, big);
          const std::vector<Module> gs = small == t ? g : gamma_all(cat, res, small);
          // Both vanishing prefixes, compared degree by degree.
          for (std::size_t n = 0; n < cap; ++n) {
            if (gb[n].dim != 0) break;
            if (gs[n].dim != 0) {
              w = json{{"larger", theory_name(big)}, {"smaller", theory_name(small)}, {"degree", n},
                       {"gamma_smaller", module_summary(cat, gs[n])}};
              break;
            }
          }
        }
        auto rec = report::verdict(w.empty(), id, kOrderRef, w);
        if (w.empty()) rec.witness = json{{"pairs_checked", pairs.size()}};
        rec.certified_range = {0, static_cast<long>(cap) - 1};
        recs.push_back(timed(std::move(rec), sw));
      }
    }
    {
      report::Stopwatch sw;
      const std::string id = "vanishing.gabriel_bound" + tag;
      if (!audit.hyp1) {
        recs.push_back(report::skipped(id, kGdimRef, "stability: " + audit.hyp1_detail));
      } else if (!audit.hyp3) {
        recs.push_back(report::skipped(id, kGdimRef, "exactness of prime theories: " + audit.hyp3_detail));
      } else {
        const long gd = tors::rel_gdim(cat, x, t);
        json w = json::object();
        for (long n = gd + 3; n < static_cast<long>(cap) && w.empty(); ++n) {
          if (n < 0) continue;
          const Module& gn = g[static_cast<std::size_t>(n)];
          if (gn.dim != 0) w = json{{"degree", n}, {"rel_gdim", gd}, {"gamma", module_summary(cat, gn)}};
        }
        auto rec = report::verdict(w.empty(), id, kGdimRef, w);
        if (w.empty()) rec.witness = json{{"rel_gdim", gd}, {"prime_exactness", audit.hyp3_detail}};
        rec.certified_range = {gd + 3, static_cast<long>(cap) - 1};
        recs.push_back(timed(std::move(rec), sw));
      }
    }
    return recs;
  };

  std::vector<std::future<std::vector<CheckRecord>>> jobs;
  for (std::size_t i = 0; i < battery.size(); ++i) jobs.push_back(std::async(std::launch::async, per_module, i));
  std::vector<CheckRecord> out;
  for (auto& j : jobs) {
    for (auto& r : j.get()) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace relhom::lc
