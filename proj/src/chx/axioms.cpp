#include <random>

#include "relhom/chx/model.hpp"
#include "relhom/error.hpp"

namespace relhom::chx {

using report::CheckRecord;
using report::json;

namespace {

struct Sampler {
  const ModuleCategory& cat;
  std::mt19937_64 rng;

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

  ComplexMorphism random_map(const Complex& x, const Complex& y) {
    ComplexMorphism f = zero_map(x, y);
    for (const auto& g : chain_maps(cat, x, y)) f = add(f, scale(g, static_cast<la::Residue>(below(cat.p()))));
    return f;
  }
};

json morphism_summary(const ModuleCategory& cat, const ComplexMorphism& f) {
  return json{{"source", complex_summary(cat, f.source)}, {"target", complex_summary(cat, f.target)}};
}

// Runs a check body; library errors become FAIL records.
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

}  // namespace

std::vector<CheckRecord> model_axiom_report(const ModuleCategory& cat, const TorsionTheory& t,
                                            const std::vector<Complex>& battery, long bottom, long depth,
                                            CofibrationConvention conv, std::uint64_t seed) {
  static const char* kTwoOfThree = "weak equivalences satisfy two-out-of-three";
  static const char* kRetract = "weak equivalences, fibrations and cofibrations are closed under retracts";
  static const char* kLift = "cofibrations lift against fibrations when one of them is acyclic";
  static const char* kFactorDisk = "every map factors as a cofibration followed by an acyclic fibration";
  static const char* kFactorCocyl = "every map factors as an acyclic cofibration followed by a fibration";

  std::vector<Complex> cands;
  for (const auto& x : battery) {
    const auto s = x.support();
    if (!s || s->first >= bottom) cands.push_back(x);
  }
  Sampler s{cat, std::mt19937_64(seed)};
  const Complex zero = zero_complex(cat.algebra());

  // Sampled morphisms: every candidate to zero, plus random maps between random pairs.
  std::vector<ComplexMorphism> maps;
  for (const auto& x : cands) maps.push_back(zero_map(x, zero));
  for (int k = 0; k < 24 && !cands.empty(); ++k) {
    maps.push_back(s.random_map(cands[s.below(cands.size())], cands[s.below(cands.size())]));
  }

  std::vector<CheckRecord> out;
  const std::string suffix = "[" + tors::set_string(t.sigma, t.num_simples) + "]";

  out.push_back(guarded("model.two_out_of_three" + suffix, kTwoOfThree, [&] {
    std::size_t checked = 0;
    for (int k = 0; k < 16 && !cands.empty(); ++k) {
      const Complex& x = cands[s.below(cands.size())];
      const Complex& y = cands[s.below(cands.size())];
      const Complex& z = cands[s.below(cands.size())];
      const ComplexMorphism f = s.random_map(x, y);
      const ComplexMorphism g = s.random_map(y, z);
      const bool wf = is_tau_weq(cat, f, t), wg = is_tau_weq(cat, g, t), wgf = is_tau_weq(cat, compose(g, f), t);
      if (wf + wg + wgf == 2) {
        return report::fail("model.two_out_of_three" + suffix, kTwoOfThree,
                            json{{"f", morphism_summary(cat, f)}, {"g", morphism_summary(cat, g)},
                                 {"f_weq", wf}, {"g_weq", wg}, {"gf_weq", wgf}});
      }
      ++checked;
    }
    return report::pass("model.two_out_of_three" + suffix, kTwoOfThree, json{{"pairs_checked", checked}});
  }));

  out.push_back(guarded("model.retracts" + suffix, kRetract, [&] {
    std::size_t checked = 0;
    for (std::size_t k = 0; k + 1 < maps.size() && k < 16; ++k) {
      const ComplexMorphism& f = maps[k];
      const ComplexMorphism& g = maps[maps.size() - 1 - k];
      const ClassFlags big = class_membership(cat, direct_sum(f, g), t, bottom, conv);
      const ClassFlags small = class_membership(cat, f, t, bottom, conv);
      if ((big.in_W && !small.in_W) || (big.in_B && !small.in_B) || (big.in_C && !small.in_C)) {
        return report::fail("model.retracts" + suffix, kRetract, json{{"retract", morphism_summary(cat, f)}});
      }
      ++checked;
    }
    return report::pass("model.retracts" + suffix, kRetract, json{{"retracts_checked", checked}});
  }));

  out.push_back(guarded("model.lifting" + suffix, kLift, [&] {
    std::size_t lifted = 0;
    auto try_square = [&](const ComplexMorphism& c, const ComplexMorphism& b, const ComplexMorphism& top) {
      // A bottom map with bottom c = b top, if the square closes at all.
      const auto bottom_map = solve_diagonal(cat, c, zero_map(b.target, zero), compose(b, top), zero_map(c.target, zero));
      if (!bottom_map) return std::optional<json>{};
      try {
        const ComplexMorphism psi = lift_square(cat, c, b, top, *bottom_map, t, bottom);
        if (!equal_maps(compose(psi, c), top) || !equal_maps(compose(b, psi), *bottom_map)) {
          return std::optional<json>{json{{"reason", "diagonal does not commute"}}};
        }
      } catch (const Error& e) {
        return std::optional<json>{json{{"error", e.what()}, {"left", morphism_summary(cat, c)}, {"right", morphism_summary(cat, b)}}};
      }
      ++lifted;
      return std::optional<json>{};
    };
    // Cofibrations against acyclic fibrations, both from the disk factorization.
    for (int k = 0; k < 8 && maps.size() > 1; ++k) {
      const Factorization f1 = factor_disk(cat, maps[s.below(maps.size())], t, bottom);
      const Factorization f2 = factor_disk(cat, maps[s.below(maps.size())], t, bottom);
      if (auto w = try_square(f1.c, f2.b, s.random_map(f1.c.source, f2.b.source))) {
        return report::fail("model.lifting" + suffix, kLift, *w);
      }
    }
    // Disk inclusions (acyclic cofibrations) against fibrations from the cocylinder factorization.
    std::vector<Module> fibrant_entries;
    for (std::size_t i = 0; i < cat.num_simples(); ++i) {
      if (!t.torsion_simple(i)) fibrant_entries.push_back(cat.injective(i));
    }
    for (int k = 0; k < 6 && !fibrant_entries.empty() && !maps.empty(); ++k) {
      const Complex& x = cands[s.below(cands.size())];
      const long hi = x.terms.empty() ? bottom + 1 : std::max(x.hi(), bottom + 1);
      const Complex d = disk(fibrant_entries[s.below(fibrant_entries.size())], bottom + 1 + static_cast<long>(s.below(static_cast<std::size_t>(hi - bottom))));
      const ComplexMorphism c = sum_injection_first(x, d);
      const Factorization f2 = factor_cocyl(cat, maps[s.below(maps.size())], t, depth);
      if (auto w = try_square(c, f2.b, s.random_map(x, f2.b.source))) {
        return report::fail("model.lifting" + suffix, kLift, *w);
      }
    }
    return report::pass("model.lifting" + suffix, kLift, json{{"squares_lifted", lifted}});
  }));

  out.push_back(guarded("model.factor_cofibration_then_acyclic_fibration" + suffix, kFactorDisk, [&] {
    const std::string id = "model.factor_cofibration_then_acyclic_fibration" + suffix;
    for (const auto& phi : maps) {
      const Factorization f = factor_disk(cat, phi, t, bottom);
      const bool composite = equal_maps(compose(f.b, f.c), phi);
      const bool c_ok = in_C(cat, f.c, t, bottom, conv);
      const ClassFlags bf = class_membership(cat, f.b, t, bottom, conv);
      if (composite && c_ok && bf.in_B && bf.in_W) continue;
      json w{{"morphism", morphism_summary(cat, phi)}, {"composite_ok", composite}, {"cofibration", c_ok},
             {"fibration", bf.in_B}, {"weak_equivalence", bf.in_W}};
      if (conv == CofibrationConvention::Printed) {
        if (auto ob = printed_convention_obstruction(cat, phi, t, bottom)) {
          w["obstruction"] = report::matrix_json(*ob);
          w["reason"] = "non-torsion bottom cycles in the kernel must map to torsion cycles of Z";
        }
      }
      return report::fail(id, kFactorDisk, w);
    }
    return report::pass(id, kFactorDisk, json{{"maps_factored", maps.size()}});
  }));

  out.push_back(guarded("model.factor_acyclic_cofibration_then_fibration" + suffix, kFactorCocyl, [&] {
    const std::string id = "model.factor_acyclic_cofibration_then_fibration" + suffix;
    for (const auto& phi : maps) {
      const Factorization f = factor_cocyl(cat, phi, t, depth);
      const bool composite = equal_maps(compose(f.b, f.c), phi);
      const bool c_ok = in_C(cat, f.c, t, bottom, conv) && is_tau_weq(cat, f.c, t, f.certified_top);
      const bool b_ok = in_B(cat, f.b, t, bottom);
      if (composite && c_ok && b_ok) continue;
      return report::fail(id, kFactorCocyl, json{{"morphism", morphism_summary(cat, phi)}, {"composite_ok", composite},
                                                 {"acyclic_cofibration", c_ok}, {"fibration", b_ok}});
    }
    auto rec = report::pass(id, kFactorCocyl, json{{"maps_factored", maps.size()}});
    return rec;
  }));
  return out;
}

CheckRecord weak_equivalence_report(const ModuleCategory& cat, const TorsionTheory& t,
                                    const std::vector<Complex>& battery, std::size_t exhaustive_limit) {
  static const char* kRef = "cone cohomology is torsion iff Hom into the class injectives is acyclic";
  const std::string id = "weak_equivalence.criteria_agree[" + tors::set_string(t.sigma, t.num_simples) + "]";
  return guarded(id, kRef, [&] {
    std::size_t maps = 0, weqs = 0;
    for (const auto& x : battery) {
      for (const auto& y : battery) {
        const auto basis = chain_maps(cat, x, y);
        std::vector<ComplexMorphism> sample;
        double count = 1;
        for (std::size_t k = 0; k < basis.size(); ++k) count *= cat.p();
        if (count <= static_cast<double>(exhaustive_limit)) {
          for (std::size_t code = 0; code < static_cast<std::size_t>(count); ++code) {
            ComplexMorphism f = zero_map(x, y);
            std::size_t c = code;
            for (const auto& g : basis) {
              f = add(f, scale(g, static_cast<la::Residue>(c % cat.p())));
              c /= cat.p();
            }
            sample.push_back(std::move(f));
          }
        } else {
          sample.push_back(zero_map(x, y));
          for (std::size_t i = 0; i < basis.size(); ++i) {
            sample.push_back(basis[i]);
            for (std::size_t j = i + 1; j < basis.size(); ++j) sample.push_back(add(basis[i], basis[j]));
          }
        }
        for (const auto& f : sample) {
          try {
            weqs += is_tau_weq(cat, f, t);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::CrosscheckFailed) throw;
            return report::fail(id, kRef, json{{"error", e.what()}, {"morphism", morphism_summary(cat, f)}});
          }
          ++maps;
        }
      }
    }
    return report::pass(id, kRef, json{{"morphisms", maps}, {"weak_equivalences", weqs}});
  });
}

}  // namespace relhom::chx
