#include <vector>

#include "doctest.h"
#include "gen.hpp"
#include "relhom/algmod/fixtures.hpp"
#include "relhom/error.hpp"
#include "relhom/torsion/torsion.hpp"

using namespace relhom::alg;
using namespace relhom::tors;
using relhom::la::Matrix;
namespace la = relhom::la;

namespace {

struct KA2 {
  AlgebraPtr a = make_kA2();
  ModuleCategory cat{a};
  KA2Modules m = kA2_modules(a);
  TorsionTheory t0{0, 2}, t1{1, 2}, t2{2, 2}, tw{3, 2};
};

std::vector<Matrix> all_vectors(std::uint32_t p, std::size_t n) {
  std::vector<Matrix> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Matrix v(p, n, 1);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= p) v.set(i, 0, static_cast<long long>(c % p));
    out.push_back(v);
  }
  return out;
}

// Largest torsion submodule as the sum of all torsion cyclic submodules.
Matrix brute_torsion(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  Matrix acc(cat.p(), m.dim, 0);
  for (const auto& v : all_vectors(cat.p(), m.dim)) {
    const Matrix c = spin(m, v);
    if (is_torsion(cat, submodule(m, c).module, t)) acc = la::hstack(acc, c);
  }
  return la::span_basis(acc);
}

// Every submodule of M reachable as the span of cyclic submodules.
std::vector<Matrix> some_submodules(const Module& m) {
  std::vector<Matrix> subs;
  for (const auto& v : all_vectors(m.p(), m.dim)) {
    for (const auto& w : all_vectors(m.p(), m.dim)) {
      const Matrix s = spin(m, la::hstack(v, w));
      bool seen = false;
      for (const auto& x : subs) seen = seen || la::same_span(x, s);
      if (!seen) subs.push_back(s);
    }
  }
  return subs;
}

std::vector<Module> fixture_modules(const KA2& k) {
  return {zero_module(k.a), k.m.S1, k.m.S2, k.m.I2, direct_sum(k.m.S1, k.m.S2), direct_sum(k.m.I2, k.m.S1),
          direct_sum(k.m.I2, k.m.S2), regular_module(k.a)};
}

}  // namespace

TEST_CASE("enumerating torsion theories") {
  KA2 k;
  CHECK(all_torsion_theories(k.cat).size() == 4);
  ModuleCategory lc(make_loc2()), ss(make_ss2());
  CHECK(all_torsion_theories(lc).size() == 2);
  CHECK(all_torsion_theories(ss).size() == 4);
}

TEST_CASE("property: torsion classes are closed under submodules and quotients; F is the right orthogonal") {
  KA2 k;
  std::vector<Module> samples;
  for (const auto& m : fixture_modules(k)) {
    if (m.dim > 4) continue;
    for (const auto& s : some_submodules(m)) {
      samples.push_back(submodule(m, s).module);
      samples.push_back(quotient_module(m, s).module);
    }
  }
  for (const auto& t : all_torsion_theories(k.cat)) {
    std::vector<Module> torsion;
    for (const auto& x : samples) {
      if (is_torsion(k.cat, x, t)) torsion.push_back(x);
    }
    for (const auto& m : fixture_modules(k)) {
      if (m.dim > 4) continue;
      const bool tm = is_torsion(k.cat, m, t);
      for (const auto& s : some_submodules(m)) {
        if (tm) {
          CHECK(is_torsion(k.cat, submodule(m, s).module, t));
          CHECK(is_torsion(k.cat, quotient_module(m, s).module, t));
        }
        if (is_torsion(k.cat, submodule(m, s).module, t) && is_torsion(k.cat, quotient_module(m, s).module, t)) {
          CHECK(tm);
        }
      }
      bool orthogonal = true;
      for (const auto& x : torsion) orthogonal = orthogonal && k.cat.hom_dim(x, m) == 0;
      CHECK(is_torsion_free(k.cat, m, t) == orthogonal);
    }
  }
}

TEST_CASE("torsion submodules") {
  KA2 k;
  CHECK(torsion_submodule(k.cat, k.m.I2, k.t1).module.dim == 0);
  const auto t2 = torsion_submodule(k.cat, k.m.I2, k.t2);
  CHECK(t2.module.dim == 1);
  CHECK(k.cat.isomorphic(t2.module, k.m.S2));
  for (const auto& m : fixture_modules(k)) CHECK(torsion_submodule(k.cat, m, k.tw).module.dim == m.dim);
}

TEST_CASE("property: torsion submodule matches the sum of torsion cyclic submodules") {
  KA2 k;
  for (const auto& m : fixture_modules(k)) {
    for (const auto& t : all_torsion_theories(k.cat)) {
      const auto sub = torsion_submodule(k.cat, m, t);
      CHECK(la::same_span(sub.inclusion.f, brute_torsion(k.cat, m, t)));
      CHECK(is_torsion(k.cat, sub.module, t));
      CHECK(is_torsion_free(k.cat, torsion_free_quotient(k.cat, m, t).module, t));
    }
  }
}

TEST_CASE("cogenerated theories") {
  KA2 k;
  CHECK(cogenerated_by(k.cat, k.m.I2) == k.t1);
  CHECK(cogenerated_by(k.cat, direct_sum(k.m.S1, k.m.I2)) == k.t0);
  CHECK(cogenerated_by(k.cat, zero_module(k.a)) == k.tw);
  try {
    cogenerated_by(k.cat, k.m.S2);
    FAIL("expected NOT_INJECTIVE");
  } catch (const relhom::Error& e) {
    CHECK(e.code() == relhom::ErrorCode::NotInjective);
  }
}

TEST_CASE("stability") {
  KA2 k;
  CHECK(is_stable(k.cat, k.t1));
  CHECK_FALSE(is_stable(k.cat, k.t2));
  CHECK(is_stable(k.cat, k.t0));
  CHECK(is_stable(k.cat, k.tw));
  CHECK_FALSE(all_theories_stable(k.cat));
  CHECK(all_theories_stable(ModuleCategory(make_ss2())));
  CHECK(all_theories_stable(ModuleCategory(make_loc2())));
}

TEST_CASE("injective classes and their theories") {
  KA2 k;
  CHECK(injective_class_of(k.cat, k.t1) == InjectiveClass{2, 2});
  CHECK(injective_class_of(k.cat, k.t2) == InjectiveClass{1, 2});
  CHECK(injective_class_of(k.cat, k.tw) == InjectiveClass{0, 2});
  CHECK(torsion_theory_of_class(k.cat, InjectiveClass{2, 2}) == k.t1);
  CHECK(torsion_theory_of_class(k.cat, InjectiveClass{3, 2}) == k.t0);
  CHECK(torsion_theory_of_class(k.cat, InjectiveClass{0, 2}) == k.tw);
  CHECK(in_class(k.cat, direct_sum(k.m.I2, k.m.I2), InjectiveClass{2, 2}));
  CHECK_FALSE(in_class(k.cat, direct_sum(k.m.I2, k.m.S1), InjectiveClass{2, 2}));
  CHECK_FALSE(in_class(k.cat, k.m.S2, InjectiveClass{3, 2}));
}

TEST_CASE("property: the theory/class correspondence is an order-reversing bijection") {
  for (const auto& a : {make_kA2(), make_ss2(), make_loc2()}) {
    ModuleCategory cat(a);
    const auto all = all_torsion_theories(cat);
    for (const auto& t : all) {
      const auto c = injective_class_of(cat, t);
      CHECK(torsion_theory_of_class(cat, c) == t);
      CHECK(injective_class_of(cat, torsion_theory_of_class(cat, c)) == c);
      for (auto g : members(c.generators, c.num_simples)) {
        CHECK(cat.is_injective(cat.injective(g)));
        CHECK(is_torsion_free(cat, cat.injective(g), t));
      }
      for (const auto& u : all) {
        if ((t.sigma & u.sigma) == t.sigma) {
          const auto cu = injective_class_of(cat, u);
          CHECK((cu.generators & c.generators) == cu.generators);
        }
      }
    }
  }
}

TEST_CASE("I-monomorphisms") {
  KA2 k;
  const auto iota = k.cat.hom_space(k.m.S2, k.m.I2).at(0);
  const auto pi = k.cat.hom_space(k.m.I2, k.m.S1).at(0);
  CHECK(is_I_mono(k.cat, iota, k.t1));
  CHECK(is_I_mono(k.cat, pi, k.t2));
  CHECK_FALSE(is_I_mono(k.cat, pi, k.t1));
}

TEST_CASE("property: both I-mono criteria agree on every morphism among small fixtures") {
  for (const auto& a : {make_kA2(), make_ss2(), make_loc2()}) {
    ModuleCategory cat(a);
    std::vector<Module> mods{zero_module(a)};
    for (const auto& m : standard_battery(cat)) {
      if (m.dim <= 3) mods.push_back(m);
    }
    for (const auto& t : all_torsion_theories(cat)) {
      for (const auto& x : mods) {
        for (const auto& y : mods) {
          const auto basis = cat.hom_basis(x, y);
          std::vector<std::size_t> c(basis.size(), 0);
          while (true) {
            Matrix f(cat.p(), y.dim, x.dim);
            for (std::size_t i = 0; i < basis.size(); ++i) f = f + basis[i].scaled(static_cast<la::Residue>(c[i]));
            CHECK_NOTHROW(is_I_mono(cat, Morphism{x, y, f}, t));
            std::size_t i = 0;
            while (i < c.size() && ++c[i] == cat.p()) c[i++] = 0;
            if (i == c.size()) break;
          }
        }
      }
    }
  }
}

TEST_CASE("localization") {
  KA2 k;
  const auto l = localize(k.cat, k.m.S2, k.t1);
  CHECK(k.cat.isomorphic(l.local, k.m.I2));
  CHECK(is_injective_map(l.unit));
  CHECK(k.cat.isomorphic(quotient_module(l.local, l.unit.f).module, k.m.S1));
  CHECK(localize(k.cat, k.m.S1, k.t1).local.dim == 0);
  const auto li = localize(k.cat, k.m.I2, k.t1);
  CHECK(li.local.action == k.m.I2.action);
  CHECK(li.unit.f.is_identity());
}

TEST_CASE("property: localization contracts on fixture modules") {
  for (const auto& a : {make_kA2(), make_ss2(), make_loc2()}) {
    ModuleCategory cat(a);
    auto mods = standard_battery(cat);
    mods.push_back(zero_module(a));
    for (const auto& t : all_torsion_theories(cat)) {
      for (const auto& m : mods) {
        const auto l = localize(cat, m, t);
        CHECK(morphism_problem(l.unit).empty());
        CHECK(is_local(cat, l.local, t));
        CHECK(la::same_span(la::kernel(l.unit.f), torsion_submodule(cat, m, t).inclusion.f));
        CHECK(is_torsion(cat, quotient_module(l.local, l.unit.f).module, t));
        CHECK(cat.isomorphic(localize(cat, l.local, t).local, l.local));
        CHECK(cat.isomorphic(localize(cat, torsion_free_quotient(cat, m, t).module, t).local, l.local));
        if (is_torsion(cat, m, t)) CHECK(l.local.dim == 0);
        if (is_local(cat, m, t)) CHECK(cat.isomorphic(l.local, m));
      }
    }
  }
}

TEST_CASE("quotient hom-spaces") {
  KA2 k;
  CHECK(hom_quotient(k.cat, k.m.S2, k.m.S2, k.t1).size() == 1);
  for (const auto& n : fixture_modules(k)) CHECK(hom_quotient(k.cat, k.m.S1, n, k.t1).empty());
  CHECK(hom_quotient(k.cat, k.m.I2, k.m.I2, k.t1).size() == 1);
}

TEST_CASE("property: quotient hom dimension is invariant under torsion-free quotients and localization") {
  KA2 k;
  const auto mods = fixture_modules(k);
  for (const auto& t : all_torsion_theories(k.cat)) {
    for (const auto& m : mods) {
      for (const auto& n : mods) {
        const std::size_t d = hom_quotient(k.cat, m, n, t).size();
        CHECK(hom_quotient(k.cat, torsion_free_quotient(k.cat, m, t).module,
                           torsion_free_quotient(k.cat, n, t).module, t)
                  .size() == d);
        CHECK(hom_quotient(k.cat, localize(k.cat, m, t).local, localize(k.cat, n, t).local, t).size() == d);
      }
    }
  }
}

TEST_CASE("spectrum partitions") {
  KA2 k;
  auto s1 = spectrum_partition(k.cat, k.t1);
  CHECK(s1.specialization == 1);
  CHECK(s1.generalization == 2);
  auto s0 = spectrum_partition(k.cat, k.t0);
  CHECK(s0.specialization == 0);
  CHECK(s0.generalization == 3);
  auto s2 = spectrum_partition(k.cat, k.t2);
  CHECK(s2.specialization == 2);
  CHECK(s2.generalization == 1);
}

TEST_CASE("property: partitions are injective and disjoint") {
  for (const auto& a : {make_kA2(), make_ss2(), make_loc2()}) {
    ModuleCategory cat(a);
    std::vector<SimpleSet> seen;
    for (const auto& t : all_torsion_theories(cat)) {
      const auto sp = spectrum_partition(cat, t);
      CHECK((sp.specialization & sp.generalization) == 0);
      CHECK((sp.specialization | sp.generalization) == full_set(cat.num_simples()));
      for (auto s : seen) CHECK(s != sp.specialization);
      seen.push_back(sp.specialization);
    }
  }
}

TEST_CASE("specialization preorder") {
  KA2 k;
  const auto rel = specialization_preorder(k.cat);
  CHECK(rel == std::vector<std::vector<bool>>{{true, true}, {false, true}});
  ModuleCategory ss(make_ss2());
  CHECK(specialization_preorder(ss) == std::vector<std::vector<bool>>{{true, false}, {false, true}});
  ModuleCategory lc(make_loc2());
  CHECK(specialization_preorder(lc) == std::vector<std::vector<bool>>{{true}});
  for (const auto& t : all_torsion_theories(ss)) {
    CHECK(generalization_closed(specialization_preorder(ss), spectrum_partition(ss, t).generalization));
  }
}

TEST_CASE("composition of theories") {
  KA2 k;
  CHECK(compose_tt(k.t1, 2) == k.tw);
  CHECK(compose_tt(k.t2, 0) == k.t2);
  CHECK(compose_tt(k.t0, 1) == k.t1);
  try {
    compose_tt(k.t1, 1);
    FAIL("expected OVERLAP");
  } catch (const relhom::Error& e) {
    CHECK(e.code() == relhom::ErrorCode::Overlap);
  }
}

TEST_CASE("property: composed torsion is torsion of the localization") {
  KA2 k;
  for (const auto& t : all_torsion_theories(k.cat)) {
    for (SimpleSet extra = 0; extra < 4; ++extra) {
      if (extra & t.sigma) continue;
      const auto c = compose_tt(t, extra);
      for (const auto& m : fixture_modules(k)) {
        CHECK(is_torsion(k.cat, m, c) == is_torsion(k.cat, localize(k.cat, m, t).local, TorsionTheory{extra | t.sigma, 2}));
      }
    }
  }
}

TEST_CASE("relative Gabriel dimension") {
  KA2 k;
  CHECK(rel_gdim(k.cat, k.m.S1, k.t1) == -1);
  CHECK(rel_gdim(k.cat, k.m.S2, k.t1) == 0);
  for (const auto& t : all_torsion_theories(k.cat)) CHECK(rel_gdim(k.cat, zero_module(k.a), t) == -1);
}

TEST_CASE("property: stable theories split injectives") {
  for (const auto& a : {make_kA2(), make_ss2(), make_loc2()}) {
    ModuleCategory cat(a);
    std::vector<Module> injectives;
    for (std::size_t i = 0; i < cat.num_simples(); ++i) injectives.push_back(cat.injective(i));
    for (std::size_t i = 0; i < cat.num_simples(); ++i) {
      for (std::size_t j = i; j < cat.num_simples(); ++j) injectives.push_back(direct_sum(cat.injective(i), cat.injective(j)));
    }
    for (const auto& t : all_torsion_theories(cat)) {
      if (!is_stable(cat, t)) continue;
      for (const auto& e : injectives) {
        const Module split = direct_sum(torsion_submodule(cat, e, t).module, torsion_free_quotient(cat, e, t).module);
        CHECK(cat.isomorphic(e, split));
      }
    }
  }
}

TEST_CASE("property: localization preserves finite sums of local modules") {
  KA2 k;
  for (const auto& t : all_torsion_theories(k.cat)) {
    std::vector<Module> locals;
    for (const auto& m : fixture_modules(k)) {
      if (m.dim > 0 && is_local(k.cat, m, t)) locals.push_back(m);
    }
    for (const auto& x : locals) {
      for (const auto& y : locals) {
        const Module s = direct_sum(x, y);
        CHECK(k.cat.isomorphic(localize(k.cat, s, t).local, s));
      }
    }
  }
}

TEST_CASE("exactness on the battery and the hypothesis audit") {
  KA2 k;
  const auto battery = standard_battery(k.cat);
  for (const auto& t : all_torsion_theories(k.cat)) CHECK(exactness_on_battery(k.cat, t, battery).exact_on_battery);
  CHECK(prime_theory(k.cat, 0) == k.t2);
  CHECK(prime_theory(k.cat, 1) == k.t1);
  auto audit = audit_hypotheses(k.cat, {k.t1}, battery);
  CHECK(audit.hyp1);
  CHECK(audit.hyp2);
  CHECK(audit.hyp3);
  CHECK_FALSE(audit_hypotheses(k.cat, {k.t2}, battery).hyp1);
}
