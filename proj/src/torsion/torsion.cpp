#include "relhom/torsion/torsion.hpp"

#include <sstream>

#include "relhom/error.hpp"

namespace relhom::tors {

namespace la = relhom::la;
using alg::QuotientModule;
using alg::Submodule;

std::vector<std::size_t> members(SimpleSet s, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (has(s, i)) out.push_back(i);
  }
  return out;
}

std::string set_string(SimpleSet s, std::size_t n) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto i : members(s, n)) {
    os << (first ? "" : ",") << 'S' << (i + 1);
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<TorsionTheory> all_torsion_theories(const ModuleCategory& cat) {
  const std::size_t n = cat.num_simples();
  if (n >= 20) throw Error(ErrorCode::InvalidInput, "too many simples to enumerate theories");
  std::vector<TorsionTheory> out;
  for (SimpleSet s = 0; s <= full_set(n); ++s) out.push_back({s, n});
  return out;
}

TorsionTheory trivial_theory(const ModuleCategory& cat) { return {0, cat.num_simples()}; }
TorsionTheory improper_theory(const ModuleCategory& cat) { return {full_set(cat.num_simples()), cat.num_simples()}; }

bool is_torsion(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  const auto f = cat.composition_factors(m);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] && !t.torsion_simple(i)) return false;
  }
  return true;
}

bool is_torsion_free(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  const auto f = cat.socle_multiplicities(m);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] && t.torsion_simple(i)) return false;
  }
  return true;
}

bool is_local(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  if (!is_torsion_free(cat, m, t)) return false;
  const auto [e, iota] = cat.injective_envelope(m);
  return is_torsion_free(cat, alg::quotient_module(e, iota.f).module, t);
}

Submodule torsion_submodule(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  Matrix current(cat.p(), m.dim, 0);
  while (true) {
    const QuotientModule q = alg::quotient_module(m, current);
    const Matrix soc = cat.socle(q.module).inclusion.f;
    std::vector<Matrix> parts{Matrix(cat.p(), q.module.dim, 0)};
    for (std::size_t i = 0; i < cat.num_simples(); ++i) {
      if (t.torsion_simple(i)) parts.push_back(q.module.act(cat.idempotent(i)) * soc);
    }
    const Matrix piece = alg::spin(q.module, la::hstack(parts));
    if (piece.cols() == 0) return alg::submodule(m, current);
    current = la::span_basis(la::hstack(current, q.section * piece));
  }
}

QuotientModule torsion_free_quotient(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  return alg::quotient_module(m, torsion_submodule(cat, m, t).inclusion.f);
}

TorsionTheory cogenerated_by(const ModuleCategory& cat, const Module& e) {
  if (!cat.is_injective(e)) throw Error(ErrorCode::NotInjective, "cogenerating module is not injective");
  TorsionTheory t{0, cat.num_simples()};
  for (std::size_t i = 0; i < cat.num_simples(); ++i) {
    if (cat.hom_dim(cat.simple(i), e) == 0) t.sigma |= SimpleSet{1} << i;
  }
  return t;
}

bool is_stable(const ModuleCategory& cat, const TorsionTheory& t) {
  for (std::size_t i = 0; i < cat.num_simples(); ++i) {
    if (t.torsion_simple(i) && !is_torsion(cat, cat.injective(i), t)) return false;
  }
  return true;
}

InjectiveClass injective_class_of(const ModuleCategory& cat, const TorsionTheory& t) {
  InjectiveClass c{0, cat.num_simples()};
  for (std::size_t i = 0; i < cat.num_simples(); ++i) {
    if (torsion_submodule(cat, cat.injective(i), t).module.dim == 0) c.generators |= SimpleSet{1} << i;
  }
  return c;
}

TorsionTheory torsion_theory_of_class(const ModuleCategory& cat, const InjectiveClass& c) {
  TorsionTheory t{0, cat.num_simples()};
  for (std::size_t i = 0; i < cat.num_simples(); ++i) {
    bool orthogonal = true;
    for (auto g : members(c.generators, c.num_simples)) {
      if (cat.hom_dim(cat.simple(i), cat.injective(g)) != 0) orthogonal = false;
    }
    if (orthogonal) t.sigma |= SimpleSet{1} << i;
  }
  return t;
}

bool in_class(const ModuleCategory& cat, const Module& e, const InjectiveClass& c) {
  if (!cat.is_injective(e)) return false;
  const auto mult = cat.socle_multiplicities(e);
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] && !has(c.generators, i)) return false;
  }
  return true;
}

bool in_injective_class(const ModuleCategory& cat, const Module& e, const TorsionTheory& t) {
  return cat.is_injective(e) && is_torsion_free(cat, e, t);
}

bool restriction_criterion(const ModuleCategory& cat, const Morphism& phi, const InjectiveClass& c) {
  for (auto g : members(c.generators, c.num_simples)) {
    const Module& e = cat.injective(g);
    const auto from_target = cat.hom_basis(phi.target, e);
    const std::size_t want = cat.hom_dim(phi.source, e);
    if (want == 0) continue;
    if (from_target.empty()) return false;
    std::vector<Matrix> images;
    for (const auto& h : from_target) images.push_back(la::vec(h * phi.f));
    if (la::rank(la::hstack(images)) != want) return false;
  }
  return true;
}

bool is_I_mono(const ModuleCategory& cat, const Morphism& phi, const TorsionTheory& t) {
  const bool kernel_torsion = is_torsion(cat, alg::morphism_parts(phi).kernel.module, t);
  const bool restriction = restriction_criterion(cat, phi, injective_class_of(cat, t));
  if (kernel_torsion != restriction) {
    throw Error(ErrorCode::CrosscheckFailed, "torsion-kernel and restriction criteria disagree for theory " +
                                                 set_string(t.sigma, t.num_simples));
  }
  return kernel_torsion;
}

Localization localize(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  const QuotientModule mq = torsion_free_quotient(cat, m, t);
  const auto [e, iota] = cat.injective_envelope(mq.module);
  const QuotientModule c = alg::quotient_module(e, iota.f);
  const Matrix tc = torsion_submodule(cat, c.module, t).inclusion.f;
  const Submodule l = alg::submodule(e, la::hstack(iota.f, c.section * tc));
  const Matrix coords = l.inclusion.f.cols() ? la::left_inverse(l.inclusion.f) : Matrix(cat.p(), 0, e.dim);
  return {l.module, Morphism{m, l.module, coords * iota.f * mq.projection.f}};
}

Morphism localize_morphism(const ModuleCategory& cat, const Morphism& f, const TorsionTheory& t) {
  const Localization lm = localize(cat, f.source, t);
  const Localization ln = localize(cat, f.target, t);
  const Matrix rhs = ln.unit.f * f.f;
  const auto basis = cat.hom_basis(lm.local, ln.local);
  if (basis.empty()) {
    if (!rhs.is_zero()) throw Error(ErrorCode::CrosscheckFailed, "localized morphism does not exist");
    return alg::zero_morphism(lm.local, ln.local);
  }
  std::vector<Matrix> cols;
  for (const auto& h : basis) cols.push_back(la::vec(h * lm.unit.f));
  auto c = la::solve(la::hstack(cols), la::vec(rhs));
  if (!c) throw Error(ErrorCode::CrosscheckFailed, "localized morphism does not exist");
  Matrix g(cat.p(), ln.local.dim, lm.local.dim);
  for (std::size_t k = 0; k < basis.size(); ++k) g = g + basis[k].scaled(c->at(k, 0));
  return {lm.local, ln.local, g};
}

std::vector<Matrix> hom_quotient(const ModuleCategory& cat, const Module& m, const Module& n,
                                 const TorsionTheory& t) {
  return cat.hom_basis(localize(cat, m, t).local, localize(cat, n, t).local);
}

SpectrumPartition spectrum_partition(const ModuleCategory& cat, const TorsionTheory& t) {
  SpectrumPartition sp;
  for (std::size_t i = 0; i < cat.num_simples(); ++i) {
    if (torsion_submodule(cat, cat.injective(i), t).module.dim != 0) {
      sp.specialization |= SimpleSet{1} << i;
    } else {
      sp.generalization |= SimpleSet{1} << i;
    }
  }
  return sp;
}

std::vector<std::vector<bool>> specialization_preorder(const ModuleCategory& cat) {
  const std::size_t n = cat.num_simples();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = i == j || cat.hom_dim(cat.injective(j), cat.injective(i)) != 0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) rel[i][j] = rel[i][j] || (rel[i][k] && rel[k][j]);
    }
  }
  return rel;
}

bool all_theories_stable(const ModuleCategory& cat) {
  for (const auto& t : all_torsion_theories(cat)) {
    if (!is_stable(cat, t)) return false;
  }
  return true;
}

bool generalization_closed(const std::vector<std::vector<bool>>& rel, SimpleSet g) {
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (!has(g, i)) continue;
    for (std::size_t j = 0; j < rel.size(); ++j) {
      if (rel[j][i] && !has(g, j)) return false;
    }
  }
  return true;
}

TorsionTheory compose_tt(const TorsionTheory& t, SimpleSet extra) {
  if (t.sigma & extra) throw Error(ErrorCode::Overlap, "second simple set meets the torsion simples of the first");
  if (extra & ~full_set(t.num_simples)) throw Error(ErrorCode::InvalidInput, "simple index out of range");
  return {t.sigma | extra, t.num_simples};
}

int rel_gdim(const ModuleCategory& cat, const Module& m, const TorsionTheory& t) {
  return is_torsion(cat, m, t) ? -1 : 0;
}

TorsionTheory prime_theory(const ModuleCategory& cat, std::size_t i) { return cogenerated_by(cat, cat.injective(i)); }

std::vector<Module> standard_battery(const ModuleCategory& cat) {
  std::vector<Module> base;
  auto add_new = [&](std::vector<Module>& into, const Module& m) {
    for (const auto& x : into) {
      if (cat.isomorphic(x, m)) return;
    }
    into.push_back(m);
  };
  for (std::size_t i = 0; i < cat.num_simples(); ++i) add_new(base, cat.simple(i));
  for (std::size_t i = 0; i < cat.num_simples(); ++i) add_new(base, cat.projective(i));
  for (std::size_t i = 0; i < cat.num_simples(); ++i) add_new(base, cat.injective(i));
  std::vector<Module> out = base;
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i; j < base.size(); ++j) add_new(out, alg::direct_sum(base[i], base[j]));
  }
  return out;
}

std::vector<ShortExact> battery_sequences(const ModuleCategory& cat, const std::vector<Module>& battery) {
  std::vector<ShortExact> out;
  auto push_mono = [&](const Morphism& mono) {
    const QuotientModule c = alg::quotient_module(mono.target, mono.f);
    out.push_back({mono, c.projection});
  };
  for (const auto& m : battery) {
    push_mono(cat.socle(m).inclusion);
    push_mono(cat.radical(m).inclusion);
  }
  for (const auto& a : battery) {
    for (const auto& b : battery) {
      for (const auto& f : cat.hom_basis(a, b)) {
        if (la::rank(f) == a.dim && a.dim > 0) push_mono({a, b, f});
      }
      if (a.dim + b.dim <= 6) push_mono(alg::sum_injection({a, b}, 0));
    }
  }
  return out;
}

ExactnessVerdict exactness_on_battery(const ModuleCategory& cat, const TorsionTheory& t,
                                      const std::vector<Module>& battery) {
  std::size_t index = 0;
  for (const auto& seq : battery_sequences(cat, battery)) {
    const Morphism lf = localize_morphism(cat, seq.mono, t);
    const Morphism lg = localize_morphism(cat, seq.epi, t);
    const std::size_t rf = la::rank(lf.f), rg = la::rank(lg.f);
    const bool mono = rf == lf.source.dim;
    const bool middle = (lg.f * lf.f).is_zero() && rf == lg.source.dim - rg;
    const bool epi = rg == lg.target.dim;
    if (!(mono && middle && epi)) {
      std::ostringstream os;
      os << "sequence #" << index << " with dimensions (" << seq.mono.source.dim << "," << seq.mono.target.dim << ","
         << seq.epi.target.dim << ") localizes to (" << lf.source.dim << "," << lf.target.dim << ","
         << lg.target.dim << ") and is not exact";
      return {false, os.str()};
    }
    ++index;
  }
  return {};
}

HypothesisAudit audit_hypotheses(const ModuleCategory& cat, const std::vector<TorsionTheory>& involved,
                                 const std::vector<Module>& battery) {
  HypothesisAudit audit;
  audit.hyp1 = true;
  for (const auto& t : involved) {
    if (!is_stable(cat, t)) {
      audit.hyp1 = false;
      audit.hyp1_detail = "theory " + set_string(t.sigma, t.num_simples) + " is not stable";
      break;
    }
  }
  audit.hyp3 = true;
  for (std::size_t i = 0; i < cat.num_simples(); ++i) {
    const auto v = exactness_on_battery(cat, prime_theory(cat, i), battery);
    if (!v.exact_on_battery) {
      audit.hyp3 = false;
      audit.hyp3_detail = "prime theory of E(S" + std::to_string(i + 1) + "): " + v.witness;
      break;
    }
  }
  if (audit.hyp3) audit.hyp3_detail = "EXACT_ON_BATTERY (under-approximation of exactness)";
  return audit;
}

}  // namespace relhom::tors
