#include "relhom/cli/run.hpp"

#include <algorithm>
#include <sstream>

#include "relhom/error.hpp"
#include "relhom/localcoh/localcoh.hpp"
#include "relhom/torsion/checks.hpp"
#include "relhom/towers/towers.hpp"

namespace relhom::cli {

namespace {

using alg::Module;
using chx::Complex;
using report::CheckRecord;
using tors::TorsionTheory;

struct NamedTheory {
  std::string name;
  TorsionTheory t;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::Usage, what); }

std::vector<NamedTheory> all_on_algebra(const LoadedSpec& ls) {
  std::vector<NamedTheory> out;
  for (const auto& t : tors::all_torsion_theories(*ls.cat)) out.push_back({tors::set_string(t.sigma, t.num_simples), t});
  return out;
}

std::vector<NamedTheory> selected_theories(const LoadedSpec& ls, const Options& o) {
  if (!o.tau.empty()) {
    const auto it = ls.theories.find(o.tau);
    if (it == ls.theories.end()) usage("unknown torsion theory '" + o.tau + "'");
    return {{it->first, it->second}};
  }
  if (ls.theories.empty()) return all_on_algebra(ls);
  std::vector<NamedTheory> out;
  for (const auto& [name, t] : ls.theories) out.push_back({name, t});
  return out;
}

json theory_json(const NamedTheory& nt) {
  return json{{"name", nt.name}, {"torsion_simples", tors::members(nt.t.sigma, nt.t.num_simples)}};
}

json describe(const LoadedSpec& ls, const Module& m) {
  json j{{"dim", m.dim}, {"composition_factors", ls.cat->composition_factors(m)}};
  if (m.dim == 0) {
    j["isomorphic_to"] = "0";
    return j;
  }
  for (const auto& [name, d] : ls.modules) {
    if (ls.cat->isomorphic(d, m)) {
      j["isomorphic_to"] = name;
      return j;
    }
  }
  for (std::size_t i = 0; i < ls.cat->num_simples(); ++i) {
    if (ls.cat->isomorphic(ls.cat->simple(i), m)) {
      j["isomorphic_to"] = "simple[" + std::to_string(i) + "]";
      return j;
    }
  }
  j["isomorphic_to"] = nullptr;
  return j;
}

const Module& module_arg(const LoadedSpec& ls, const Options& o) {
  if (o.module.empty()) usage(o.subcommand + " needs --module");
  const auto it = ls.modules.find(o.module);
  if (it == ls.modules.end()) usage("unknown module '" + o.module + "'");
  return it->second;
}

Complex complex_arg(const LoadedSpec& ls, const Options& o) {
  if (o.module.empty()) usage(o.subcommand + " needs --module naming a module or complex");
  if (const auto it = ls.complexes.find(o.module); it != ls.complexes.end()) return it->second;
  if (const auto it = ls.modules.find(o.module); it != ls.modules.end()) return chx::stalk(it->second, 0);
  usage("unknown module or complex '" + o.module + "'");
}

std::string suffix(const NamedTheory& nt) { return "[" + nt.name + "]"; }

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

// Standard battery followed by declared modules not already present.
std::vector<std::pair<std::string, Module>> module_battery(const LoadedSpec& ls, std::size_t max_dim) {
  std::vector<std::pair<std::string, Module>> out;
  auto add = [&](const std::string& label, const Module& m) {
    if (m.dim == 0 || m.dim > max_dim) return;
    for (const auto& [_, x] : out) {
      if (ls.cat->isomorphic(x, m)) return;
    }
    out.emplace_back(label, m);
  };
  const auto base = tors::standard_battery(*ls.cat);
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::string label = "battery[" + std::to_string(i) + "]";
    for (const auto& [name, d] : ls.modules) {
      if (ls.cat->isomorphic(d, base[i])) {
        label = name;
        break;
      }
    }
    add(label, base[i]);
  }
  for (const auto& [name, d] : ls.modules) add(name, d);
  return out;
}

std::vector<Module> modules_only(const std::vector<std::pair<std::string, Module>>& named) {
  std::vector<Module> out;
  for (const auto& [_, m] : named) out.push_back(m);
  return out;
}

std::vector<Complex> with_declared(const LoadedSpec& ls, std::vector<Complex> battery, long bottom) {
  for (const auto& [_, x] : ls.complexes) {
    if (x.lo >= bottom) battery.push_back(x);
  }
  return battery;
}

json run_simples(const LoadedSpec& ls) {
  json out = json::array();
  for (std::size_t i = 0; i < ls.cat->num_simples(); ++i) {
    out.push_back(json{{"index", i},
                       {"simple", describe(ls, ls.cat->simple(i))},
                       {"projective_cover", describe(ls, ls.cat->projective(i))},
                       {"injective_envelope", describe(ls, ls.cat->injective(i))}});
  }
  return json{{"simples", std::move(out)}};
}

json run_spectrum(const LoadedSpec& ls, const Options& o) {
  const std::size_t s = ls.cat->num_simples();
  const auto rel = tors::specialization_preorder(*ls.cat);
  json pre = json::array();
  for (const auto& row : rel) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    pre.push_back(std::move(r));
  }
  json parts = json::array();
  for (const auto& nt : selected_theories(ls, o)) {
    const auto sp = tors::spectrum_partition(*ls.cat, nt.t);
    parts.push_back(json{{"theory", theory_json(nt)},
                         {"specialization", tors::members(sp.specialization, s)},
                         {"generalization", tors::members(sp.generalization, s)}});
  }
  return json{{"specialization_preorder", std::move(pre)}, {"partitions", std::move(parts)}};
}

json run_tors(const LoadedSpec& ls) {
  const std::size_t s = ls.cat->num_simples();
  json out = json::array();
  for (const auto& t : tors::all_torsion_theories(*ls.cat)) {
    json declared = json::array();
    for (const auto& [name, d] : ls.theories) {
      if (d == t) declared.push_back(name);
    }
    bool prime = false;
    for (std::size_t i = 0; i < s; ++i) prime = prime || tors::prime_theory(*ls.cat, i) == t;
    out.push_back(json{{"torsion_simples", tors::members(t.sigma, s)},
                       {"declared_as", std::move(declared)},
                       {"stable", tors::is_stable(*ls.cat, t)},
                       {"prime", prime},
                       {"injective_class", tors::members(tors::injective_class_of(*ls.cat, t).generators, s)}});
  }
  return json{{"theories", std::move(out)}};
}

json run_localize(const LoadedSpec& ls, const Options& o, report::Report& rep) {
  static const char* kRef = "the localization is local and its unit has torsion kernel and cokernel";
  const Module& m = module_arg(ls, o);
  json out = json::array();
  for (const auto& nt : selected_theories(ls, o)) {
    const tors::Localization l = tors::localize(*ls.cat, m, nt.t);
    const alg::MorphismParts parts = alg::morphism_parts(l.unit);
    out.push_back(json{{"theory", theory_json(nt)},
                       {"local", describe(ls, l.local)},
                       {"unit", report::matrix_json(l.unit.f)},
                       {"kernel", describe(ls, parts.kernel.module)},
                       {"cokernel", describe(ls, parts.cokernel.module)}});
    const bool ok = tors::is_local(*ls.cat, l.local, nt.t) && tors::is_torsion(*ls.cat, parts.kernel.module, nt.t) &&
                    tors::is_torsion(*ls.cat, parts.cokernel.module, nt.t);
    rep.checks.push_back(report::verdict(ok, "localize.characterization" + suffix(nt), kRef,
                                         json{{"module", o.module}, {"local", describe(ls, l.local)}}));
  }
  return json{{"module", o.module}, {"localizations", std::move(out)}};
}

json run_gamma(const LoadedSpec& ls, const Options& o, report::Report& rep) {
  static const char* kRes = "minimal injective resolutions are exact and minimal";
  static const char* kZero = "the zeroth local cohomology is the torsion submodule";
  const Module& m = module_arg(ls, o);
  const long n = o.max_degree.value_or(4);
  if (n < 1) usage("--max-degree must be positive");
  const lc::Resolution r = lc::min_injective_resolution(*ls.cat, m, static_cast<std::size_t>(n));
  const std::string problem = lc::resolution_problem(*ls.cat, r);
  rep.checks.push_back(problem.empty() ? report::pass("gamma.resolution" , kRes, json{{"module", o.module}})
                                       : report::fail("gamma.resolution", kRes, json{{"problem", problem}}));
  json terms = json::array();
  for (const auto& e : r.terms) terms.push_back(describe(ls, e));
  json tables = json::array();
  for (const auto& nt : selected_theories(ls, o)) {
    json table = json::array();
    const auto g = lc::gamma_all(*ls.cat, r, nt.t);
    for (std::size_t k = 0; k < g.size(); ++k) {
      json row = describe(ls, g[k]);
      row["degree"] = k;
      table.push_back(std::move(row));
    }
    tables.push_back(json{{"theory", theory_json(nt)}, {"gamma", std::move(table)}});
    const Module t0 = tors::torsion_submodule(*ls.cat, m, nt.t).module;
    rep.checks.push_back(report::verdict(!g.empty() && ls.cat->isomorphic(g[0], t0), "gamma.degree_zero" + suffix(nt),
                                         kZero, json{{"gamma0", describe(ls, g.empty() ? t0 : g[0])},
                                                     {"torsion", describe(ls, t0)}}));
  }
  return json{{"module", o.module}, {"max_degree", n}, {"resolution", std::move(terms)}, {"tables", std::move(tables)}};
}

long default_depth(const Complex& x, const Options& o) {
  const long span = x.hi() - x.lo;
  return o.depth.value_or(std::max<long>(3, span + 1));
}

json run_resolve(const LoadedSpec& ls, const Options& o, report::Report& rep) {
  static const char* kRef = "the replacement map is a cofibration and a weak equivalence into a fibrant complex";
  const Complex x = complex_arg(ls, o);
  const long depth = default_depth(x, o);
  if (depth <= x.hi() - x.lo) usage("--depth must exceed the width of the complex");
  json out = json::array();
  for (const auto& nt : selected_theories(ls, o)) {
    const chx::FibrantReplacement fr = chx::fibrant_replacement(*ls.cat, x, nt.t, depth);
    json terms = json::array();
    for (long i = fr.r.lo; i <= fr.r.hi(); ++i) {
      json t = describe(ls, fr.r.term(i));
      t["degree"] = i;
      terms.push_back(std::move(t));
    }
    json cone = json::array();
    const Complex c = chx::cone(fr.rho);
    for (long i = c.lo; i <= fr.certified_top; ++i) {
      json h = describe(ls, chx::cohomology(c, i));
      h["degree"] = i;
      cone.push_back(std::move(h));
    }
    out.push_back(json{{"theory", theory_json(nt)},
                       {"replacement", std::move(terms)},
                       {"cone_cohomology", std::move(cone)},
                       {"certified_top", fr.certified_top}});
    CheckRecord rec = guarded("resolve.contract" + suffix(nt), kRef, [&] {
      const bool c_ok = chx::in_C(*ls.cat, fr.rho, nt.t, x.lo);
      const bool w_ok = chx::is_tau_weq(*ls.cat, fr.rho, nt.t, fr.certified_top);
      const bool f_ok = chx::is_fibrant(*ls.cat, fr.r, nt.t, fr.certified_top);
      return report::verdict(c_ok && w_ok && f_ok, "resolve.contract" + suffix(nt), kRef,
                             json{{"cofibration", c_ok}, {"weak_equivalence", w_ok}, {"fibrant", f_ok}});
    });
    rec.certified_range = std::make_pair(x.lo, fr.certified_top);
    rep.checks.push_back(std::move(rec));
  }
  return json{{"complex", o.module}, {"depth", depth}, {"replacements", std::move(out)}};
}

json run_factor(const LoadedSpec& ls, const Options& o, report::Report& rep) {
  static const char* kDisk = "every map factors as a cofibration followed by an acyclic fibration";
  static const char* kCocyl = "every map factors as an acyclic cofibration followed by a fibration";
  const Complex x = complex_arg(ls, o);
  const long depth = default_depth(x, o);
  const long bottom = x.lo;
  const chx::ComplexMorphism phi = chx::zero_map(x, chx::zero_complex(ls.algebra));
  auto middle = [&](const chx::Factorization& f) {
    json terms = json::array();
    for (long i = f.z.lo; i <= f.z.hi(); ++i) {
      json t = describe(ls, f.z.term(i));
      t["degree"] = i;
      terms.push_back(std::move(t));
    }
    return terms;
  };
  json out = json::array();
  for (const auto& nt : selected_theories(ls, o)) {
    json entry{{"theory", theory_json(nt)}};
    rep.checks.push_back(guarded("factor.cofibration_acyclic_fibration" + suffix(nt), kDisk, [&] {
      const chx::Factorization f = chx::factor_disk(*ls.cat, phi, nt.t, bottom);
      entry["cofibration_then_acyclic_fibration"] = middle(f);
      const auto cf = chx::class_membership(*ls.cat, f.c, nt.t, bottom, ls.doc.convention, f.certified_top);
      const auto bf = chx::class_membership(*ls.cat, f.b, nt.t, bottom, ls.doc.convention, f.certified_top);
      const bool ok = cf.in_C && bf.in_B && bf.in_W && chx::equal_maps(chx::compose(f.b, f.c), phi);
      return report::verdict(ok, "factor.cofibration_acyclic_fibration" + suffix(nt), kDisk,
                             json{{"c_in_C", cf.in_C}, {"b_in_B", bf.in_B}, {"b_in_W", bf.in_W}});
    }));
    rep.checks.push_back(guarded("factor.acyclic_cofibration_fibration" + suffix(nt), kCocyl, [&] {
      const chx::Factorization f = chx::factor_cocyl(*ls.cat, phi, nt.t, depth);
      entry["acyclic_cofibration_then_fibration"] = middle(f);
      const auto cf = chx::class_membership(*ls.cat, f.c, nt.t, bottom, ls.doc.convention, f.certified_top);
      const auto bf = chx::class_membership(*ls.cat, f.b, nt.t, bottom, ls.doc.convention, f.certified_top);
      const bool ok = cf.in_C && cf.in_W && bf.in_B && chx::equal_maps(chx::compose(f.b, f.c), phi);
      return report::verdict(ok, "factor.acyclic_cofibration_fibration" + suffix(nt), kCocyl,
                             json{{"c_in_C", cf.in_C}, {"c_in_W", cf.in_W}, {"b_in_B", bf.in_B}});
    }));
    out.push_back(std::move(entry));
  }
  return json{{"complex", o.module}, {"depth", depth}, {"factorizations", std::move(out)}};
}

void run_check(const LoadedSpec& ls, const Options& o, report::Report& rep) {
  const std::string& suite = o.suite;
  if (suite.empty()) usage("check needs --suite");
  if (std::find(suites().begin(), suites().end(), suite) == suites().end()) usage("unknown suite '" + suite + "'");
  const auto& cat = *ls.cat;
  const std::size_t cap = static_cast<std::size_t>(o.max_degree.value_or(5));
  const long depth = o.depth.value_or(3);
  if (cap < 1 || depth < 1) usage("--max-degree and --depth must be positive");

  if (suite == "bijection") {
    const auto theories = o.tau.empty() ? all_on_algebra(ls) : selected_theories(ls, o);
    for (const auto& nt : theories) rep.checks.push_back(tors::bijection_report(cat, nt.t));
    return;
  }
  const auto theories = selected_theories(ls, o);
  if (suite == "i-mono") {
    std::vector<Module> mods = tors::small_modules(cat, 3);
    for (const auto& [name, m] : ls.modules) {
      if (m.dim > 3 || m.dim == 0) continue;
      bool dup = false;
      for (const auto& x : mods) dup = dup || cat.isomorphic(x, m);
      if (!dup) mods.push_back(m);
    }
    for (const auto& nt : theories) {
      rep.checks.push_back(guarded("i_mono.criteria_agree" + suffix(nt), "a map is a class monomorphism iff its kernel is torsion",
                                   [&] { return tors::i_mono_report(cat, nt.t, mods); }));
    }
  } else if (suite == "localization") {
    const auto mods = modules_only(module_battery(ls, 4));
    for (const auto& nt : theories) rep.append(tors::localization_report(cat, nt.t, mods));
  } else if (suite == "coho1") {
    const auto mods = module_battery(ls, 1000);
    for (const auto& nt : theories) {
      for (const auto& [label, m] : mods) rep.append(lc::coho1_report(cat, m, nt.t, cap, label));
    }
  } else if (suite == "vanishing") {
    const auto mods = modules_only(module_battery(ls, 1000));
    for (const auto& nt : theories) rep.append(lc::vanishing_report(cat, nt.t, mods, cap));
  } else if (suite == "coni") {
    const auto battery = with_declared(ls, chx::complex_battery(cat, -2, 2), -2);
    for (const auto& nt : theories) {
      rep.checks.push_back(guarded("weak_equivalence.criteria_agree" + suffix(nt),
                                   "cone cohomology is torsion iff Hom into the class injectives is acyclic",
                                   [&] { return chx::weak_equivalence_report(cat, nt.t, battery); }));
    }
  } else if (suite == "model") {
    const auto battery = with_declared(ls, chx::complex_battery(cat, 0, 2), 0);
    for (const auto& nt : theories) rep.append(chx::model_axiom_report(cat, nt.t, battery, 0, depth, ls.doc.convention));
  } else if (suite == "approximation") {
    const auto battery = with_declared(ls, chx::complex_battery(cat, -1, 1), -1);
    tow::ApproximationOptions ao;
    ao.tower_depth = static_cast<std::size_t>(depth);
    ao.replacement_depth = depth;
    ao.convention = ls.doc.convention;
    for (const auto& nt : theories) {
      rep.append(tow::tower_report(cat, nt.t, battery, static_cast<std::size_t>(depth)));
      rep.append(tow::verify_model_approximation(cat, nt.t, battery, ao));
    }
  }
}

std::string gamma_text(const json& result) {
  std::ostringstream os;
  os << "local cohomology of " << result["module"].get<std::string>() << "\n";
  for (const auto& t : result["tables"]) {
    os << "  " << t["theory"]["name"].get<std::string>() << ":";
    for (const auto& row : t["gamma"]) {
      os << "  G^" << row["degree"].get<std::size_t>() << " ";
      if (row["dim"].get<std::size_t>() == 0) {
        os << "= 0";
      } else if (row["isomorphic_to"].is_string()) {
        os << "~ " << row["isomorphic_to"].get<std::string>();
      } else {
        os << "dim " << row["dim"].get<std::size_t>();
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

Outcome run(const LoadedSpec& spec, const Options& opts) {
  Outcome out;
  out.report.tool_version = kToolVersion;
  out.report.input_digest = spec.digest;
  const std::string& s = opts.subcommand;
  if (s == "simples") {
    out.result = run_simples(spec);
  } else if (s == "spectrum") {
    out.result = run_spectrum(spec, opts);
  } else if (s == "tors") {
    out.result = run_tors(spec);
  } else if (s == "localize") {
    out.result = run_localize(spec, opts, out.report);
  } else if (s == "gamma") {
    out.result = run_gamma(spec, opts, out.report);
  } else if (s == "resolve") {
    out.result = run_resolve(spec, opts, out.report);
  } else if (s == "factor") {
    out.result = run_factor(spec, opts, out.report);
  } else if (s == "check") {
    run_check(spec, opts, out.report);
  } else {
    usage("unknown subcommand '" + s + "'");
  }
  return out;
}

std::string render(const Outcome& out, const Options& opts) {
  if (opts.json) {
    json j = report::to_json(out.report, opts.timing);
    if (!out.result.is_null()) j["result"] = out.result;
    return j.dump() + "\n";
  }
  std::string text;
  if (opts.subcommand == "gamma") {
    text = gamma_text(out.result);
  } else if (!out.result.is_null()) {
    text = out.result.dump(2) + "\n";
  }
  return text + report::to_text(out.report, opts.timing);
}

}  // namespace relhom::cli
