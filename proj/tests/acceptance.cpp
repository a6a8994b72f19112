// Acceptance gate: one PASS/FAIL line per criterion, exact arithmetic, pinned wall-clock limits.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "relhom/cli/run.hpp"
#include "relhom/localcoh/localcoh.hpp"
#include "relhom/torsion/checks.hpp"
#include "relhom/towers/towers.hpp"

namespace {

using namespace relhom;
using report::CheckRecord;
using report::Verdict;

// Seconds allowed per criterion, indexed by criterion number.
constexpr double kLimit[11] = {0, 1.0, 5.0, 1.0, 5.0, 10.0, 10.0, 1.0, 5.0, 20.0, 1.0};

const std::string kFixtures = RELHOM_FIXTURE_DIR;
const std::string kBinary = RELHOM_BINARY;

struct Result {
  bool ok = true;
  std::string detail;
};

void require(Result& r, bool cond, const std::string& what) {
  if (!cond && r.ok) {
    r.ok = false;
    r.detail = what;
  }
}

void require_no_fail(Result& r, const std::vector<CheckRecord>& recs, std::size_t* passes = nullptr) {
  for (const auto& c : recs) {
    require(r, c.verdict != Verdict::Fail, c.id + " " + c.witness.dump());
    if (passes) *passes += c.verdict == Verdict::Pass;
  }
}

void require_all_pass(Result& r, const std::vector<CheckRecord>& recs) {
  for (const auto& c : recs) require(r, c.verdict == Verdict::Pass, c.id + " " + c.witness.dump());
}

cli::LoadedSpec fixture(const std::string& name) { return cli::load(cli::parse_spec(kFixtures + "/" + name)); }

std::vector<tors::TorsionTheory> theories(const cli::LoadedSpec& ls) {
  return tors::all_torsion_theories(*ls.cat);
}

const tors::TorsionTheory& theory(const cli::LoadedSpec& ls, const std::string& name) { return ls.theories.at(name); }

int exit_code_of(const std::string& args) {
  const std::string cmd = "'" + kBinary + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Result bijection() {
  Result r;
  for (const char* f : {"kA2.json", "ss2.json", "loc2.json"}) {
    const auto ls = fixture(f);
    const auto& cat = *ls.cat;
    const auto all = theories(ls);
    require(r, all.size() == (std::size_t{1} << cat.num_simples()), std::string(f) + ": theory count");
    for (const auto& t : all) require_all_pass(r, {tors::bijection_report(cat, t)});
    // Classes are subsets of indecomposable injectives; every subset arises exactly once.
    for (tors::SimpleSet g = 0; g <= tors::full_set(cat.num_simples()); ++g) {
      const tors::InjectiveClass c{g, cat.num_simples()};
      require(r, tors::injective_class_of(cat, tors::torsion_theory_of_class(cat, c)) == c,
              std::string(f) + ": class round trip " + tors::set_string(g, cat.num_simples()));
    }
  }
  return r;
}

Result i_mono() {
  Result r;
  for (const char* f : {"kA2.json", "ss2.json", "loc2.json"}) {
    const auto ls = fixture(f);
    const auto modules = tors::small_modules(*ls.cat, 3);
    for (const auto& t : theories(ls)) require_all_pass(r, {tors::i_mono_report(*ls.cat, t, modules)});
  }
  return r;
}

Result localization() {
  Result r;
  for (const char* f : {"kA2.json", "ss2.json", "loc2.json"}) {
    const auto ls = fixture(f);
    std::vector<alg::Module> modules;
    for (const auto& [name, m] : ls.modules) modules.push_back(m);
    for (const auto& m : tors::standard_battery(*ls.cat)) modules.push_back(m);
    for (const auto& t : theories(ls)) require_all_pass(r, tors::localization_report(*ls.cat, t, modules));
  }
  const auto ls = fixture("kA2.json");
  const auto& cat = *ls.cat;
  const auto l = tors::localize(cat, ls.modules.at("S2"), theory(ls, "tau1"));
  require(r, cat.isomorphic(l.local, ls.modules.at("I2")), "localize(S2, tau1) is not I2");
  require(r, cat.isomorphic(alg::morphism_parts(l.unit).cokernel.module, ls.modules.at("S1")),
          "cokernel of the unit is not S1");
  return r;
}

Result local_cohomology() {
  Result r;
  std::size_t passes = 0;
  for (const char* f : {"kA2.json", "ss2.json"}) {
    const auto ls = fixture(f);
    const auto& cat = *ls.cat;
    const auto battery = tors::standard_battery(cat);
    for (const auto& t : theories(ls)) {
      std::vector<CheckRecord> recs = lc::vanishing_report(cat, t, battery, 5);
      for (const auto& m : battery) {
        const auto c = lc::coho1_report(cat, m, t, 5);
        recs.insert(recs.end(), c.begin(), c.end());
      }
      require_no_fail(r, recs, &passes);
      if (!tors::is_stable(cat, t)) {
        for (const auto& c : recs) {
          require(r, c.verdict == Verdict::Skipped, c.id + " on an unstable theory is not SKIPPED");
        }
      }
    }
  }
  require(r, passes > 0, "no applicable clause was checked");
  return r;
}

Result weak_equivalences() {
  Result r;
  const auto ls = fixture("kA2.json");
  const auto battery = chx::complex_battery(*ls.cat, -2, 2);
  for (const auto& t : theories(ls)) require_all_pass(r, {chx::weak_equivalence_report(*ls.cat, t, battery)});
  return r;
}

Result model_axioms() {
  Result r;
  const auto ls = fixture("kA2.json");
  const auto& cat = *ls.cat;
  const auto battery = chx::complex_battery(cat, 0, 2);
  for (const auto& t : theories(ls)) {
    std::size_t passes = 0;
    require_no_fail(r, chx::model_axiom_report(cat, t, battery, 0, 3, chx::CofibrationConvention::Strict), &passes);
    require(r, passes > 0, "no model axiom checked for " + tors::set_string(t.sigma, t.num_simples));
  }
  // Regression: S2[0] -> 0 has no factorization under the printed convention.
  const auto& t1 = theory(ls, "tau1");
  const chx::Complex s2 = ls.complexes.at("S2_stalk");
  const auto to_zero = chx::zero_map(s2, chx::zero_complex(ls.algebra));
  require(r, chx::printed_convention_obstruction(cat, to_zero, t1, 0).has_value(), "printed obstruction missing");
  bool printed_fails = false;
  for (const auto& c : chx::model_axiom_report(cat, t1, {s2}, 0, 3, chx::CofibrationConvention::Printed)) {
    printed_fails = printed_fails || c.verdict == Verdict::Fail;
  }
  require(r, printed_fails, "printed convention did not fail on the S2 stalk");
  const auto strict = chx::model_axiom_report(cat, t1, {s2}, 0, 3, chx::CofibrationConvention::Strict);
  require_no_fail(r, strict);
  return r;
}

Result fibrant_replacement() {
  Result r;
  const auto ls = fixture("kA2.json");
  const auto& cat = *ls.cat;
  const auto rep = chx::fibrant_replacement(cat, ls.complexes.at("S2_stalk"), theory(ls, "tau1"), 3);
  const auto support = rep.r.support();
  require(r, support && support->first == 0 && support->second == 0, "replacement is not concentrated in degree 0");
  require(r, cat.isomorphic(rep.r.term(0), ls.modules.at("I2")), "replacement entry is not I2");
  const chx::Complex c = chx::cone(rep.rho);
  std::size_t nonzero = 0;
  for (long n = c.lo; n <= c.hi(); ++n) {
    const auto h = chx::cohomology(c, n);
    if (h.dim == 0) continue;
    ++nonzero;
    require(r, cat.isomorphic(h, ls.modules.at("S1")), "cone cohomology is not S1");
  }
  require(r, nonzero == 1, "cone cohomology is not a single module");

  for (const char* f : {"kA2.json", "ss2.json"}) {
    const auto lf = fixture(f);
    for (const auto& t : theories(lf)) {
      for (const auto& m : tors::standard_battery(*lf.cat)) {
        for (std::size_t n = 0; n < 3; ++n) {
          const auto g3 = lc::gamma(*lf.cat, m, t, n, 3);
          for (std::size_t d : {4, 5}) {
            require(r, lf.cat->isomorphic(g3, lc::gamma(*lf.cat, m, t, n, d)),
                    std::string(f) + ": gamma depends on the resolution cap");
          }
        }
      }
    }
  }
  return r;
}

Result towers() {
  Result r;
  const auto ls = fixture("kA2.json");
  auto battery = chx::complex_battery(*ls.cat, -1, 1);
  for (const auto& [name, x] : ls.complexes) battery.push_back(x);
  for (const auto& t : theories(ls)) {
    std::size_t passes = 0;
    require_no_fail(r, tow::tower_report(*ls.cat, t, battery, 3), &passes);
    require(r, passes > 0, "no tower check ran");
  }
  return r;
}

Result approximation() {
  Result r;
  const auto ls = fixture("kA2.json");
  const auto battery = chx::complex_battery(*ls.cat, -1, 1);
  for (const char* name : {"tau0", "tau1", "tau_omega"}) {
    tow::ApproximationOptions opts;
    opts.tower_depth = 3;
    opts.replacement_depth = 3;
    const auto recs = tow::verify_model_approximation(*ls.cat, theory(ls, name), battery, opts);
    require(r, !recs.empty(), "no approximation records");
    require_all_pass(r, recs);
  }
  return r;
}

Result determinism() {
  Result r;
  const auto ls = fixture("kA2.json");
  for (const char* suite : {"bijection", "localization", "coni"}) {
    cli::Options o;
    o.subcommand = "check";
    o.suite = suite;
    const std::string a = cli::render(cli::run(ls, o), o);
    const std::string b = cli::render(cli::run(fixture("kA2.json"), o), o);
    require(r, a == b, std::string("report for ") + suite + " differs between runs");
  }
  for (const char* f : {"kA2.json", "kA2_printed.json", "ss2.json", "loc2.json"}) {
    const auto doc = cli::parse_spec(kFixtures + "/" + f);
    const std::string once = cli::emit_spec(doc).dump();
    const auto again = cli::parse_spec_text(once);
    require(r, again == doc && cli::emit_spec(again).dump() == once, std::string(f) + ": round trip unstable");
  }
  const std::string kA2 = "'" + kFixtures + "/kA2.json'";
  require(r, exit_code_of("check " + kA2 + " --suite bijection") == 0, "passing suite did not exit 0");
  require(r, exit_code_of("check '" + kFixtures + "/kA2_printed.json' --suite model") == 1,
          "seeded failure did not exit 1");
  require(r, exit_code_of("check /nonexistent.json --suite bijection") == 2, "missing file did not exit 2");
  require(r, exit_code_of("check " + kA2 + " --suite bijection --tau nosuch") == 2, "unknown theory did not exit 2");
  const std::string broken = "/tmp/relhom_acceptance_broken.json";
  std::ofstream(broken) << "{\"format\": 1,\n \"prime\": }\n";
  require(r, exit_code_of("simples " + broken) == 2, "syntax error did not exit 2");
  std::remove(broken.c_str());
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"bijection", bijection},
      {"i-mono", i_mono},
      {"localization", localization},
      {"local cohomology", local_cohomology},
      {"weak equivalences", weak_equivalences},
      {"model axioms", model_axioms},
      {"fibrant replacement", fibrant_replacement},
      {"towers", towers},
      {"approximation", approximation},
      {"determinism and formats", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const std::size_t n = i + 1;
    report::Stopwatch sw;
    Result res;
    try {
      res = criteria[i].second();
    } catch (const std::exception& e) {
      res = Result{false, std::string("exception: ") + e.what()};
    }
    const double secs = sw.seconds();
    if (res.ok && secs >= kLimit[n]) res = Result{false, "over the time limit"};
    std::printf("criterion %zu: %s  %-24s %7.3fs / %.0fs%s%s\n", n, res.ok ? "PASS" : "FAIL", criteria[i].first, secs,
                kLimit[n], res.ok ? "" : "  ", res.detail.c_str());
    failures += !res.ok;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
