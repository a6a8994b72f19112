#pragma once

#include <string>
#include <vector>

#include "relhom/report.hpp"
#include "relhom/torsion/torsion.hpp"

namespace relhom::lc {

using alg::Matrix;
using alg::Module;
using alg::ModuleCategory;
using alg::Morphism;
using tors::TorsionTheory;

/// 0 -> M -> E^0 -> E^1 -> ... -> E^cap with E^0 = E(M) and
/// E^{k+1} = E(coker(E^{k-1} -> E^k)).
struct Resolution {
  Module base;
  std::size_t cap = 0;
  std::vector<Module> terms;      // E^0 .. E^cap
  std::vector<Morphism> diffs;    // d^k : E^k -> E^{k+1}, k < cap
  Morphism augmentation;          // M -> E^0
  /// Some E^k with k <= cap is zero, so every later term is zero as well.
  bool terminated = false;
};

Resolution min_injective_resolution(const ModuleCategory& cat, const Module& m, std::size_t cap);
/// Empty when exactness and minimality hold, otherwise the first defect.
std::string resolution_problem(const ModuleCategory& cat, const Resolution& r);

/// T_t applied degreewise to the resolution, cohomology in degree n < cap.
Module gamma(const ModuleCategory& cat, const Resolution& r, const TorsionTheory& t, std::size_t n);
Module gamma(const ModuleCategory& cat, const Module& m, const TorsionTheory& t, std::size_t n, std::size_t cap);
/// Degrees 0 .. cap-1 from one resolution.
std::vector<Module> gamma_all(const ModuleCategory& cat, const Resolution& r, const TorsionTheory& t);

/// n-th cohomology of L_t applied degreewise to the resolution, n < cap.
Module derived_localization(const ModuleCategory& cat, const Resolution& r, const TorsionTheory& t, std::size_t n);

report::json module_summary(const ModuleCategory& cat, const Module& m);

/// One record per clause of the comparison lemma for local cohomology.
/// Every clause needs a stable theory and is SKIPPED otherwise.
std::vector<report::CheckRecord> coho1_report(const ModuleCategory& cat, const Module& m, const TorsionTheory& t,
                                              std::size_t cap, const std::string& label = "M");

/// Vanishing statements on each battery module, in battery order.
std::vector<report::CheckRecord> vanishing_report(const ModuleCategory& cat, const TorsionTheory& t,
                                                  const std::vector<Module>& battery, std::size_t cap);

}  // namespace relhom::lc
