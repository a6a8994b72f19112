#pragma once

#include <vector>

#include "relhom/report.hpp"
#include "relhom/torsion/torsion.hpp"

namespace relhom::tors {

/// Round trips between theories and injective classes, and order reversal
/// against every other theory on the algebra.
report::CheckRecord bijection_report(const ModuleCategory& cat, const TorsionTheory& t);

/// Kernel-torsion, restriction and localized-mono criteria on every morphism
/// between the given modules whose hom space has at most `exhaustive_limit`
/// elements; larger spaces use the basis and pairwise sums.
report::CheckRecord i_mono_report(const ModuleCategory& cat, const TorsionTheory& t, const std::vector<Module>& modules,
                                  std::size_t exhaustive_limit = 4096);

/// Localization of torsion modules, of torsion-free parts, the envelope
/// preimage description, homs between local modules and idempotence.
std::vector<report::CheckRecord> localization_report(const ModuleCategory& cat, const TorsionTheory& t,
                                                     const std::vector<Module>& modules);

/// Torsion part computed as the common kernel of all maps into E(S_j), j not
/// in the theory; shares no code with torsion_submodule.
Matrix torsion_by_cogeneration(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);

/// Modules of dimension at most `max_dim` among the standard battery, the
/// submodules and quotients of its members.
std::vector<Module> small_modules(const ModuleCategory& cat, std::size_t max_dim);

}  // namespace relhom::tors
