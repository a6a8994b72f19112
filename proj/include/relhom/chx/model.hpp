#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhom/chx/complex.hpp"
#include "relhom/report.hpp"
#include "relhom/torsion/torsion.hpp"

namespace relhom::chx {

using tors::TorsionTheory;

/// Every cohomology module of X in degrees <= top is torsion.
bool is_tau_acyclic(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t,
                    std::optional<long> top = std::nullopt);

/// phi is a tau-quasi-isomorphism: the cone has torsion cohomology. Cross-checked
/// against acyclicity of Hom(cone, E[0]) for every torsion-free indecomposable
/// injective E; throws CROSSCHECK_FAILED on disagreement. With `top`, only cone
/// degrees up to top are examined.
bool is_tau_weq(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t,
                std::optional<long> top = std::nullopt);

/// Which degrees a cofibration must be a tau-monomorphism in.
enum class CofibrationConvention {
  Strict,   // degrees strictly above the window bottom
  Printed,  // every degree from the window bottom on
};

struct ClassFlags {
  bool in_W = false;
  bool in_B = false;
  bool in_C = false;
  bool fibrant_source = false;
  bool fibrant_target = false;
};

/// Memberships in Ch^{>= bottom}. `top` bounds the degrees in which the weak
/// equivalence and fibrancy conditions are examined.
ClassFlags class_membership(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t,
                            long bottom, CofibrationConvention conv = CofibrationConvention::Strict,
                            std::optional<long> top = std::nullopt);
/// Every entry in degrees <= top is torsion-free injective.
bool is_fibrant(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t,
                std::optional<long> top = std::nullopt);
bool in_C(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long bottom,
          CofibrationConvention conv = CofibrationConvention::Strict);
bool in_B(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long bottom);

/// g : V -> J with g iota = f. Throws NO_EXTENSION when J is not torsion-free
/// injective or iota is not a tau-monomorphism.
Morphism extend_along_tau_mono(const ModuleCategory& cat, const Morphism& f, const Morphism& iota,
                               const TorsionTheory& t);

/// Diagonal psi : A' -> B with psi c = top and b psi = bottom_map. Throws
/// NO_LIFT(precondition) when c is not a cofibration, b not a fibration, neither
/// is a weak equivalence, or the square does not commute; NO_LIFT when the
/// linear system has no solution.
ComplexMorphism lift_square(const ModuleCategory& cat, const ComplexMorphism& c, const ComplexMorphism& b,
                            const ComplexMorphism& top, const ComplexMorphism& bottom_map, const TorsionTheory& t,
                            long bottom);
/// Chain map psi : A' -> B with psi c = top and b psi = bottom_map, if any.
std::optional<ComplexMorphism> solve_diagonal(const ModuleCategory& cat, const ComplexMorphism& c,
                                              const ComplexMorphism& b, const ComplexMorphism& top,
                                              const ComplexMorphism& bottom_map);

struct Factorization {
  ComplexMorphism c;  // X -> Z
  Complex z;
  ComplexMorphism b;  // Z -> Y
  /// Degrees up to which the memberships are certified.
  std::optional<long> certified_top;
};

/// phi = b c with c a cofibration and b an acyclic fibration; Z is Y plus the
/// disks D^{(i-1,i)}(E(X^i / T X^i)) for bottom < i <= hi.
Factorization factor_disk(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long bottom);

struct FibrantReplacement {
  ComplexMorphism rho;  // X -> R
  Complex r;
  long certified_top = 0;
};

/// Relative injective resolution of X built degree by degree: R^n is the
/// envelope of the torsion-free part of the pushout of X^n and coker(d_R^{n-2})
/// along X^{n-1}. Entries are built up to hi + depth; the cone is certified
/// below that degree. Requires depth > hi - lo.
FibrantReplacement fibrant_replacement(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t,
                                       long depth);
/// Same construction with an explicit last degree.
FibrantReplacement fibrant_replacement_to(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t,
                                          long last);

struct PathObject {
  Complex path;           // R^n (+) R^{n-1} (+) R^n, d(x,s,y) = (dx, x - y - ds, dy)
  ComplexMorphism diag;   // x -> (x, 0, x)
  ComplexMorphism ev0;    // (x, s, y) -> x
  ComplexMorphism ev1;    // (x, s, y) -> y
};
PathObject path_object(const Complex& r);

/// phi = b' c' with c' an acyclic cofibration and b' a fibration, through the
/// mapping cocylinder of a chain map RX -> RY between fibrant replacements.
Factorization factor_cocyl(const ModuleCategory& cat, const ComplexMorphism& phi, const TorsionTheory& t, long depth);

/// Under the printed convention no (C, B n W) factorization of phi exists when
/// ker d_X^bottom n ker phi^bottom is not torsion. Returns that submodule's
/// basis when it is not torsion.
std::optional<Matrix> printed_convention_obstruction(const ModuleCategory& cat, const ComplexMorphism& phi,
                                                     const TorsionTheory& t, long bottom);

/// Complexes with fixture entries: stalks in every degree of [lo, hi] and two-term
/// complexes for every nonzero basis map between fixture modules.
std::vector<Complex> complex_battery(const ModuleCategory& cat, long lo, long hi);

/// Model axioms on Ch^{>= bottom}: two-out-of-three, retracts, lifting and both
/// factorizations on morphisms among the battery complexes.
std::vector<report::CheckRecord> model_axiom_report(const ModuleCategory& cat, const TorsionTheory& t,
                                                    const std::vector<Complex>& battery, long bottom, long depth,
                                                    CofibrationConvention conv, std::uint64_t seed = 1);

/// Cone-torsion and Hom-acyclicity criteria on every chain map between battery
/// complexes when the chain-map space has at most `exhaustive_limit` elements,
/// otherwise on the basis and its pairwise sums.
report::CheckRecord weak_equivalence_report(const ModuleCategory& cat, const TorsionTheory& t,
                                            const std::vector<Complex>& battery,
                                            std::size_t exhaustive_limit = 256);

report::json complex_summary(const ModuleCategory& cat, const Complex& x);

}  // namespace relhom::chx
