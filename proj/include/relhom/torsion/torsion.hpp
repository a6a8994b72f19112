#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relhom/algmod/category.hpp"

namespace relhom::tors {

using alg::Matrix;
using alg::Module;
using alg::ModuleCategory;
using alg::Morphism;

/// Bit i set iff simple i belongs to the set.
using SimpleSet = std::uint64_t;

inline bool has(SimpleSet s, std::size_t i) { return (s >> i) & 1U; }
inline SimpleSet full_set(std::size_t n) { return n >= 64 ? ~SimpleSet{0} : (SimpleSet{1} << n) - 1; }
std::vector<std::size_t> members(SimpleSet s, std::size_t n);
std::string set_string(SimpleSet s, std::size_t n);

/// Hereditary torsion theory, determined by the simples it declares torsion.
struct TorsionTheory {
  SimpleSet sigma = 0;
  std::size_t num_simples = 0;

  bool operator==(const TorsionTheory&) const = default;
  bool torsion_simple(std::size_t i) const { return has(sigma, i); }
};

/// Injective class generated by the indecomposable injectives E(S_i), i in G.
struct InjectiveClass {
  SimpleSet generators = 0;
  std::size_t num_simples = 0;

  bool operator==(const InjectiveClass&) const = default;
};

/// All 2^s theories, ordered by the bitmask of their simple set.
std::vector<TorsionTheory> all_torsion_theories(const ModuleCategory& cat);
TorsionTheory trivial_theory(const ModuleCategory& cat);
TorsionTheory improper_theory(const ModuleCategory& cat);

bool is_torsion(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);
bool is_torsion_free(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);
/// Torsion-free with torsion-free E(M)/M.
bool is_local(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);

alg::Submodule torsion_submodule(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);
alg::QuotientModule torsion_free_quotient(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);

/// Theory whose torsion class is the left orthogonal of E; throws NOT_INJECTIVE.
TorsionTheory cogenerated_by(const ModuleCategory& cat, const Module& e);
bool is_stable(const ModuleCategory& cat, const TorsionTheory& t);

InjectiveClass injective_class_of(const ModuleCategory& cat, const TorsionTheory& t);
TorsionTheory torsion_theory_of_class(const ModuleCategory& cat, const InjectiveClass& c);
/// E is injective with every indecomposable summand among the generators.
bool in_class(const ModuleCategory& cat, const Module& e, const InjectiveClass& c);
/// Injective and torsion-free.
bool in_injective_class(const ModuleCategory& cat, const Module& e, const TorsionTheory& t);

/// Kernel is torsion; cross-checked against surjectivity of Hom(phi, E) for
/// every class generator E. Throws CROSSCHECK_FAILED on disagreement.
bool is_I_mono(const ModuleCategory& cat, const Morphism& phi, const TorsionTheory& t);
/// Hom(phi, E) : Hom(target, E) -> Hom(source, E) is onto for every generator.
bool restriction_criterion(const ModuleCategory& cat, const Morphism& phi, const InjectiveClass& c);

struct Localization {
  Module local;
  Morphism unit;  // M -> L(M)
};

Localization localize(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);
/// L(f) : L(M) -> L(N), the unique map with L(f) unit_M = unit_N f.
Morphism localize_morphism(const ModuleCategory& cat, const Morphism& f, const TorsionTheory& t);
std::vector<Matrix> hom_quotient(const ModuleCategory& cat, const Module& m, const Module& n,
                                 const TorsionTheory& t);

struct SpectrumPartition {
  SimpleSet specialization = 0;  // E(pi) has nonzero torsion
  SimpleSet generalization = 0;
};
SpectrumPartition spectrum_partition(const ModuleCategory& cat, const TorsionTheory& t);

/// related[i][j] true iff pi_i <= pi_j, i.e. Hom(E(pi_j), E(pi_i)) != 0 up to
/// reflexive-transitive closure.
std::vector<std::vector<bool>> specialization_preorder(const ModuleCategory& cat);
/// Every theory on the algebra is stable.
bool all_theories_stable(const ModuleCategory& cat);
/// G(t) is closed under generalization in the preorder.
bool generalization_closed(const std::vector<std::vector<bool>>& rel, SimpleSet g);

/// Theory with torsion simples sigma + extra; throws OVERLAP when they meet.
TorsionTheory compose_tt(const TorsionTheory& t, SimpleSet extra);
/// -1 for torsion modules, 0 otherwise.
int rel_gdim(const ModuleCategory& cat, const Module& m, const TorsionTheory& t);

/// Prime theory cogenerated by E(S_i).
TorsionTheory prime_theory(const ModuleCategory& cat, std::size_t i);

/// Simples, indecomposable projectives and injectives, and pairwise sums of
/// those, without repeated isomorphism classes.
std::vector<Module> standard_battery(const ModuleCategory& cat);

struct ShortExact {
  Morphism mono;  // A -> B
  Morphism epi;   // B -> C
};
/// Short exact sequences built from the battery: monos among battery
/// modules with their cokernels, socle and radical sequences, split sums.
std::vector<ShortExact> battery_sequences(const ModuleCategory& cat, const std::vector<Module>& battery);

struct ExactnessVerdict {
  bool exact_on_battery = true;
  std::string witness;
};
/// Semi-decision of exactness of L_t on the battery sequences.
ExactnessVerdict exactness_on_battery(const ModuleCategory& cat, const TorsionTheory& t,
                                      const std::vector<Module>& battery);

struct HypothesisAudit {
  bool hyp1 = false;  // the theories involved are stable
  bool hyp2 = true;   // module categories of finite-dimensional algebras are locally noetherian
  bool hyp3 = false;  // every prime theory is exact on the battery
  std::string hyp1_detail;
  std::string hyp3_detail;
};
HypothesisAudit audit_hypotheses(const ModuleCategory& cat, const std::vector<TorsionTheory>& involved,
                                 const std::vector<Module>& battery);

}  // namespace relhom::tors
