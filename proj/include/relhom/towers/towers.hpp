#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhom/chx/model.hpp"

namespace relhom::tow {

using chx::Complex;
using chx::ComplexMorphism;
using tors::ModuleCategory;
using tors::TorsionTheory;
using la::Matrix;

/// Levels a_0..a_N with a_k in Ch^{>= -k} and alpha[k] : a_{k+1} -> a_k.
struct Tower {
  alg::AlgebraPtr algebra;
  std::vector<Complex> levels;
  std::vector<ComplexMorphism> alphas;

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
};

/// Levelwise maps f_k with f_k alpha_{k+1} = beta_{k+1} f_{k+1}.
struct TowerMorphism {
  Tower source;
  Tower target;
  std::vector<ComplexMorphism> maps;
};

std::string tower_problem(const Tower& t);
std::string tower_map_problem(const TowerMorphism& f);

/// g : X -> Y with Y concentrated in degrees >= the truncation degree, pushed
/// through the quotient X -> X^{>= n}.
ComplexMorphism factor_through_truncation(const chx::Truncation& tx, const ComplexMorphism& g);
/// The truncation functor on a morphism.
ComplexMorphism truncate_map(const ComplexMorphism& f, long n);

/// Successive truncations X^{>= -k} for k = 0..depth.
Tower tower_of(const Complex& x, std::size_t depth);
TowerMorphism tower_map_of(const ComplexMorphism& f, std::size_t depth);
/// First level from which every structure map is an identity, if any.
std::optional<std::size_t> stabilization_level(const Tower& t);

TowerMorphism identity_tower_map(const Tower& t);
TowerMorphism compose(const TowerMorphism& g, const TowerMorphism& f);
bool equal_tower_maps(const TowerMorphism& f, const TowerMorphism& g);

struct Limit {
  Complex complex;
  std::vector<ComplexMorphism> projections;  // lim -> a_k
  /// Columns spanning the compatible tuples inside the sum of the levels, per degree.
  std::vector<Matrix> embeddings;
  long lo = 0;
};

/// Degreewise kernel of (x_k) -> (x_k - alpha_{k+1} x_{k+1}).
Limit tower_limit(const Tower& t);
Complex tower_lim(const Tower& t);
/// Unique Y -> lim with projections g_k; throws INVALID_INPUT when the g_k are
/// not compatible.
ComplexMorphism map_into_limit(const Limit& lim, const std::vector<ComplexMorphism>& g);
ComplexMorphism lim_map(const Limit& source, const Limit& target, const TowerMorphism& f);

/// Unit X -> lim Tow X and counit Tow lim T -> T.
ComplexMorphism tower_unit(const Complex& x, std::size_t depth);
TowerMorphism tower_counit(const Tower& t);

/// Levelwise pullback p_k of a_{k-1} -> b_{k-1} <- b_k (p_0 = b_0) and the
/// universal map f*_k : a_k -> p_k.
struct PullbackLevel {
  Complex p;
  ComplexMorphism to_source;  // p_k -> a_{k-1}
  ComplexMorphism to_target;  // p_k -> b_k
  ComplexMorphism f_star;     // a_k -> p_k
};
std::vector<PullbackLevel> pullback_levels(const TowerMorphism& f);

struct TowerFlags {
  bool in_W = false;
  bool in_B = false;
  bool in_C = false;
};
/// `top` bounds the degrees in which weak equivalences are examined.
TowerFlags tower_classes(const ModuleCategory& cat, const TowerMorphism& f, const TorsionTheory& t,
                         std::optional<long> top = std::nullopt);
/// T -> 0 is a fibration of towers.
bool is_fibrant_tower(const ModuleCategory& cat, const Tower& t, const TorsionTheory& tt);

/// Degreewise localization of a complex with its unit.
struct LocalComplex {
  Complex local;
  ComplexMorphism unit;  // X -> S Q X
};
LocalComplex localize_complex(const ModuleCategory& cat, const Complex& x, const TorsionTheory& t);
ComplexMorphism localize_map(const ModuleCategory& cat, const ComplexMorphism& f, const TorsionTheory& t);
/// Q S Z -> Z for a complex of local modules.
ComplexMorphism localization_counit(const ModuleCategory& cat, const Complex& z, const TorsionTheory& t);

/// Fibrant tower F with a levelwise weak equivalence T -> F in C: level 0 is a
/// fibrant replacement and level k+1 the cocylinder factorization of
/// a_{k+1} -> a_k -> F_k.
struct FibrantTower {
  Tower tower;
  TowerMorphism weq;
  long certified_top = 0;
};
FibrantTower fibrant_tower(const ModuleCategory& cat, const Tower& t, const TorsionTheory& tt, long depth);
/// Ladder of lifts psi_k : F_k -> G_k with psi w_F = w_G f and compatible with
/// the structure maps. Throws NO_LIFT when a rung has no solution.
TowerMorphism compare_fibrant_towers(const ModuleCategory& cat, const FibrantTower& from, const FibrantTower& to,
                                     const TowerMorphism& f);

struct ApproximationOptions {
  std::size_t tower_depth = 3;
  long replacement_depth = 3;
  chx::CofibrationConvention convention = chx::CofibrationConvention::Strict;
  std::uint64_t seed = 1;
};

/// Model-approximation axioms for Q followed by Tow, with S after lim as the
/// right adjoint, plus the compatibility of (Q, S) with weak equivalences.
std::vector<report::CheckRecord> verify_model_approximation(const ModuleCategory& cat, const TorsionTheory& t,
                                                            const std::vector<Complex>& battery,
                                                            const ApproximationOptions& opts = {});

/// Tower-level checks: lim of Tow is the identity, the truncation adjunction
/// dimensions and the pullback universal property.
std::vector<report::CheckRecord> tower_report(const ModuleCategory& cat, const TorsionTheory& t,
                                              const std::vector<Complex>& battery, std::size_t depth,
                                              std::uint64_t seed = 1);

}  // namespace relhom::tow
