#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "relhom/algmod/module.hpp"

namespace relhom::alg {

/// The category of finite-dimensional left modules over a split algebra.
///
/// Construction computes the Jacobson radical, the simple modules, one
/// primitive idempotent per simple, the indecomposable projectives and (for
/// the primary side) the indecomposable injectives via the opposite algebra.
/// Everything is immutable afterwards.
class ModuleCategory {
 public:
  /// Throws NON_SPLIT when the semisimple quotient is not split over F_p.
  explicit ModuleCategory(AlgebraPtr algebra);
  ~ModuleCategory();
  ModuleCategory(const ModuleCategory&) = delete;
  ModuleCategory& operator=(const ModuleCategory&) = delete;

  const AlgebraPtr& algebra() const { return algebra_; }
  std::uint32_t p() const { return algebra_->p(); }

  /// Basis (columns, algebra coordinates) of rad(A).
  const Matrix& radical_basis() const { return radical_; }
  /// Subset of the basis that generates A as a unital algebra.
  const std::vector<std::size_t>& generators() const { return generators_; }

  std::size_t num_simples() const { return simples_.size(); }
  const std::vector<Module>& simples() const { return simples_; }
  const Module& simple(std::size_t i) const { return simples_.at(i); }
  /// Primitive idempotent e_i of A with e_i S_j = 0 for j != i.
  const Matrix& idempotent(std::size_t i) const { return idempotents_.at(i); }
  /// P_i = A e_i.
  const Module& projective(std::size_t i) const { return projectives_.at(i); }
  /// E(S_i).
  const Module& injective(std::size_t i) const { return injectives_.at(i); }

  std::vector<Matrix> hom_basis(const Module& m, const Module& n) const;
  std::vector<Morphism> hom_space(const Module& m, const Module& n) const;
  std::size_t hom_dim(const Module& m, const Module& n) const;
  bool is_morphism(const Matrix& f, const Module& m, const Module& n) const;

  Submodule radical(const Module& m) const;
  Submodule socle(const Module& m) const;
  /// Multiplicity of each simple as a composition factor.
  std::vector<std::size_t> composition_factors(const Module& m) const;
  std::size_t length(const Module& m) const;
  /// Simple multiplicities of soc(M) and of M / rad M.
  std::vector<std::size_t> socle_multiplicities(const Module& m) const;
  std::vector<std::size_t> top_multiplicities(const Module& m) const;

  /// e_i M as a subspace of M (columns).
  Matrix idempotent_image(const Module& m, std::size_t i) const;

  std::pair<Module, Morphism> projective_cover(const Module& m) const;
  std::pair<Module, Morphism> injective_envelope(const Module& m) const;
  bool is_injective(const Module& m) const;
  bool is_projective(const Module& m) const;
  /// Multiplicity of E(S_i) in an injective module; throws NOT_INJECTIVE.
  std::vector<std::size_t> decompose_injective(const Module& e) const;

  /// Witness isomorphism M -> N, or nullopt when none exists. Throws
  /// SEARCH_EXHAUSTED when the sweep is not exhaustive and found nothing
  /// although all cheap invariants agree.
  std::optional<Matrix> is_isomorphic(const Module& m, const Module& n) const;
  bool isomorphic(const Module& m, const Module& n) const { return is_isomorphic(m, n).has_value(); }

  /// Side of the category over the opposite algebra (null on that side).
  const ModuleCategory* opposite() const { return opposite_.get(); }

 private:
  ModuleCategory(AlgebraPtr algebra, bool with_opposite);
  void build(bool with_opposite);
  void require_module(const Module& m) const;

  AlgebraPtr algebra_;
  Matrix radical_;
  std::vector<std::size_t> generators_;
  std::vector<Module> simples_;
  std::vector<Matrix> idempotents_;
  std::vector<Module> projectives_;
  std::vector<Module> injectives_;
  std::unique_ptr<ModuleCategory> opposite_;
};

/// Radical by the iterated trace-form algorithm over F_p; exposed for tests.
Matrix jacobson_radical(const Algebra& a);

}  // namespace relhom::alg
