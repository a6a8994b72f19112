#pragma once

#include <string>
#include <vector>

#include "relhom/algmod/algebra.hpp"

namespace relhom::alg {

/// Left module given by the action matrices rho(e_i) on column vectors.
struct Module {
  AlgebraPtr algebra;
  std::size_t dim = 0;
  std::vector<Matrix> action;

  std::uint32_t p() const { return algebra->p(); }
  /// rho(x) for a coordinate column x of the algebra.
  Matrix act(const Matrix& x) const;
  bool is_zero() const { return dim == 0; }
};

/// F : source -> target, stored as a (target.dim x source.dim) matrix.
struct Morphism {
  Module source;
  Module target;
  Matrix f;

  Morphism compose_after(const Morphism& g) const;  // this o g
};

struct Submodule {
  Module module;
  Morphism inclusion;
};

struct QuotientModule {
  Module module;
  Morphism projection;
  /// Linear right inverse of the projection (not a module map in general).
  Matrix section;
};

struct MorphismParts {
  Submodule kernel;
  Submodule image;
  QuotientModule cokernel;
};

Module make_module(AlgebraPtr a, std::vector<Matrix> action);
Module zero_module(AlgebraPtr a);
Module regular_module(AlgebraPtr a);

/// Empty string when valid; otherwise a description of the first violation.
std::string module_problem(const Module& m);
std::string morphism_problem(const Morphism& f);
bool same_algebra(const Module& a, const Module& b);

Morphism identity(const Module& m);
Morphism zero_morphism(const Module& source, const Module& target);
Morphism compose(const Morphism& g, const Morphism& f);  // g o f
Morphism add(const Morphism& a, const Morphism& b);
Morphism scale(const Morphism& a, Residue c);

/// Submodule spanned by an invariant subspace (columns of `basis`); the
/// basis is canonicalized. Throws INVALID_INPUT if the span is not invariant.
Submodule submodule(const Module& m, const Matrix& basis);
QuotientModule quotient_module(const Module& m, const Matrix& basis);

Module direct_sum(const std::vector<Module>& parts);
Module direct_sum(const Module& a, const Module& b);
/// Canonical injections and projections of a direct sum.
Morphism sum_injection(const std::vector<Module>& parts, std::size_t i);
Morphism sum_projection(const std::vector<Module>& parts, std::size_t i);
/// (f, g) : A + B -> C and (f; g) : A -> B + C.
Morphism hcat(const Morphism& f, const Morphism& g);
Morphism vcat(const Morphism& f, const Morphism& g);
Morphism direct_sum(const Morphism& f, const Morphism& g);

/// Smallest submodule containing the given vectors (columns).
Matrix spin(const Module& m, const Matrix& vectors);
/// Vector-space dual as a left module over the opposite algebra.
Module dual(const Module& m, AlgebraPtr opposite);

MorphismParts morphism_parts(const Morphism& f);

bool is_injective_map(const Morphism& f);
bool is_surjective_map(const Morphism& f);

/// ker(out) / im(in) for in : A -> M and out : M -> B with out * in = 0.
/// Throws SHAPE_MISMATCH when the composite is nonzero.
Module homology(const Matrix& in, const Module& middle, const Matrix& out);

}  // namespace relhom::alg
