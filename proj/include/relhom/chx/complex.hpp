#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhom/algmod/category.hpp"

namespace relhom::chx {

using alg::AlgebraPtr;
using alg::Matrix;
using alg::Module;
using alg::ModuleCategory;
using alg::Morphism;

/// Cochain complex X^lo -> ... -> X^hi; every other degree is zero.
struct Complex {
  AlgebraPtr algebra;
  long lo = 0;
  std::vector<Module> terms;  // X^lo .. X^hi
  std::vector<Matrix> diffs;  // d^i : X^i -> X^{i+1}, lo <= i < hi
  /// Name of the operation that built the complex.
  std::string provenance;

  long hi() const { return lo + static_cast<long>(terms.size()) - 1; }
  bool in_window(long i) const { return i >= lo && i <= hi(); }
  std::size_t dim(long i) const { return in_window(i) ? terms[static_cast<std::size_t>(i - lo)].dim : 0; }
  Module term(long i) const;
  Matrix diff(long i) const;
  std::uint32_t p() const { return algebra->p(); }
  /// No nonzero term.
  bool is_zero() const;
  /// Smallest and largest degree with a nonzero term; nullopt for zero.
  std::optional<std::pair<long, long>> support() const;
};

/// Degreewise maps phi^i : X^i -> Y^i.
struct ComplexMorphism {
  Complex source;
  Complex target;
  long lo = 0;
  std::vector<Matrix> maps;  // degrees lo .. lo + size - 1
  std::string provenance;

  Matrix at(long i) const;
};

Complex make_complex(AlgebraPtr a, long lo, std::vector<Module> terms, std::vector<Matrix> diffs,
                     std::string provenance = "input");
/// Empty when d^2 = 0 and every entry is a module map; otherwise the defect.
std::string complex_problem(const Complex& x);
std::string map_problem(const ComplexMorphism& f);

Complex zero_complex(AlgebraPtr a);
Complex stalk(const Module& m, long degree);
/// f : M -> N with M in `degree` and N in `degree + 1`.
Complex two_term(const Morphism& f, long degree);
/// D^{(i-1,i)}(J): J in degrees i-1 and i joined by the identity.
Complex disk(const Module& j, long i);
Complex shift_window(const Complex& x, long new_lo, long new_hi);
Complex direct_sum(const Complex& x, const Complex& y);

/// Builds a morphism over the union of the windows from a degreewise rule.
template <class F>
ComplexMorphism make_map(const Complex& x, const Complex& y, F&& rule, std::string provenance = "input") {
  ComplexMorphism f{x, y, 0, {}, std::move(provenance)};
  const long lo = std::min(x.lo, y.lo);
  const long hi = std::max(x.hi(), y.hi());
  f.lo = lo;
  for (long i = lo; i <= hi; ++i) f.maps.push_back(rule(i));
  return f;
}
ComplexMorphism identity_map(const Complex& x);
ComplexMorphism zero_map(const Complex& x, const Complex& y);
ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f);
ComplexMorphism add(const ComplexMorphism& f, const ComplexMorphism& g);
ComplexMorphism scale(const ComplexMorphism& f, la::Residue c);
bool equal_maps(const ComplexMorphism& f, const ComplexMorphism& g);
/// f (+) g : X (+) X' -> Y (+) Y'.
ComplexMorphism direct_sum(const ComplexMorphism& f, const ComplexMorphism& g);
ComplexMorphism sum_injection_first(const Complex& x, const Complex& y);
ComplexMorphism sum_projection_first(const Complex& x, const Complex& y);

/// ker d^n / im d^{n-1}.
Module cohomology(const Complex& x, long n);

/// cone(phi)^n = X^{n+1} (+) Y^n with differential (-d_X, 0; phi^{n+1}, d_Y).
Complex cone(const ComplexMorphism& phi);

struct Truncation {
  Complex complex;           // coker(d^{n-1}) in degree n, X^i above
  ComplexMorphism quotient;  // X -> X^{>= n}
};
Truncation truncate(const Complex& x, long n);

/// Hom(X, Y)^n = prod_i Hom(X^i, Y^{i+n}) over F_p, with
/// d(f) = d_Y f - (-1)^n f d_X.
struct HomComplex {
  struct Piece {
    long source_degree;
    std::vector<Matrix> basis;  // Hom(X^i, Y^{i+n})
  };
  struct Component {
    long degree;
    std::vector<Piece> pieces;
    std::size_t dim = 0;
  };
  long lo = 0;
  std::vector<Component> components;
  std::vector<Matrix> diffs;  // component k -> component k+1
  std::uint32_t p = 2;

  long hi() const { return lo + static_cast<long>(components.size()) - 1; }
  std::size_t cohomology_dim(long n) const;
  bool acyclic() const;
};
HomComplex hom_complex(const ModuleCategory& cat, const Complex& x, const Complex& y);
/// Basis of the chain maps X -> Y (the degree-zero cycles).
std::vector<ComplexMorphism> chain_maps(const ModuleCategory& cat, const Complex& x, const Complex& y);
/// A null-homotopic map is a degree-zero boundary.
bool is_null_homotopic(const ModuleCategory& cat, const ComplexMorphism& f);

}  // namespace relhom::chx
