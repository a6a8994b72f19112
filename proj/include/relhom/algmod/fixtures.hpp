#pragma once

#include "relhom/algmod/module.hpp"

namespace relhom::alg {

/// Named modules over kA2 (basis e1, e2, a for the quiver 1 -> 2).
struct KA2Modules {
  Module S1, S2, I2, P1;
};

KA2Modules kA2_modules(const AlgebraPtr& kA2);

/// Unique simple over loc2 = F_2[x]/(x^2).
Module loc2_simple(const AlgebraPtr& loc2);
/// Simple modules of ss2 = F_2 x F_2 in block order.
std::pair<Module, Module> ss2_simples(const AlgebraPtr& ss2);

}  // namespace relhom::alg
