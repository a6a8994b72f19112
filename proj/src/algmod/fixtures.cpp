#include "relhom/algmod/fixtures.hpp"

namespace relhom::alg {

namespace {

Module scalar_module(const AlgebraPtr& a, std::initializer_list<long long> values) {
  std::vector<Matrix> act;
  for (long long v : values) act.push_back(Matrix::from_rows(a->p(), 1, 1, {v}));
  return make_module(a, std::move(act));
}

}  // namespace

KA2Modules kA2_modules(const AlgebraPtr& kA2) {
  KA2Modules m;
  m.S1 = scalar_module(kA2, {1, 0, 0});
  m.S2 = scalar_module(kA2, {0, 1, 0});
  // k -> k with basis (vertex 1, vertex 2).
  m.I2 = make_module(kA2, {Matrix::from_rows(2, 2, 2, {1, 0, 0, 0}), Matrix::from_rows(2, 2, 2, {0, 0, 0, 1}),
                           Matrix::from_rows(2, 2, 2, {0, 0, 1, 0})});
  m.P1 = m.I2;
  return m;
}

Module loc2_simple(const AlgebraPtr& loc2) { return scalar_module(loc2, {1, 0}); }

std::pair<Module, Module> ss2_simples(const AlgebraPtr& ss2) {
  return {scalar_module(ss2, {1, 0}), scalar_module(ss2, {0, 1})};
}

}  // namespace relhom::alg
