#pragma once

#include <map>

#include "monodromy/engine.hpp"

namespace testing_support {

using namespace monodromy;

inline InputRep input(FieldTower& t, int a, std::map<int, long long> f, TameChar chi = {}, int n = 1) {
  InputRep r;
  r.a = a;
  for (auto [k, v] : f) r.f.emplace(k, t.from_int(v));
  r.chi = chi;
  r.n = n;
  return r;
}

inline PsiArg psi(FieldTower& t, std::map<int, long long> terms) {
  std::map<int, Fq> m;
  for (auto [k, v] : terms) m.emplace(k, t.from_int(v));
  return canonicalize_psi_arg(t, m);
}

}  // namespace testing_support
