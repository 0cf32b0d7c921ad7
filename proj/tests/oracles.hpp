// Copyright 2026 The solgraph Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only brute-force oracles. These deliberately avoid the stabilizer
// chain and the derived-series machinery so they can cross-check them.

#ifndef SOLGRAPH_TESTS_ORACLES_HPP
#define SOLGRAPH_TESTS_ORACLES_HPP

#include <cstdint>
#include <deque>
#include <set>
#include <vector>

#include "solgraph/perm_group.hpp"
#include "solgraph/permutation.hpp"

namespace solgraph::oracles {

/// All elements of ⟨gens⟩ by plain breadth-first multiplication.
inline std::set<Permutation> brute_closure(int degree,
                                           const std::vector<Permutation>& gens) {
  std::set<Permutation> all;
  std::deque<Permutation> queue;
  all.insert(Permutation::identity(degree));
  queue.push_back(Permutation::identity(degree));
  while (!queue.empty()) {
    Permutation e = std::move(queue.front());
    queue.pop_front();
    for (const Permutation& g : gens) {
      Permutation p = compose(e, g);
      if (all.insert(p).second) queue.push_back(p);
    }
  }
  return all;
}

/// Commutator subgroup from commutators of all element pairs.
inline std::set<Permutation> brute_derived(int degree,
                                           const std::vector<Permutation>& gens) {
  std::set<Permutation> elems = brute_closure(degree, gens);
  std::set<Permutation> comm_set;
  for (const Permutation& a : elems) {
    for (const Permutation& b : elems) {
      comm_set.insert(commutator(a, b));
    }
  }
  return brute_closure(degree,
                       std::vector<Permutation>(comm_set.begin(), comm_set.end()));
}

/// Chief-series solubility oracle: repeatedly find a minimal normal
/// subgroup (the minimal-order normal closure of a class representative),
/// demand it is abelian, and recurse into the quotient.
inline bool soluble_by_chief_series(const PermutationGroup& G,
                                    std::uint64_t enum_budget = 200'000) {
  if (G.order() == 1) return true;
  ConjugacyClasses classes = conjugacy_classes(G, G.elements(enum_budget));
  const PermutationGroup* dummy = nullptr;
  (void)dummy;
  bool have = false;
  PermutationGroup minimal = PermutationGroup::trivial(G.degree());
  for (const Permutation& rep : classes.representatives) {
    if (rep.is_identity()) continue;
    PermutationGroup closure = normal_closure(G, {rep});
    if (!have || closure.order() < minimal.order()) {
      minimal = closure;
      have = true;
    }
  }
  if (!have) return true;
  if (!is_abelian(minimal)) return false;
  if (minimal.order() == G.order()) return true;  // G itself abelian
  return soluble_by_chief_series(quotient(G, minimal).image(), enum_budget);
}

/// Euler totient by direct counting of coprime residues.
inline std::uint64_t phi_by_counting(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::uint64_t a = n, b = k;
    while (b != 0) {
      std::uint64_t t = a % b;
      a = b;
      b = t;
    }
    if (a == 1) ++count;
  }
  return count;
}

}  // namespace solgraph::oracles

#endif  // SOLGRAPH_TESTS_ORACLES_HPP
