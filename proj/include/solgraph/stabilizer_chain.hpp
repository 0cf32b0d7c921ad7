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

#ifndef SOLGRAPH_STABILIZER_CHAIN_HPP
#define SOLGRAPH_STABILIZER_CHAIN_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "solgraph/errors.hpp"
#include "solgraph/permutation.hpp"

namespace solgraph {

inline constexpr std::uint64_t kDefaultEnumBudget = 10'080;

/// Base and strong generating set for a permutation group, built with a
/// deterministic Schreier–Sims: base points are always the smallest moved
/// point available, orbits are grown breadth-first with generators applied
/// in insertion order. This makes order(), contains(), element enumeration
/// and element indices reproducible across runs and platforms.
class StabilizerChain {
 public:
  StabilizerChain(int degree, const std::vector<Permutation>& generators)
      : degree_(degree) {
    for (const Permutation& g : generators) {
      if (g.degree() != degree_) {
        throw degree_mismatch("generator degree does not match group degree");
      }
    }
    for (const Permutation& g : generators) {
      if (!g.is_identity()) insert_generator(g);
    }
    recompute_order();
  }

  int degree() const { return degree_; }

  std::uint64_t order() const { return order_; }

  const std::vector<int>& base() const { return base_; }

  const std::vector<Permutation>& strong_generators() const { return sgens_; }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) {
      throw degree_mismatch("membership test: degree mismatch");
    }
    Permutation residue = p;
    for (const Level& level : levels_) {
      int image = residue[level.base_point];
      int pos = level.orbit_pos[static_cast<std::size_t>(image)];
      if (pos < 0) return false;
      if (image != level.base_point) {
        residue = compose(residue, level.inv_transversal[static_cast<std::size_t>(pos)]);
      }
    }
    return residue.is_identity();
  }

  /// Adds one generator and restores the strong-generating invariant.
  /// Returns false (and does nothing) if the element is already a member.
  bool extend(const Permutation& g) {
    if (g.degree() != degree_) {
      throw degree_mismatch("extend: degree mismatch");
    }
    if (contains(g)) return false;
    insert_generator(g);
    recompute_order();
    return true;
  }

  /// All group elements in a fixed order determined only by the chain:
  /// the mixed-radix product over transversal representatives, level-0
  /// orbit position varying slowest.
  std::vector<Permutation> elements(std::uint64_t budget = kDefaultEnumBudget) const {
    if (order_ > budget) {
      throw budget_exceeded("group order " + std::to_string(order_) +
                            " exceeds enumeration budget " + std::to_string(budget));
    }
    std::vector<Permutation> acc;
    acc.push_back(Permutation::identity(degree_));
    for (std::size_t li = levels_.size(); li-- > 0;) {
      const Level& level = levels_[li];
      std::vector<Permutation> next;
      next.reserve(acc.size() * level.orbit.size());
      for (const Permutation& u : level.transversal) {
        for (const Permutation& h : acc) {
          next.push_back(compose(h, u));
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

  /// Position of p in the elements() ordering, or nullopt if p is not a
  /// member. O(base length × degree); no hashing.
  std::optional<std::uint64_t> index_of(const Permutation& p) const {
    if (p.degree() != degree_) {
      throw degree_mismatch("index_of: degree mismatch");
    }
    Permutation residue = p;
    std::uint64_t index = 0;
    std::uint64_t stride = order_;
    for (const Level& level : levels_) {
      stride /= level.orbit.size();
      int image = residue[level.base_point];
      int pos = level.orbit_pos[static_cast<std::size_t>(image)];
      if (pos < 0) return std::nullopt;
      index += static_cast<std::uint64_t>(pos) * stride;
      if (image != level.base_point) {
        residue = compose(residue, level.inv_transversal[static_cast<std::size_t>(pos)]);
      }
    }
    if (!residue.is_identity()) return std::nullopt;
    return index;
  }

 private:
  struct Level {
    int base_point = -1;
    std::vector<Permutation> gens;  // strong generators fixing all earlier base points
    std::vector<int> orbit;         // BFS discovery order; orbit[0] == base_point
    std::vector<int> orbit_pos;     // point -> position in orbit, -1 if outside
    std::vector<Permutation> transversal;      // by orbit position: base^u = point
    std::vector<Permutation> inv_transversal;  // inverses, same indexing
  };

  // Adds g to the strong set, places it at the levels whose base prefix it
  // fixes, rebuilds affected orbits, and re-verifies Schreier generators.
  // Levels deeper than the insertion point are untouched and stay complete.
  void insert_generator(const Permutation& g) {
    sgens_.push_back(g);
    int j = 0;
    while (j < static_cast<int>(levels_.size()) &&
           g[levels_[static_cast<std::size_t>(j)].base_point] ==
               levels_[static_cast<std::size_t>(j)].base_point) {
      ++j;
    }
    if (j == static_cast<int>(levels_.size())) {
      Level fresh;
      fresh.base_point = g.smallest_moved_point();
      levels_.push_back(std::move(fresh));
      base_.push_back(levels_.back().base_point);
    }
    for (int k = 0; k <= j; ++k) {
      levels_[static_cast<std::size_t>(k)].gens.push_back(g);
      rebuild_orbit(static_cast<std::size_t>(k));
    }
    complete_from(j);
  }

  void rebuild_orbit(std::size_t li) {
    Level& level = levels_[li];
    level.orbit.clear();
    level.orbit_pos.assign(static_cast<std::size_t>(degree_), -1);
    level.transversal.clear();
    level.inv_transversal.clear();
    level.orbit.push_back(level.base_point);
    level.orbit_pos[static_cast<std::size_t>(level.base_point)] = 0;
    level.transversal.push_back(Permutation::identity(degree_));
    level.inv_transversal.push_back(Permutation::identity(degree_));
    for (std::size_t head = 0; head < level.orbit.size(); ++head) {
      int p = level.orbit[head];
      for (const Permutation& s : level.gens) {
        int q = s[p];
        if (level.orbit_pos[static_cast<std::size_t>(q)] < 0) {
          level.orbit_pos[static_cast<std::size_t>(q)] =
              static_cast<int>(level.orbit.size());
          level.orbit.push_back(q);
          Permutation u = compose(level.transversal[head], s);
          level.inv_transversal.push_back(inverse(u));
          level.transversal.push_back(std::move(u));
        }
      }
    }
  }

  // Sifts h through levels start.., returning the residue and the level at
  // which sifting stalled (levels_.size() if h fixes every base point).
  std::pair<Permutation, int> strip(Permutation h, int start) const {
    for (int k = start; k < static_cast<int>(levels_.size()); ++k) {
      const Level& level = levels_[static_cast<std::size_t>(k)];
      int image = h[level.base_point];
      int pos = level.orbit_pos[static_cast<std::size_t>(image)];
      if (pos < 0) return {std::move(h), k};
      if (image != level.base_point) {
        h = compose(h, level.inv_transversal[static_cast<std::size_t>(pos)]);
      }
    }
    return {std::move(h), static_cast<int>(levels_.size())};
  }

  // Verifies every Schreier generator of the level sifts to the identity
  // through the deeper chain. On failure, installs the residue as a new
  // strong generator and returns the level where it was installed; returns
  // -1 when the level is clean.
  int verify_level(int li) {
    Level& level = levels_[static_cast<std::size_t>(li)];
    for (std::size_t oi = 0; oi < level.orbit.size(); ++oi) {
      int p = level.orbit[oi];
      for (std::size_t si = 0; si < level.gens.size(); ++si) {
        const Permutation& s = level.gens[si];
        int q = s[p];
        int qpos = level.orbit_pos[static_cast<std::size_t>(q)];
        Permutation sg = compose(level.transversal[oi], s);
        if (sg == level.transversal[static_cast<std::size_t>(qpos)]) continue;
        Permutation h =
            compose(sg, level.inv_transversal[static_cast<std::size_t>(qpos)]);
        if (h.is_identity()) continue;
        auto [residue, stall] = strip(std::move(h), li + 1);
        if (residue.is_identity()) continue;
        install_residue(std::move(residue), li + 1, stall);
        return stall > static_cast<int>(levels_.size()) - 1
                   ? static_cast<int>(levels_.size()) - 1
                   : stall;
      }
    }
    return -1;
  }

  // Installs a sift residue that fixes base points [0, stall) as a strong
  // generator of levels [from, stall], creating a new deepest level when the
  // residue fixes the whole base.
  void install_residue(Permutation residue, int from, int stall) {
    if (stall == static_cast<int>(levels_.size())) {
      Level fresh;
      fresh.base_point = residue.smallest_moved_point();
      levels_.push_back(std::move(fresh));
      base_.push_back(levels_.back().base_point);
    }
    sgens_.push_back(residue);
    for (int k = from; k <= stall; ++k) {
      levels_[static_cast<std::size_t>(k)].gens.push_back(residue);
      rebuild_orbit(static_cast<std::size_t>(k));
    }
  }

  // Runs the verification sweep from the given level up to the root,
  // descending again whenever a residue is installed deeper.
  void complete_from(int start) {
    int i = start;
    while (i >= 0) {
      int installed_at = verify_level(i);
      if (installed_at >= 0) {
        i = installed_at;
      } else {
        --i;
      }
    }
  }

  void recompute_order() {
    std::uint64_t order = 1;
    for (const Level& level : levels_) {
      std::uint64_t n = level.orbit.size();
      if (order > std::numeric_limits<std::uint64_t>::max() / n) {
        throw budget_exceeded("group order overflows 64 bits");
      }
      order *= n;
    }
    order_ = order;
  }

  int degree_;
  std::vector<int> base_;
  std::vector<Permutation> sgens_;
  std::vector<Level> levels_;
  std::uint64_t order_ = 1;
};

}  // namespace solgraph

#endif  // SOLGRAPH_STABILIZER_CHAIN_HPP
