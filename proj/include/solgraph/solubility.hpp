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

#ifndef SOLGRAPH_SOLUBILITY_HPP
#define SOLGRAPH_SOLUBILITY_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "solgraph/errors.hpp"
#include "solgraph/parallel.hpp"
#include "solgraph/perm_group.hpp"
#include "solgraph/rational.hpp"

namespace solgraph {

enum class Tier { full_graph, invariant_only };

inline const char* tier_name(Tier t) {
  return t == Tier::full_graph ? "full-graph" : "invariant-only";
}

struct SolubilityOptions {
  std::uint64_t enum_budget = kDefaultEnumBudget;
  std::uint64_t pair_budget = 50'000'000;
  int jobs = 1;
};

/// Euler totient by trial factorization.
inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Dynamic bitset sized at construction; used for element sets and
/// adjacency rows.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::uint64_t bits)
      : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::uint64_t size() const { return bits_; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint64_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
  }
  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const DynBitset& a, const DynBitset& b) {
    return a.bits_ == b.bits_ && a.words_ == b.words_;
  }

 private:
  std::uint64_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Weakly decreasing vertex-degree data of the solubility graph: the degree
/// pattern D_s(G) together with δ_s (minimum) and Δ_s (maximum).
struct DegreeData {
  std::uint64_t n = 0;                    // |G| - |R(G)|
  std::vector<std::uint64_t> pattern;     // length n, weakly decreasing
  std::uint64_t min_degree = 0;           // δ_s, last entry
  std::uint64_t max_degree = 0;           // Δ_s, first entry
  std::vector<std::uint64_t> degree_set;  // distinct degrees, decreasing
};

namespace detail {

/// Concurrent memo of pair-solubility verdicts with insert-if-absent
/// semantics; values are a pure function of the key, so racing inserts
/// cannot disagree.
class PairCache {
 public:
  std::optional<bool> find(std::uint64_t key) const {
    const Shard& s = shard(key);
    std::lock_guard<std::mutex> lock(s.mutex);
    auto it = s.map.find(key);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }
  void insert(std::uint64_t key, bool value) {
    Shard& s = shard(key);
    std::lock_guard<std::mutex> lock(s.mutex);
    s.map.emplace(key, value);
  }
  std::uint64_t entries() const {
    std::uint64_t n = 0;
    for (const Shard& s : shards_) {
      std::lock_guard<std::mutex> lock(s.mutex);
      n += s.map.size();
    }
    return n;
  }

 private:
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<std::uint64_t, bool> map;
  };
  Shard& shard(std::uint64_t key) { return shards_[key % kShards]; }
  const Shard& shard(std::uint64_t key) const { return shards_[key % kShards]; }
  static constexpr std::size_t kShards = 64;
  std::array<Shard, kShards> shards_;
};

}  // namespace detail

/// A group together with everything the solubility graph is built from:
/// its soluble radical, conjugacy classes, per-class solubilizer orders
/// (and member sets in the full-graph tier), and a shared memo of
/// two-generator solubility verdicts.
class SolubilityContext {
 public:
  SolubilityContext(PermutationGroup group, Tier tier,
                    const SolubilityOptions& opts = {})
      : group_(std::move(group)), tier_(tier), opts_(opts) {
    group_soluble_ = is_soluble(group_);
    elements_ = group_.elements(opts_.enum_budget);
    classes_ = conjugacy_classes(group_, elements_);
    radical_ = std::make_unique<PermutationGroup>(
        compute_radical_primary(group_, classes_));
    radical_order_ = radical_->order();
    in_radical_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      in_radical_[i] = radical_->contains(elements_[i]) ? 1 : 0;
    }
    norm_index_.resize(elements_.size());
    for (std::uint64_t i = 0; i < elements_.size(); ++i) {
      auto j = group_.element_index(inverse(elements_[i]));
      if (!j) throw internal_error("inverse left the group");
      norm_index_[i] = std::min<std::uint64_t>(i, *j);
    }
    compute_solubilizers();
  }

  const PermutationGroup& group() const { return group_; }
  Tier tier() const { return tier_; }
  bool group_is_soluble() const { return group_soluble_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  const ConjugacyClasses& classes() const { return classes_; }
  const PermutationGroup& radical() const { return *radical_; }
  std::uint64_t radical_order() const { return radical_order_; }
  std::uint64_t order() const { return elements_.size(); }

  std::uint64_t element_index(const Permutation& x) const {
    auto idx = group_.element_index(x);
    if (!idx) throw membership_error("element is not in the group");
    return *idx;
  }

  bool in_radical(std::uint64_t element_index) const {
    return in_radical_[element_index] != 0;
  }
  bool in_radical(const Permutation& x) const {
    return in_radical(element_index(x));
  }

  /// True iff ⟨x, y⟩ is soluble. Memoized under a key symmetric in (x, y)
  /// and invariant under replacing either element by its inverse. Safe to
  /// call concurrently.
  bool pair_soluble(const Permutation& x, const Permutation& y) const {
    return pair_soluble_by_index(element_index(x), element_index(y));
  }

  bool pair_soluble_by_index(std::uint64_t xi, std::uint64_t yi) const {
    std::uint64_t a = normalized_index(xi);
    std::uint64_t b = normalized_index(yi);
    if (a > b) std::swap(a, b);
    std::uint64_t key = a * elements_.size() + b;
    if (auto hit = cache_.find(key)) return *hit;
    bool value = pair_soluble_fresh(elements_[a], elements_[b]);
    cache_.insert(key, value);
    return value;
  }

  /// Uncached, un-normalized verdict; the brute-force oracles use this to
  /// stay independent of the memoization layer.
  bool pair_soluble_fresh(const Permutation& x, const Permutation& y) const {
    std::uint64_t used = pair_tests_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (used > opts_.pair_budget) {
      throw budget_exceeded("pair-solubility budget exceeded (" +
                            std::to_string(opts_.pair_budget) + " tests)");
    }
    PermutationGroup H = generated_subgroup(group_.degree(), {x, y});
    if (H.order() == elements_.size()) return group_soluble_;
    return is_soluble(H);
  }

  std::uint64_t pair_tests_used() const {
    return pair_tests_.load(std::memory_order_relaxed);
  }

  /// |Sol_G(x)|, constant on conjugacy classes.
  std::uint64_t solubilizer_order(const Permutation& x) const {
    return sol_order_by_class_[static_cast<std::size_t>(
        classes_.class_of[element_index(x)])];
  }
  std::uint64_t solubilizer_order_of_class(std::size_t c) const {
    return sol_order_by_class_[c];
  }

  /// Member set of Sol_G(rep) for a class representative, over element
  /// indices. Full-graph tier only.
  const DynBitset& solubilizer_members_of_class(std::size_t c) const {
    require_full_tier();
    return sol_members_by_class_[c];
  }

  /// Member set of Sol_G(x) obtained by conjugating the class
  /// representative's set. Full-graph tier only.
  DynBitset solubilizer_members(const Permutation& x) const {
    require_full_tier();
    std::uint64_t xi = element_index(x);
    std::size_t c = static_cast<std::size_t>(classes_.class_of[xi]);
    const Permutation& w = classes_.witnesses[xi];  // rep^w = x
    const DynBitset& base = sol_members_by_class_[c];
    if (w.is_identity()) return base;
    DynBitset out(elements_.size());
    for (std::uint64_t s = 0; s < elements_.size(); ++s) {
      if (!base.test(s)) continue;
      auto t = group_.element_index(conjugate(elements_[s], w));
      if (!t) throw internal_error("conjugation left the group");
      out.set(*t);
    }
    return out;
  }

  /// deg(x) = |Sol_G(x)| − |R(G)| − 1; only defined off the radical.
  std::uint64_t vertex_degree(const Permutation& x) const {
    std::uint64_t xi = element_index(x);
    if (in_radical_[xi]) {
      throw membership_error(
          "vertex_degree: element lies in the soluble radical (not a vertex)");
    }
    return sol_order_by_class_[static_cast<std::size_t>(classes_.class_of[xi])] -
           radical_order_ - 1;
  }

  DegreeData degree_data() const {
    DegreeData d;
    d.n = elements_.size() - radical_order_;
    for (std::size_t c = 0; c < classes_.count(); ++c) {
      std::uint64_t rep_index = element_index(classes_.representatives[c]);
      if (in_radical_[rep_index]) continue;
      std::uint64_t deg = sol_order_by_class_[c] - radical_order_ - 1;
      d.pattern.insert(d.pattern.end(), classes_.class_sizes[c], deg);
    }
    std::sort(d.pattern.rbegin(), d.pattern.rend());
    if (!d.pattern.empty()) {
      d.max_degree = d.pattern.front();
      d.min_degree = d.pattern.back();
      d.degree_set = d.pattern;
      d.degree_set.erase(std::unique(d.degree_set.begin(), d.degree_set.end()),
                         d.degree_set.end());
    }
    return d;
  }

  /// P_s(G) = Σ_x |Sol_G(x)| / |G|², exactly.
  Rational solubility_degree() const {
    BigInt sum = 0;
    for (std::size_t c = 0; c < classes_.count(); ++c) {
      sum += BigInt(classes_.class_sizes[c]) * BigInt(sol_order_by_class_[c]);
    }
    BigInt n(static_cast<std::uint64_t>(elements_.size()));
    return Rational(sum, n * n);
  }

  /// Pr(G) = k(G)/|G|, exactly.
  Rational commutativity_degree() const {
    return Rational(BigInt(static_cast<std::uint64_t>(classes_.count())),
                    BigInt(static_cast<std::uint64_t>(elements_.size())));
  }

 private:
  void require_full_tier() const {
    if (tier_ != Tier::full_graph) {
      throw tier_violation(
          "solubilizer member sets require the full-graph tier");
    }
  }

  std::uint64_t normalized_index(std::uint64_t i) const {
    return norm_index_[i];
  }

  // R(G) is generated by the class representatives whose normal closure is
  // soluble, closed under normal closure.
  static PermutationGroup compute_radical_primary(const PermutationGroup& G,
                                                  const ConjugacyClasses& classes) {
    std::vector<Permutation> seeds;
    for (const Permutation& rep : classes.representatives) {
      if (rep.is_identity()) continue;
      if (is_soluble(normal_closure(G, {rep}))) seeds.push_back(rep);
    }
    PermutationGroup radical = normal_closure(G, seeds);
    if (!is_soluble(radical)) {
      throw internal_error("soluble radical candidate is insoluble");
    }
    return radical;
  }

  void compute_solubilizers() {
    const std::uint64_t n = elements_.size();
    const std::size_t nclasses = classes_.count();
    const std::uint64_t words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> words_by_class(
        nclasses, std::vector<std::uint64_t>(words, 0));
    parallel_for(nclasses * words, opts_.jobs, [&](std::uint64_t task) {
      const std::size_t c = static_cast<std::size_t>(task / words);
      const std::uint64_t w = task % words;
      const std::uint64_t rep_index =
          *group_.element_index(classes_.representatives[c]);
      std::uint64_t bits = 0;
      for (std::uint64_t b = 0; b < 64; ++b) {
        std::uint64_t y = w * 64 + b;
        if (y >= n) break;
        if (pair_soluble_by_index(rep_index, y)) bits |= std::uint64_t{1} << b;
      }
      words_by_class[c][w] = bits;
    });
    sol_order_by_class_.resize(nclasses);
    for (std::size_t c = 0; c < nclasses; ++c) {
      std::uint64_t count = 0;
      for (std::uint64_t w : words_by_class[c]) {
        count += static_cast<std::uint64_t>(__builtin_popcountll(w));
      }
      sol_order_by_class_[c] = count;
    }
    if (tier_ == Tier::full_graph) {
      sol_members_by_class_.reserve(nclasses);
      for (std::size_t c = 0; c < nclasses; ++c) {
        DynBitset set(n);
        set.words() = std::move(words_by_class[c]);
        sol_members_by_class_.push_back(std::move(set));
      }
    }
  }

  PermutationGroup group_;
  Tier tier_;
  SolubilityOptions opts_;
  bool group_soluble_ = false;
  std::vector<Permutation> elements_;
  ConjugacyClasses classes_;
  std::unique_ptr<PermutationGroup> radical_;
  std::uint64_t radical_order_ = 1;
  std::vector<char> in_radical_;
  std::vector<std::uint64_t> norm_index_;
  std::vector<std::uint64_t> sol_order_by_class_;
  std::vector<DynBitset> sol_members_by_class_;
  mutable detail::PairCache cache_;
  mutable std::atomic<std::uint64_t> pair_tests_{0};
};

/// Largest soluble normal subgroup, by the normal-closure-of-class-reps
/// algorithm. Standalone variant for callers without a context.
inline PermutationGroup soluble_radical(const PermutationGroup& G,
                                        std::uint64_t enum_budget = kDefaultEnumBudget) {
  ConjugacyClasses classes = conjugacy_classes(G, G.elements(enum_budget));
  std::vector<Permutation> seeds;
  for (const Permutation& rep : classes.representatives) {
    if (rep.is_identity()) continue;
    if (is_soluble(normal_closure(G, {rep}))) seeds.push_back(rep);
  }
  PermutationGroup radical = normal_closure(G, seeds);
  if (!is_soluble(radical)) {
    throw internal_error("soluble radical candidate is insoluble");
  }
  return radical;
}

/// Independent radical characterization: R(G) = {x : ⟨x,y⟩ soluble for all y}.
/// Scans per element for |G| ≤ 1000, per class representative above that
/// (membership in the intersection is a class property).
inline PermutationGroup soluble_radical_by_solubilizer_intersection(
    const SolubilityContext& ctx) {
  const auto& elements = ctx.elements();
  const std::uint64_t n = elements.size();
  std::vector<std::uint64_t> member_indices;
  auto in_every_solubilizer = [&](std::uint64_t xi) {
    for (std::uint64_t y = 0; y < n; ++y) {
      if (!ctx.pair_soluble_by_index(xi, y)) return false;
    }
    return true;
  };
  if (n <= 1000) {
    for (std::uint64_t i = 0; i < n; ++i) {
      if (in_every_solubilizer(i)) member_indices.push_back(i);
    }
  } else {
    const auto& classes = ctx.classes();
    std::vector<char> class_in(classes.count(), 0);
    for (std::size_t c = 0; c < classes.count(); ++c) {
      class_in[c] =
          in_every_solubilizer(ctx.element_index(classes.representatives[c]))
              ? 1
              : 0;
    }
    for (std::uint64_t i = 0; i < n; ++i) {
      if (class_in[static_cast<std::size_t>(classes.class_of[i])]) {
        member_indices.push_back(i);
      }
    }
  }
  std::vector<Permutation> gens;
  gens.reserve(member_indices.size());
  for (std::uint64_t i : member_indices) gens.push_back(elements[i]);
  PermutationGroup R = generated_subgroup(ctx.group().degree(), std::move(gens));
  if (R.order() != member_indices.size()) {
    throw internal_error(
        "solubilizer intersection is not closed under multiplication");
  }
  return R;
}

/// 2|E| = |G|² P_s + |R|² + |R| − |G|(2|R| + 1), solved for |E| in exact
/// arithmetic. A non-integral or odd intermediate signals an upstream bug.
inline std::uint64_t edge_count_from_formula(std::uint64_t group_order,
                                             const Rational& ps,
                                             std::uint64_t radical_order) {
  BigInt g(group_order), r(radical_order);
  Rational twice =
      ps * Rational(g * g, 1) + Rational(r * r + r - g * (2 * r + 1), 1);
  if (!twice.is_integer() || twice.numerator() < 0 ||
      twice.numerator() % 2 != 0) {
    throw internal_error("edge formula produced a non-integral or odd value: " +
                         twice.str());
  }
  return static_cast<std::uint64_t>(twice.numerator() / 2);
}

}  // namespace solgraph

#endif  // SOLGRAPH_SOLUBILITY_HPP
