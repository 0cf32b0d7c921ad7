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

#ifndef SOLGRAPH_PERM_GROUP_HPP
#define SOLGRAPH_PERM_GROUP_HPP

#include <cstdint>
#include <deque>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "solgraph/errors.hpp"
#include "solgraph/permutation.hpp"
#include "solgraph/stabilizer_chain.hpp"

namespace solgraph {

/// A finite permutation group given by generators. The stabilizer chain is
/// built on first use behind a shared once-flag, after which the object is
/// immutable; copies share the chain and every const operation is safe to
/// call concurrently.
class PermutationGroup {
 public:
  PermutationGroup(int degree, std::vector<Permutation> generators)
      : degree_(degree),
        gens_(std::move(generators)),
        box_(std::make_shared<ChainBox>()) {
    for (const Permutation& g : gens_) {
      if (g.degree() != degree_) {
        throw degree_mismatch("generator degree does not match group degree");
      }
    }
  }

  static PermutationGroup trivial(int degree) {
    return PermutationGroup(degree, {});
  }

  int degree() const { return degree_; }

  const std::vector<Permutation>& generators() const { return gens_; }

  const StabilizerChain& chain() const {
    std::call_once(box_->built, [this] {
      box_->chain = std::make_unique<StabilizerChain>(degree_, gens_);
    });
    return *box_->chain;
  }

  std::uint64_t order() const { return chain().order(); }

  bool is_trivial() const { return order() == 1; }

  bool contains(const Permutation& p) const { return chain().contains(p); }

  std::vector<Permutation> elements(std::uint64_t budget = kDefaultEnumBudget) const {
    return chain().elements(budget);
  }

  /// Index in the deterministic element enumeration; nullopt for non-members.
  std::optional<std::uint64_t> element_index(const Permutation& p) const {
    return chain().index_of(p);
  }

  /// Same underlying subgroup of the same symmetric group, independent of
  /// the generating sets.
  bool same_group_as(const PermutationGroup& other) const {
    if (degree_ != other.degree_ || order() != other.order()) return false;
    for (const Permutation& g : gens_) {
      if (!other.contains(g)) return false;
    }
    return true;
  }

  bool is_subgroup_of(const PermutationGroup& other) const {
    if (degree_ != other.degree_) return false;
    for (const Permutation& g : gens_) {
      if (!other.contains(g)) return false;
    }
    return true;
  }

 private:
  struct ChainBox {
    std::once_flag built;
    std::unique_ptr<StabilizerChain> chain;
  };

  friend PermutationGroup adopt_chain(int, std::vector<Permutation>,
                                      std::unique_ptr<StabilizerChain>);

  int degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<ChainBox> box_;
};

/// Wraps an already-built chain (used by closure algorithms that extend a
/// chain incrementally and then freeze it).
inline PermutationGroup adopt_chain(int degree, std::vector<Permutation> gens,
                                    std::unique_ptr<StabilizerChain> chain) {
  PermutationGroup g(degree, std::move(gens));
  g.box_->chain = std::move(chain);
  std::call_once(g.box_->built, [] {});
  return g;
}

/// The subgroup generated by the given permutations.
inline PermutationGroup generated_subgroup(int degree,
                                           std::vector<Permutation> gens) {
  return PermutationGroup(degree, std::move(gens));
}

/// Smallest normal subgroup of G containing the seed elements.
inline PermutationGroup normal_closure(const PermutationGroup& G,
                                       const std::vector<Permutation>& seeds) {
  for (const Permutation& s : seeds) {
    if (!G.contains(s)) {
      throw membership_error("normal_closure: seed element is not in the group");
    }
  }
  std::vector<Permutation> closure_gens;
  auto chain = std::make_unique<StabilizerChain>(G.degree(),
                                                 std::vector<Permutation>{});
  std::deque<Permutation> pending;
  for (const Permutation& s : seeds) {
    if (!s.is_identity() && chain->extend(s)) {
      closure_gens.push_back(s);
      pending.push_back(s);
    }
  }
  while (!pending.empty()) {
    Permutation t = std::move(pending.front());
    pending.pop_front();
    for (const Permutation& g : G.generators()) {
      Permutation c = conjugate(t, g);
      if (chain->extend(c)) {
        closure_gens.push_back(c);
        pending.push_back(c);
      }
    }
  }
  return adopt_chain(G.degree(), std::move(closure_gens), std::move(chain));
}

/// The commutator subgroup: normal closure of the generator commutators.
inline PermutationGroup derived_subgroup(const PermutationGroup& G) {
  std::vector<Permutation> comms;
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      Permutation c = commutator(gens[i], gens[j]);
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  }
  return normal_closure(G, comms);
}

/// True iff the derived series reaches the trivial group.
inline bool is_soluble(const PermutationGroup& G) {
  PermutationGroup cur = G;
  // The series strictly descends while proper, so 64 steps bound any group
  // whose order fits in 64 bits.
  for (int step = 0; step < 64; ++step) {
    std::uint64_t n = cur.order();
    if (n == 1) return true;
    PermutationGroup next = derived_subgroup(cur);
    if (next.order() == n) return false;  // perfect and nontrivial
    cur = std::move(next);
  }
  throw internal_error("derived series failed to stabilize");
}

inline bool is_abelian(const PermutationGroup& G) {
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (compose(gens[i], gens[j]) != compose(gens[j], gens[i])) return false;
    }
  }
  return true;
}

/// Complete conjugacy-class decomposition over a precomputed element list.
/// Representatives are the class members of minimal enumeration index, and
/// each element carries a witness w with rep^w = element.
struct ConjugacyClasses {
  std::vector<Permutation> representatives;
  std::vector<std::uint64_t> class_sizes;
  std::vector<int> class_of;           // element index -> class index
  std::vector<Permutation> witnesses;  // element index -> conjugator from its rep

  std::size_t count() const { return representatives.size(); }
};

inline ConjugacyClasses conjugacy_classes(
    const PermutationGroup& G, const std::vector<Permutation>& elements) {
  ConjugacyClasses out;
  const std::size_t n = elements.size();
  out.class_of.assign(n, -1);
  out.witnesses.assign(n, Permutation::identity(G.degree()));
  for (std::size_t i = 0; i < n; ++i) {
    if (out.class_of[i] >= 0) continue;
    int cls = static_cast<int>(out.representatives.size());
    out.representatives.push_back(elements[i]);
    out.class_of[i] = cls;
    std::uint64_t size = 1;
    std::deque<std::uint64_t> queue{i};
    while (!queue.empty()) {
      std::uint64_t j = queue.front();
      queue.pop_front();
      for (const Permutation& g : G.generators()) {
        Permutation c = conjugate(elements[j], g);
        auto k = G.element_index(c);
        if (!k) throw internal_error("conjugate left the group");
        if (out.class_of[*k] < 0) {
          out.class_of[*k] = cls;
          out.witnesses[*k] = compose(out.witnesses[j], g);
          ++size;
          queue.push_back(*k);
        }
      }
    }
    out.class_sizes.push_back(size);
  }
  return out;
}

inline ConjugacyClasses conjugacy_classes(
    const PermutationGroup& G, std::uint64_t budget = kDefaultEnumBudget) {
  return conjugacy_classes(G, G.elements(budget));
}

/// Nontrivial group whose only normal subgroups are itself and the trivial
/// group, decided by normal closures of class representatives.
inline bool is_simple(const PermutationGroup& G, const ConjugacyClasses& classes) {
  std::uint64_t n = G.order();
  if (n == 1) return false;
  for (const Permutation& rep : classes.representatives) {
    if (rep.is_identity()) continue;
    if (normal_closure(G, {rep}).order() != n) return false;
  }
  return true;
}

/// G/N realized as the action of G on the right cosets of N, together with
/// the projection map.
class QuotientMap {
 public:
  QuotientMap(PermutationGroup domain, PermutationGroup kernel)
      : domain_(std::move(domain)), kernel_(std::move(kernel)) {
    if (kernel_.degree() != domain_.degree()) {
      throw degree_mismatch("quotient: kernel degree differs from group degree");
    }
    if (!kernel_.is_subgroup_of(domain_)) {
      throw membership_error("quotient: kernel is not a subgroup");
    }
    for (const Permutation& k : kernel_.generators()) {
      for (const Permutation& g : domain_.generators()) {
        if (!kernel_.contains(conjugate(k, g))) {
          throw membership_error("quotient: subgroup is not normal");
        }
      }
    }
    build_cosets();
    std::vector<Permutation> image_gens;
    image_gens.reserve(domain_.generators().size());
    for (const Permutation& g : domain_.generators()) {
      image_gens.push_back(action_of(g));
    }
    image_ = std::make_unique<PermutationGroup>(
        static_cast<int>(reps_.size()), std::move(image_gens));
    if (image_->order() * kernel_.order() != domain_.order()) {
      throw internal_error("quotient: |image| * |kernel| != |group|");
    }
  }

  const PermutationGroup& domain() const { return domain_; }
  const PermutationGroup& kernel() const { return kernel_; }
  const PermutationGroup& image() const { return *image_; }
  const std::vector<Permutation>& coset_representatives() const { return reps_; }

  /// The projection: x ↦ action of x on the cosets of the kernel.
  Permutation map(const Permutation& x) const {
    if (!domain_.contains(x)) {
      throw membership_error("quotient map: element is not in the group");
    }
    return action_of(x);
  }

 private:
  void build_cosets() {
    reps_.push_back(Permutation::identity(domain_.degree()));
    for (std::size_t head = 0; head < reps_.size(); ++head) {
      for (const Permutation& g : domain_.generators()) {
        Permutation candidate = compose(reps_[head], g);
        if (coset_index(candidate) < 0) reps_.push_back(std::move(candidate));
      }
    }
  }

  int coset_index(const Permutation& x) const {
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      // Nr == Nx iff x r^{-1} ∈ N.
      if (kernel_.contains(compose(x, inverse(reps_[i])))) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }

  Permutation action_of(const Permutation& x) const {
    std::vector<int> im(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      int j = coset_index(compose(reps_[i], x));
      if (j < 0) throw internal_error("coset action left the coset space");
      im[i] = j;
    }
    return Permutation(std::move(im));
  }

  PermutationGroup domain_;
  PermutationGroup kernel_;
  std::unique_ptr<PermutationGroup> image_;
  std::vector<Permutation> reps_;
};

inline QuotientMap quotient(const PermutationGroup& G, const PermutationGroup& N) {
  return QuotientMap(G, N);
}

inline Permutation embed_left(const Permutation& p, int right_degree) {
  std::vector<int> im(static_cast<std::size_t>(p.degree() + right_degree));
  for (int i = 0; i < p.degree(); ++i) im[static_cast<std::size_t>(i)] = p[i];
  for (int i = 0; i < right_degree; ++i) {
    im[static_cast<std::size_t>(p.degree() + i)] = p.degree() + i;
  }
  return Permutation(std::move(im));
}

inline Permutation embed_right(const Permutation& p, int left_degree) {
  std::vector<int> im(static_cast<std::size_t>(left_degree + p.degree()));
  for (int i = 0; i < left_degree; ++i) im[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < p.degree(); ++i) {
    im[static_cast<std::size_t>(left_degree + i)] = left_degree + p[i];
  }
  return Permutation(std::move(im));
}

/// G × H acting on the disjoint union of the two point sets.
inline PermutationGroup direct_product(const PermutationGroup& G,
                                       const PermutationGroup& H) {
  std::vector<Permutation> gens;
  gens.reserve(G.generators().size() + H.generators().size());
  for (const Permutation& g : G.generators()) {
    gens.push_back(embed_left(g, H.degree()));
  }
  for (const Permutation& h : H.generators()) {
    gens.push_back(embed_right(h, G.degree()));
  }
  return PermutationGroup(G.degree() + H.degree(), std::move(gens));
}

/// Generator-file format: one permutation per line in 1-based cycle
/// notation; blank lines and '#' comments ignored; optional leading
/// "degree N" header, otherwise the degree is the largest point mentioned.
inline PermutationGroup read_generator_source(std::istream& in) {
  std::vector<std::string> lines;
  int declared_degree = -1;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r\n");
    line = line.substr(a, b - a + 1);
    if (line.rfind("degree", 0) == 0) {
      std::istringstream hs(line.substr(6));
      if (!(hs >> declared_degree) || declared_degree < 0) {
        throw parse_error("bad degree header in generator file");
      }
      continue;
    }
    lines.push_back(line);
  }
  int max_point = 0;
  std::vector<Permutation> raw;
  raw.reserve(lines.size());
  for (const std::string& text : lines) {
    Permutation p = Permutation::from_cycles(text);
    max_point = std::max(max_point, p.degree());
    raw.push_back(std::move(p));
  }
  int degree = declared_degree >= 0 ? declared_degree : max_point;
  if (max_point > degree) {
    throw parse_error("generator mentions a point beyond the declared degree");
  }
  std::vector<Permutation> gens;
  gens.reserve(raw.size());
  for (const Permutation& p : raw) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
      im[static_cast<std::size_t>(i)] = i < p.degree() ? p[i] : i;
    }
    gens.push_back(Permutation(std::move(im)));
  }
  return PermutationGroup(degree, std::move(gens));
}

}  // namespace solgraph

#endif  // SOLGRAPH_PERM_GROUP_HPP
