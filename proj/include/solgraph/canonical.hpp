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

// Canonical labeling of dense graphs by individualization-refinement.
//
// Pipeline: vertices with identical closed neighbourhoods (twins) are
// collapsed into weighted super-vertices first — in solubility graphs all
// generators of one cyclic subgroup are such twins, which shrinks the
// instances a lot. The reduced colored graph is canonicalized by weighted
// color refinement plus backtracking individualization, pruning sibling
// branches with verified automorphisms that fix the current search prefix
// pointwise. The search is exact; a node budget guards against blowup.

#ifndef SOLGRAPH_CANONICAL_HPP
#define SOLGRAPH_CANONICAL_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "solgraph/errors.hpp"
#include "solgraph/graph.hpp"

namespace solgraph {

inline constexpr std::uint64_t kDefaultIsoNodeBudget = 1'000'000;

struct GraphCertificate {
  std::vector<std::uint8_t> bytes;  // canonical encoding of the full graph
  std::vector<std::uint64_t> labeling;  // original vertex -> canonical position
  std::uint64_t nodes_explored = 0;
};

/// Thrown when the canonical search exceeds its node budget; carries the
/// stable refinement histogram so callers can still report something.
class iso_budget_exceeded : public budget_exceeded {
 public:
  iso_budget_exceeded(const std::string& what,
                      std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram)
      : budget_exceeded(what), refinement_histogram(std::move(histogram)) {}
  // (twin-class size, refined cell size) pairs in partition order.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> refinement_histogram;
};

namespace detail {

// ---- twin collapse ---------------------------------------------------

struct TwinReduction {
  std::uint64_t n_reduced = 0;
  std::vector<std::vector<std::uint64_t>> members;  // reduced vertex -> originals
  std::vector<std::uint64_t> weight;                // = members[i].size()
  std::vector<std::uint64_t> class_of;              // original -> reduced vertex
  BitMatrix adj;                                    // reduced adjacency
};

inline TwinReduction collapse_twins(const BitMatrix& adj) {
  const std::uint64_t n = adj.size();
  const std::uint64_t words = adj.words_per_row();
  std::vector<std::uint64_t> closed(words);
  std::vector<std::int64_t> rep_of(n, -1);
  TwinReduction red;
  red.class_of.assign(n, 0);
  // Group vertices by identical closed rows, first member wins.
  std::vector<std::vector<std::uint64_t>> closed_rows(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    closed_rows[v].assign(adj.row(v), adj.row(v) + words);
    closed_rows[v][v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  for (std::uint64_t v = 0; v < n; ++v) {
    bool found = false;
    for (std::uint64_t c = 0; c < red.members.size() && !found; ++c) {
      if (closed_rows[red.members[c].front()] == closed_rows[v]) {
        red.members[c].push_back(v);
        red.class_of[v] = c;
        found = true;
      }
    }
    if (!found) {
      red.class_of[v] = red.members.size();
      red.members.push_back({v});
    }
  }
  red.n_reduced = red.members.size();
  red.weight.resize(red.n_reduced);
  for (std::uint64_t c = 0; c < red.n_reduced; ++c) {
    red.weight[c] = red.members[c].size();
  }
  red.adj = BitMatrix(red.n_reduced);
  for (std::uint64_t a = 0; a < red.n_reduced; ++a) {
    for (std::uint64_t b = a + 1; b < red.n_reduced; ++b) {
      if (adj.get(red.members[a].front(), red.members[b].front())) {
        red.adj.set(a, b);
        red.adj.set(b, a);
      }
    }
  }
  return red;
}

// ---- ordered partitions and weighted refinement ----------------------

// Cells are contiguous ranges of `order`; a cell is identified by its start
// index, which is stable for the leading fragment across splits.
struct Partition {
  std::vector<std::uint64_t> order;       // position -> vertex
  std::vector<std::uint64_t> pos;         // vertex -> position
  std::vector<std::uint64_t> cell_start;  // vertex -> start of its cell
  std::vector<std::uint64_t> cell_len;    // start -> length (only valid at starts)

  bool discrete() const { return order.size() == cell_count(); }
  std::uint64_t cell_count() const {
    std::uint64_t c = 0;
    for (std::uint64_t s = 0; s < order.size(); s += cell_len[s]) ++c;
    return c;
  }
};

class Refiner {
 public:
  Refiner(const BitMatrix& adj, const std::vector<std::uint64_t>& weight)
      : adj_(adj), weight_(weight), n_(adj.size()), cnt_(n_, 0), mark_(n_, 0) {}

  // Initial partition: cells grouped by weight, ascending.
  Partition initial_partition() const {
    Partition p;
    p.order.resize(n_);
    std::iota(p.order.begin(), p.order.end(), 0);
    std::stable_sort(p.order.begin(), p.order.end(),
                     [&](std::uint64_t a, std::uint64_t b) {
                       return weight_[a] < weight_[b];
                     });
    p.pos.resize(n_);
    p.cell_start.resize(n_);
    p.cell_len.assign(n_, 0);
    std::uint64_t start = 0;
    for (std::uint64_t i = 0; i < n_; ++i) {
      p.pos[p.order[i]] = i;
      if (i > 0 && weight_[p.order[i]] != weight_[p.order[i - 1]]) start = i;
      p.cell_start[p.order[i]] = start;
      ++p.cell_len[start];
    }
    return p;
  }

  // Equitable refinement w.r.t. weighted neighbour counts, seeded by the
  // given cell starts. Deterministic FIFO processing; new fragments are
  // ordered by ascending count, which is an isomorphism invariant.
  void refine(Partition& p, std::deque<std::uint64_t> queue) const {
    std::vector<char> queued(n_, 0);
    for (std::uint64_t s : queue) queued[s] = 1;
    while (!queue.empty()) {
      std::uint64_t target = queue.front();
      queue.pop_front();
      if (target >= n_ || p.cell_len[target] == 0) continue;
      queued[target] = 0;
      // Weighted counts into the target cell.
      ++epoch_;
      std::vector<std::uint64_t> touched_cells;
      std::uint64_t tlen = p.cell_len[target];
      for (std::uint64_t t = 0; t < tlen; ++t) {
        std::uint64_t u = p.order[target + t];
        for_each_bit(adj_.row(u), n_, [&](std::uint64_t v) {
          if (mark_[v] != epoch_) {
            mark_[v] = epoch_;
            cnt_[v] = 0;
            std::uint64_t cs = p.cell_start[v];
            if (p.cell_len[cs] > 1 && cell_mark_[cs] != epoch_) {
              cell_mark_[cs] = epoch_;
              touched_cells.push_back(cs);
            }
          }
          cnt_[v] += weight_[u];
        });
      }
      std::sort(touched_cells.begin(), touched_cells.end());
      for (std::uint64_t cs : touched_cells) {
        split_cell(p, cs, queue, queued);
      }
    }
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram(
      const Partition& p) const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> h;
    for (std::uint64_t s = 0; s < n_; s += p.cell_len[s]) {
      h.emplace_back(weight_[p.order[s]], p.cell_len[s]);
    }
    return h;
  }

  // Splits the cell of vertex v into [v][rest] and refines from both parts.
  void individualize(Partition& p, std::uint64_t v) const {
    std::uint64_t s = p.cell_start[v];
    std::uint64_t len = p.cell_len[s];
    std::uint64_t vp = p.pos[v];
    std::uint64_t other = p.order[s];
    p.order[s] = v;
    p.order[vp] = other;
    p.pos[v] = s;
    p.pos[other] = vp;
    p.cell_len[s] = 1;
    std::uint64_t rest = s + 1;
    p.cell_len[rest] = len - 1;
    for (std::uint64_t i = rest; i < s + len; ++i) p.cell_start[p.order[i]] = rest;
    refine(p, {s, rest});
  }

 private:
  void split_cell(Partition& p, std::uint64_t cs, std::deque<std::uint64_t>& queue,
                  std::vector<char>& queued) const {
    std::uint64_t len = p.cell_len[cs];
    auto begin = p.order.begin() + static_cast<std::ptrdiff_t>(cs);
    auto end = begin + static_cast<std::ptrdiff_t>(len);
    auto count_of = [&](std::uint64_t v) -> std::uint64_t {
      return mark_[v] == epoch_ ? cnt_[v] : 0;
    };
    std::stable_sort(begin, end, [&](std::uint64_t a, std::uint64_t b) {
      return count_of(a) < count_of(b);
    });
    bool uniform = count_of(*begin) == count_of(*(end - 1));
    if (uniform) return;
    std::uint64_t frag_start = cs;
    for (std::uint64_t i = 0; i < len; ++i) {
      std::uint64_t posn = cs + i;
      std::uint64_t v = p.order[posn];
      if (i > 0 && count_of(v) != count_of(p.order[posn - 1])) {
        p.cell_len[frag_start] = posn - frag_start;
        if (!queued[frag_start]) {
          queued[frag_start] = 1;
          queue.push_back(frag_start);
        }
        frag_start = posn;
      }
      p.pos[v] = posn;
      p.cell_start[v] = frag_start;
    }
    p.cell_len[frag_start] = cs + len - frag_start;
    if (!queued[frag_start]) {
      queued[frag_start] = 1;
      queue.push_back(frag_start);
    }
  }

  const BitMatrix& adj_;
  const std::vector<std::uint64_t>& weight_;
  std::uint64_t n_;
  mutable std::vector<std::uint64_t> cnt_;
  mutable std::vector<std::uint64_t> mark_;
  mutable std::vector<std::uint64_t> cell_mark_ = std::vector<std::uint64_t>(n_, 0);
  mutable std::uint64_t epoch_ = 0;
};

// ---- union-find over reduced vertices --------------------------------

class UnionFind {
 public:
  explicit UnionFind(std::uint64_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::uint64_t find(std::uint64_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint64_t a, std::uint64_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::uint64_t> parent_;
};

// ---- the canonical search --------------------------------------------

class CanonSearch {
 public:
  CanonSearch(const BitMatrix& adj, const std::vector<std::uint64_t>& weight,
              std::uint64_t node_budget)
      : adj_(adj),
        weight_(weight),
        n_(adj.size()),
        budget_(node_budget),
        refiner_(adj, weight) {}

  // Runs the search; returns the canonical ordering of reduced vertices.
  std::vector<std::uint64_t> run() {
    Partition root = refiner_.initial_partition();
    count_node(root);
    refiner_.refine(root, all_cell_starts(root));
    descend(root, {});
    if (best_order_.empty()) throw internal_error("canonical search found no leaf");
    return best_order_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::deque<std::uint64_t> all_cell_starts(const Partition& p) const {
    std::deque<std::uint64_t> q;
    for (std::uint64_t s = 0; s < n_; s += p.cell_len[s]) q.push_back(s);
    return q;
  }

  void count_node(const Partition& p) {
    if (++nodes_ > budget_) {
      throw iso_budget_exceeded(
          "canonical search exceeded the node budget of " + std::to_string(budget_),
          refiner_.histogram(p));
    }
  }

  static std::uint64_t first_smallest_nonsingleton(const Partition& p) {
    std::uint64_t best = 0;
    std::uint64_t best_len = 0;
    for (std::uint64_t s = 0; s < p.order.size(); s += p.cell_len[s]) {
      std::uint64_t len = p.cell_len[s];
      if (len > 1 && (best_len == 0 || len < best_len)) {
        best = s;
        best_len = len;
      }
    }
    return best;
  }

  // Adjacency bits of the reduced graph under the leaf ordering.
  std::vector<std::uint8_t> encode_leaf(const std::vector<std::uint64_t>& order) const {
    std::vector<std::uint8_t> bytes((n_ * (n_ - 1) / 2 + 7) / 8, 0);
    std::uint64_t bit = 0;
    for (std::uint64_t i = 0; i < n_; ++i) {
      for (std::uint64_t j = i + 1; j < n_; ++j, ++bit) {
        if (adj_.get(order[i], order[j])) {
          bytes[bit >> 3] |= static_cast<std::uint8_t>(0x80u >> (bit & 7));
        }
      }
    }
    return bytes;
  }

  void handle_leaf(const Partition& p) {
    std::vector<std::uint64_t> order = p.order;
    std::vector<std::uint8_t> enc = encode_leaf(order);
    if (first_order_.empty()) {
      first_order_ = order;
      first_enc_ = enc;
      best_order_ = order;
      best_enc_ = std::move(enc);
      return;
    }
    if (enc == first_enc_) record_automorphism(first_order_, order);
    if (enc == best_enc_) {
      if (order != best_order_) record_automorphism(best_order_, order);
    } else if (enc < best_enc_) {
      best_order_ = order;
      best_enc_ = std::move(enc);
    }
  }

  // Two orderings with identical encodings define an automorphism of the
  // reduced colored graph; verify before trusting it.
  void record_automorphism(const std::vector<std::uint64_t>& ref,
                           const std::vector<std::uint64_t>& cur) {
    std::vector<std::uint64_t> perm(n_);
    for (std::uint64_t i = 0; i < n_; ++i) perm[ref[i]] = cur[i];
    for (std::uint64_t v = 0; v < n_; ++v) {
      if (weight_[perm[v]] != weight_[v]) {
        throw internal_error("automorphism candidate breaks weights");
      }
    }
    for (std::uint64_t u = 0; u < n_; ++u) {
      for_each_bit(adj_.row(u), n_, [&](std::uint64_t v) {
        if (!adj_.get(perm[u], perm[v])) {
          throw internal_error("automorphism candidate breaks adjacency");
        }
      });
    }
    if (autos_.size() < kMaxStoredAutos) autos_.push_back(std::move(perm));
  }

  void descend(const Partition& p, std::vector<std::uint64_t> prefix) {
    if (p.discrete()) {
      handle_leaf(p);
      return;
    }
    std::uint64_t target = first_smallest_nonsingleton(p);
    std::uint64_t tlen = p.cell_len[target];
    std::vector<std::uint64_t> candidates(p.order.begin() + static_cast<std::ptrdiff_t>(target),
                                          p.order.begin() + static_cast<std::ptrdiff_t>(target + tlen));
    // Build children eagerly so they can be ordered by their refined
    // histograms (cell-size sequences).
    struct Child {
      std::uint64_t vertex;
      Partition partition;
      std::vector<std::pair<std::uint64_t, std::uint64_t>> invariant;
    };
    std::vector<Child> children;
    children.reserve(candidates.size());
    for (std::uint64_t v : candidates) {
      Partition child = p;
      count_node(child);
      refiner_.individualize(child, v);
      std::vector<std::pair<std::uint64_t, std::uint64_t>> inv =
          refiner_.histogram(child);
      children.push_back({v, std::move(child), std::move(inv)});
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) {
                       return a.invariant < b.invariant;
                     });
    std::vector<std::uint64_t> explored;
    for (Child& child : children) {
      if (pruned_by_automorphism(child.vertex, explored, prefix)) continue;
      explored.push_back(child.vertex);
      prefix.push_back(child.vertex);
      descend(child.partition, prefix);
      prefix.pop_back();
    }
  }

  // A sibling can be skipped if a verified automorphism that fixes every
  // individualized vertex of the current prefix maps an already-explored
  // sibling onto it: their subtrees produce identical leaf encodings.
  bool pruned_by_automorphism(std::uint64_t v,
                              const std::vector<std::uint64_t>& explored,
                              const std::vector<std::uint64_t>& prefix) {
    if (explored.empty() || autos_.empty()) return false;
    UnionFind uf(n_);
    for (const auto& a : autos_) {
      bool fixes = true;
      for (std::uint64_t q : prefix) {
        if (a[q] != q) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      for (std::uint64_t x = 0; x < n_; ++x) uf.unite(x, a[x]);
    }
    for (std::uint64_t u : explored) {
      if (uf.find(u) == uf.find(v)) return true;
    }
    return false;
  }

  static constexpr std::size_t kMaxStoredAutos = 2048;

  const BitMatrix& adj_;
  const std::vector<std::uint64_t>& weight_;
  std::uint64_t n_;
  std::uint64_t budget_;
  Refiner refiner_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> first_order_, best_order_;
  std::vector<std::uint8_t> first_enc_, best_enc_;
  std::vector<std::vector<std::uint64_t>> autos_;
};

}  // namespace detail

/// Canonical certificate of an undirected graph: a deterministic encoding
/// (4-byte big-endian vertex count, then the upper triangle of the
/// canonically relabeled adjacency matrix, MSB first) that two graphs share
/// exactly when they are isomorphic.
inline GraphCertificate canonical_certificate(
    const BitMatrix& adj, std::uint64_t node_budget = kDefaultIsoNodeBudget) {
  const std::uint64_t n = adj.size();
  if (n == 0) throw internal_error("canonical certificate of an empty graph");
  detail::TwinReduction red = detail::collapse_twins(adj);
  detail::CanonSearch search(red.adj, red.weight, node_budget);
  std::vector<std::uint64_t> reduced_order = search.run();

  GraphCertificate cert;
  cert.nodes_explored = search.nodes();
  // Expand: members of each reduced class are interchangeable (identical
  // closed neighbourhoods), so ascending original index is as canonical as
  // any other choice.
  std::vector<std::uint64_t> full_order;
  full_order.reserve(n);
  for (std::uint64_t r : reduced_order) {
    std::vector<std::uint64_t> members = red.members[r];
    std::sort(members.begin(), members.end());
    full_order.insert(full_order.end(), members.begin(), members.end());
  }
  cert.labeling.assign(n, 0);
  for (std::uint64_t posn = 0; posn < n; ++posn) cert.labeling[full_order[posn]] = posn;

  cert.bytes.reserve(4 + (n * (n - 1) / 2 + 7) / 8);
  for (int shift = 24; shift >= 0; shift -= 8) {
    cert.bytes.push_back(static_cast<std::uint8_t>((n >> shift) & 0xff));
  }
  std::uint64_t bit = 0;
  std::uint8_t current = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = i + 1; j < n; ++j, ++bit) {
      if (adj.get(full_order[i], full_order[j])) {
        current |= static_cast<std::uint8_t>(0x80u >> (bit & 7));
      }
      if ((bit & 7) == 7) {
        cert.bytes.push_back(current);
        current = 0;
      }
    }
  }
  if (bit & 7) cert.bytes.push_back(current);
  return cert;
}

inline std::string certificate_hex(const GraphCertificate& cert) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(cert.bytes.size() * 2);
  for (std::uint8_t b : cert.bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

struct IsoResult {
  bool isomorphic = false;
  std::vector<std::uint64_t> bijection;  // vertex of g1 -> vertex of g2
  std::uint64_t nodes_explored = 0;
};

/// Isomorphism test: cheap invariant rejection, then certificate equality.
/// A positive verdict is never returned on certificate equality alone — the
/// induced bijection is re-verified edge by edge first.
inline IsoResult are_isomorphic(const BitMatrix& a, const BitMatrix& b,
                                std::uint64_t node_budget = kDefaultIsoNodeBudget) {
  IsoResult res;
  if (a.size() != b.size()) return res;
  const std::uint64_t n = a.size();
  std::vector<std::uint64_t> da(n), db(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    da[i] = a.row_degree(i);
    db[i] = b.row_degree(i);
  }
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return res;
  {
    detail::TwinReduction ra = detail::collapse_twins(a);
    detail::TwinReduction rb = detail::collapse_twins(b);
    detail::Refiner fa(ra.adj, ra.weight);
    detail::Refiner fb(rb.adj, rb.weight);
    detail::Partition pa = fa.initial_partition();
    detail::Partition pb = fb.initial_partition();
    std::deque<std::uint64_t> qa, qb;
    for (std::uint64_t s = 0; s < ra.n_reduced; s += pa.cell_len[s]) qa.push_back(s);
    for (std::uint64_t s = 0; s < rb.n_reduced; s += pb.cell_len[s]) qb.push_back(s);
    fa.refine(pa, qa);
    fb.refine(pb, qb);
    if (fa.histogram(pa) != fb.histogram(pb)) return res;
  }
  GraphCertificate ca = canonical_certificate(a, node_budget);
  GraphCertificate cb = canonical_certificate(b, node_budget);
  res.nodes_explored = ca.nodes_explored + cb.nodes_explored;
  if (ca.bytes != cb.bytes) return res;

  // labeling: vertex -> position; bijection = cb^{-1} ∘ ca.
  std::vector<std::uint64_t> order_b(n);
  for (std::uint64_t v = 0; v < n; ++v) order_b[cb.labeling[v]] = v;
  res.bijection.resize(n);
  std::vector<char> seen(n, 0);
  for (std::uint64_t v = 0; v < n; ++v) {
    std::uint64_t w = order_b[ca.labeling[v]];
    res.bijection[v] = w;
    if (seen[w]) throw internal_error("isomorphism bijection is not injective");
    seen[w] = 1;
  }
  for (std::uint64_t u = 0; u < n; ++u) {
    for (std::uint64_t v = u + 1; v < n; ++v) {
      if (a.get(u, v) != b.get(res.bijection[u], res.bijection[v])) {
        throw internal_error(
            "certificates matched but the induced bijection breaks an edge");
      }
    }
  }
  res.isomorphic = true;
  return res;
}

}  // namespace solgraph

#endif  // SOLGRAPH_CANONICAL_HPP
