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

#ifndef SOLGRAPH_GRAPH_HPP
#define SOLGRAPH_GRAPH_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "solgraph/errors.hpp"
#include "solgraph/parallel.hpp"
#include "solgraph/solubility.hpp"

namespace solgraph {

/// Symmetric adjacency bit-matrix with a zero diagonal, packed row-major.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::uint64_t n)
      : n_(n), words_per_row_((n + 63) / 64), bits_(n * words_per_row_, 0) {}

  std::uint64_t size() const { return n_; }
  std::uint64_t words_per_row() const { return words_per_row_; }

  bool get(std::uint64_t i, std::uint64_t j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1;
  }
  void set(std::uint64_t i, std::uint64_t j) {
    row(i)[j >> 6] |= std::uint64_t{1} << (j & 63);
  }

  std::uint64_t* row(std::uint64_t i) { return bits_.data() + i * words_per_row_; }
  const std::uint64_t* row(std::uint64_t i) const {
    return bits_.data() + i * words_per_row_;
  }

  std::uint64_t row_degree(std::uint64_t i) const {
    std::uint64_t c = 0;
    const std::uint64_t* r = row(i);
    for (std::uint64_t w = 0; w < words_per_row_; ++w) {
      c += static_cast<std::uint64_t>(__builtin_popcountll(r[w]));
    }
    return c;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::uint64_t n_ = 0;
  std::uint64_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Iterates the set bits of a packed row, calling fn(index).
template <typename Fn>
inline void for_each_bit(const std::uint64_t* words, std::uint64_t nbits, Fn&& fn) {
  const std::uint64_t nwords = (nbits + 63) / 64;
  for (std::uint64_t w = 0; w < nwords; ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      std::uint64_t b = static_cast<std::uint64_t>(__builtin_ctzll(bits));
      fn(w * 64 + b);
      bits &= bits - 1;
    }
  }
}

/// Γ_S(G) materialized over the non-radical elements, in enumeration order.
struct SolubilityGraph {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> vertex_element_index;  // vertex -> element index
  std::vector<Permutation> vertex_elements;         // vertex -> group element
  BitMatrix adj;
};

/// Builds the solubility graph of a full-graph-tier insoluble group from
/// the class-level solubilizer sets, filling each vertex row by
/// conjugation transport. The result is checked for symmetry.
inline SolubilityGraph build_graph(const SolubilityContext& ctx, int jobs = 1) {
  if (ctx.group_is_soluble()) {
    throw soluble_group_error(
        "the solubility graph of a soluble group has no vertices");
  }
  if (ctx.tier() != Tier::full_graph) {
    throw tier_violation("graph construction requires the full-graph tier");
  }
  SolubilityGraph g;
  const std::uint64_t total = ctx.elements().size();
  std::vector<std::int64_t> vertex_of(total, -1);
  for (std::uint64_t e = 0; e < total; ++e) {
    if (!ctx.in_radical(e)) {
      vertex_of[e] = static_cast<std::int64_t>(g.vertex_element_index.size());
      g.vertex_element_index.push_back(e);
    }
  }
  g.n = g.vertex_element_index.size();
  g.vertex_elements.reserve(g.n);
  for (std::uint64_t v = 0; v < g.n; ++v) {
    g.vertex_elements.push_back(ctx.elements()[g.vertex_element_index[v]]);
  }
  g.adj = BitMatrix(g.n);
  parallel_for(g.n, jobs, [&](std::uint64_t v) {
    DynBitset members = ctx.solubilizer_members(g.vertex_elements[v]);
    for (std::uint64_t e = 0; e < total; ++e) {
      if (!members.test(e)) continue;
      std::int64_t u = vertex_of[e];
      if (u >= 0 && static_cast<std::uint64_t>(u) != v) {
        g.adj.set(v, static_cast<std::uint64_t>(u));
      }
    }
  });
  for (std::uint64_t i = 0; i < g.n; ++i) {
    for (std::uint64_t j = i + 1; j < g.n; ++j) {
      if (g.adj.get(i, j) != g.adj.get(j, i)) {
        throw internal_error("solubility adjacency is not symmetric");
      }
    }
  }
  return g;
}

/// Edges counted directly from the bit-matrix.
inline std::uint64_t direct_edge_count(const SolubilityGraph& g) {
  std::uint64_t twice = 0;
  for (std::uint64_t i = 0; i < g.n; ++i) twice += g.adj.row_degree(i);
  if (twice % 2 != 0) throw internal_error("odd handshake sum");
  return twice / 2;
}

struct GraphMetrics {
  std::uint64_t edge_count = 0;
  std::vector<std::uint64_t> degree_sequence;  // weakly decreasing
  std::uint64_t girth = 0;                     // 0 means acyclic
  bool is_connected = false;
  std::uint64_t diameter = 0;  // valid only when connected
  bool has_k4 = false;
  std::array<std::uint64_t, 4> k4_witness{};
  bool is_regular = false;
  bool dirac_holds = false;
  bool ore_bondy_edge_bound_holds = false;
};

namespace detail {

// BFS over bitset frontiers; returns (eccentricity, number reached).
inline std::pair<std::uint64_t, std::uint64_t> bfs_eccentricity(
    const BitMatrix& adj, std::uint64_t source, std::vector<std::uint64_t>& visited,
    std::vector<std::uint64_t>& frontier, std::vector<std::uint64_t>& next) {
  const std::uint64_t words = adj.words_per_row();
  std::fill(visited.begin(), visited.end(), 0);
  std::fill(frontier.begin(), frontier.end(), 0);
  visited[source >> 6] = std::uint64_t{1} << (source & 63);
  frontier[source >> 6] = visited[source >> 6];
  std::uint64_t reached = 1;
  std::uint64_t depth = 0;
  for (;;) {
    std::fill(next.begin(), next.end(), 0);
    for_each_bit(frontier.data(), adj.size(), [&](std::uint64_t v) {
      const std::uint64_t* row = adj.row(v);
      for (std::uint64_t w = 0; w < words; ++w) next[w] |= row[w];
    });
    bool any = false;
    for (std::uint64_t w = 0; w < words; ++w) {
      next[w] &= ~visited[w];
      if (next[w]) any = true;
    }
    if (!any) break;
    ++depth;
    for (std::uint64_t w = 0; w < words; ++w) {
      visited[w] |= next[w];
      reached += static_cast<std::uint64_t>(__builtin_popcountll(next[w]));
    }
    frontier.swap(next);
  }
  return {depth, reached};
}

// Exact girth by BFS from every vertex: every non-parent edge seen from a
// root closes a walk containing a cycle no longer than the candidate, and
// roots on a shortest cycle realize it.
inline std::uint64_t girth_by_bfs(const BitMatrix& adj) {
  const std::uint64_t n = adj.size();
  std::uint64_t best = 0;
  std::vector<std::int64_t> dist(n), parent(n);
  std::vector<std::uint64_t> queue(n);
  for (std::uint64_t root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::uint64_t head = 0, tail = 0;
    queue[tail++] = root;
    dist[root] = 0;
    while (head < tail) {
      std::uint64_t u = queue[head++];
      for_each_bit(adj.row(u), n, [&](std::uint64_t v) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = static_cast<std::int64_t>(u);
          queue[tail++] = v;
        } else if (parent[u] != static_cast<std::int64_t>(v) &&
                   parent[v] != static_cast<std::int64_t>(u)) {
          std::uint64_t cand =
              static_cast<std::uint64_t>(dist[u] + dist[v]) + 1;
          if (best == 0 || cand < best) best = cand;
        }
      });
    }
  }
  return best;
}

}  // namespace detail

/// Invariants the verifier reasons about. BFS passes run in parallel over
/// source vertices.
inline GraphMetrics compute_metrics(const SolubilityGraph& g, int jobs = 1) {
  GraphMetrics m;
  const std::uint64_t n = g.n;
  m.edge_count = direct_edge_count(g);
  m.degree_sequence.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) m.degree_sequence[i] = g.adj.row_degree(i);
  std::uint64_t min_degree =
      n ? *std::min_element(m.degree_sequence.begin(), m.degree_sequence.end()) : 0;
  std::sort(m.degree_sequence.rbegin(), m.degree_sequence.rend());
  m.is_regular = n > 0 && m.degree_sequence.front() == m.degree_sequence.back();

  // Triangle scan: girth of a solubility graph is expected to be 3.
  const std::uint64_t words = g.adj.words_per_row();
  bool triangle = false;
  for (std::uint64_t i = 0; i < n && !triangle; ++i) {
    for_each_bit(g.adj.row(i), n, [&](std::uint64_t j) {
      if (triangle || j <= i) return;
      const std::uint64_t* ri = g.adj.row(i);
      const std::uint64_t* rj = g.adj.row(j);
      for (std::uint64_t w = 0; w < words; ++w) {
        if (ri[w] & rj[w]) {
          triangle = true;
          return;
        }
      }
    });
  }
  m.girth = triangle ? 3 : detail::girth_by_bfs(g.adj);

  // Connectivity and diameter by all-sources BFS.
  std::vector<std::uint64_t> ecc(n, 0);
  std::vector<char> full(n, 0);
  parallel_for(n, jobs, [&, words](std::uint64_t s) {
    thread_local std::vector<std::uint64_t> visited, frontier, next;
    visited.assign(words, 0);
    frontier.assign(words, 0);
    next.assign(words, 0);
    auto [depth, reached] = detail::bfs_eccentricity(g.adj, s, visited, frontier, next);
    ecc[s] = depth;
    full[s] = reached == n ? 1 : 0;
  });
  m.is_connected = n > 0;
  for (std::uint64_t s = 0; s < n; ++s) {
    if (!full[s]) m.is_connected = false;
  }
  m.diameter = 0;
  if (m.is_connected) {
    for (std::uint64_t s = 0; s < n; ++s) m.diameter = std::max(m.diameter, ecc[s]);
  }

  // K4 witness via a common-neighbour scan over adjacent pairs.
  std::vector<std::uint64_t> common(words);
  for (std::uint64_t i = 0; i < n && !m.has_k4; ++i) {
    for_each_bit(g.adj.row(i), n, [&](std::uint64_t j) {
      if (m.has_k4 || j <= i) return;
      const std::uint64_t* ri = g.adj.row(i);
      const std::uint64_t* rj = g.adj.row(j);
      for (std::uint64_t w = 0; w < words; ++w) common[w] = ri[w] & rj[w];
      for_each_bit(common.data(), n, [&](std::uint64_t k) {
        if (m.has_k4 || k <= j) return;
        const std::uint64_t* rk = g.adj.row(k);
        for (std::uint64_t w = 0; w < words; ++w) {
          std::uint64_t third = common[w] & rk[w];
          if (third) {
            std::uint64_t l =
                w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(third));
            m.has_k4 = true;
            m.k4_witness = {i, j, k, l};
            return;
          }
        }
      });
    });
  }

  m.dirac_holds = n > 0 && 2 * min_degree >= n;
  // |E| ≥ C(n-1, 2) + 1, the edge form of the Ore–Bondy condition.
  if (n >= 2) {
    std::uint64_t bound = (n - 1) * (n - 2) / 2 + 1;
    m.ore_bondy_edge_bound_holds = m.edge_count >= bound;
  }
  return m;
}

/// Edge-list text format: "n m" header, then one "i j" pair per line with
/// i < j, 0-based, ascending. Bit-exact for golden-file tests.
inline std::string to_edge_list(const SolubilityGraph& g) {
  std::ostringstream out;
  out << g.n << ' ' << direct_edge_count(g) << '\n';
  for (std::uint64_t i = 0; i < g.n; ++i) {
    for_each_bit(g.adj.row(i), g.n, [&](std::uint64_t j) {
      if (j > i) out << i << ' ' << j << '\n';
    });
  }
  return out.str();
}

}  // namespace solgraph

#endif  // SOLGRAPH_GRAPH_HPP
