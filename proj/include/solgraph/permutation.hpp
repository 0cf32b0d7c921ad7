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

#ifndef SOLGRAPH_PERMUTATION_HPP
#define SOLGRAPH_PERMUTATION_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "solgraph/errors.hpp"

namespace solgraph {

/// A permutation of {0, …, degree−1}, stored as its image table.
///
/// Points are 0-based internally; all textual I/O uses 1-based disjoint
/// cycle notation, so "(1 2 3)" maps point 0 to 1.
///
/// Composition convention (used everywhere in this library): compose(p, q)
/// applies p first, then q, i.e. compose(p, q)[x] = q[p[x]].
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    validate();
  }

  static Permutation identity(int degree) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    std::iota(im.begin(), im.end(), 0);
    Permutation p;
    p.images_ = std::move(im);
    return p;
  }

  int degree() const { return static_cast<int>(images_.size()); }

  /// Image of a point: p[x] is x^p.
  int operator[](int point) const {
    return images_[static_cast<std::size_t>(point)];
  }

  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i) {
      if (images_[static_cast<std::size_t>(i)] != i) return false;
    }
    return true;
  }

  /// Smallest point moved by this permutation, or -1 for the identity.
  int smallest_moved_point() const {
    for (int i = 0; i < degree(); ++i) {
      if (images_[static_cast<std::size_t>(i)] != i) return i;
    }
    return -1;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return !(a == b);
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

  /// 1-based disjoint cycle notation; "()" for the identity.
  std::string to_cycles() const;

  /// Parses 1-based disjoint cycle notation, e.g. "(1 2 3)(4 5)".
  /// If degree < 0, the degree is the largest point mentioned.
  static Permutation from_cycles(const std::string& text, int degree = -1);

 private:
  void validate() const {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)]) {
        throw parse_error("image table is not a bijection on the point set");
      }
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  std::vector<int> images_;
};

/// Applies p, then q.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw degree_mismatch("compose: degrees " + std::to_string(p.degree()) +
                          " and " + std::to_string(q.degree()) + " differ");
  }
  std::vector<int> im(static_cast<std::size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) {
    im[static_cast<std::size_t>(i)] = q[p[i]];
  }
  return Permutation(std::move(im));
}

inline Permutation inverse(const Permutation& p) {
  std::vector<int> im(static_cast<std::size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) {
    im[static_cast<std::size_t>(p[i])] = i;
  }
  return Permutation(std::move(im));
}

/// g^{-1} x g, so that conjugate(conjugate(x, g), h) = conjugate(x, compose(g, h)).
inline Permutation conjugate(const Permutation& x, const Permutation& g) {
  if (x.degree() != g.degree()) {
    throw degree_mismatch("conjugate: degree mismatch");
  }
  // (g^{-1} x g)[a] = g[x[g^{-1}[a]]]; build directly without forming g^{-1}.
  std::vector<int> im(static_cast<std::size_t>(x.degree()));
  for (int a = 0; a < x.degree(); ++a) {
    im[static_cast<std::size_t>(g[a])] = g[x[a]];
  }
  return Permutation(std::move(im));
}

inline Permutation commutator(const Permutation& a, const Permutation& b) {
  // a^{-1} b^{-1} a b
  return compose(compose(inverse(a), inverse(b)), compose(a, b));
}

inline Permutation power(const Permutation& p, std::int64_t k) {
  Permutation base = k < 0 ? inverse(p) : p;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k)
                          : static_cast<std::uint64_t>(k);
  Permutation acc = Permutation::identity(p.degree());
  while (e > 0) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

/// Least l ≥ 1 with p^l = identity; the lcm of the cycle lengths.
inline std::uint64_t element_order(const Permutation& p) {
  std::vector<char> seen(static_cast<std::size_t>(p.degree()), 0);
  std::uint64_t order = 1;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::uint64_t len = 0;
    int j = i;
    do {
      seen[static_cast<std::size_t>(j)] = 1;
      j = p[j];
      ++len;
    } while (j != i);
    std::uint64_t g = std::gcd(order, len);
    if (order / g > std::numeric_limits<std::uint64_t>::max() / len) {
      throw budget_exceeded("element order overflows 64 bits");
    }
    order = order / g * len;
  }
  return order;
}

inline std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || images_[static_cast<std::size_t>(i)] == i) continue;
    out += '(';
    int j = i;
    bool first = true;
    do {
      seen[static_cast<std::size_t>(j)] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = images_[static_cast<std::size_t>(j)];
    } while (j != i);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

inline Permutation Permutation::from_cycles(const std::string& text, int degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  int max_point = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') throw parse_error("expected '(' in cycle notation", i);
    ++i;
    std::vector<int> cycle;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) throw parse_error("unterminated cycle", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw parse_error("expected point number in cycle", i);
      }
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1'000'000) throw parse_error("point number too large", i);
        ++i;
      }
      if (v < 1) throw parse_error("points are 1-based", i);
      cycle.push_back(static_cast<int>(v - 1));
      max_point = std::max(max_point, static_cast<int>(v));
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
  }
  int deg = degree >= 0 ? degree : max_point;
  if (max_point > deg) {
    throw parse_error("cycle mentions point " + std::to_string(max_point) +
                      " beyond degree " + std::to_string(deg));
  }
  std::vector<int> im(static_cast<std::size_t>(deg));
  std::iota(im.begin(), im.end(), 0);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int from = cycle[k];
      int to = cycle[(k + 1) % cycle.size()];
      if (im[static_cast<std::size_t>(from)] != from) {
        throw parse_error("point " + std::to_string(from + 1) +
                          " appears in two cycles");
      }
      im[static_cast<std::size_t>(from)] = to;
    }
  }
  // A point may map to itself explicitly; the bijection check below is the
  // real guard (duplicate targets across cycles).
  return Permutation(std::move(im));
}

}  // namespace solgraph

#endif  // SOLGRAPH_PERMUTATION_HPP
