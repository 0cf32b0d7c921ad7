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

#ifndef SOLGRAPH_GROUP_SPEC_HPP
#define SOLGRAPH_GROUP_SPEC_HPP

#include <cctype>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "solgraph/errors.hpp"
#include "solgraph/perm_group.hpp"
#include "solgraph/solubility.hpp"

namespace solgraph {

/// Parsed group expression over the grammar `atom ('x' atom)*` with atoms
///   A<n>, S<n>, C<n>, D<n>  (D<n> is dihedral of ORDER n, n even ≥ 4),
///   PSL(2,q), SL(2,q)       (q an odd prime ≤ 23),
///   file:<path>             (generator file, permgroup format).
/// Atom names are case-insensitive; the product operator 'x' must be a
/// standalone token.
struct GroupSpec {
  enum class Kind { alternating, symmetric, cyclic, dihedral, psl2, sl2, file };

  struct Atom {
    Kind kind;
    int n = 0;         // subscript or q
    std::string path;  // file atoms only
  };

  std::vector<Atom> factors;  // direct product, left to right

  static GroupSpec parse(const std::string& text);

  std::string print() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out += " x ";
      const Atom& a = factors[i];
      switch (a.kind) {
        case Kind::alternating: out += "A" + std::to_string(a.n); break;
        case Kind::symmetric: out += "S" + std::to_string(a.n); break;
        case Kind::cyclic: out += "C" + std::to_string(a.n); break;
        case Kind::dihedral: out += "D" + std::to_string(a.n); break;
        case Kind::psl2: out += "PSL(2," + std::to_string(a.n) + ")"; break;
        case Kind::sl2: out += "SL(2," + std::to_string(a.n) + ")"; break;
        case Kind::file: out += "file:" + a.path; break;
      }
    }
    return out;
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    if (a.factors.size() != b.factors.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
      if (a.factors[i].kind != b.factors[i].kind ||
          a.factors[i].n != b.factors[i].n ||
          a.factors[i].path != b.factors[i].path) {
        return false;
      }
    }
    return true;
  }
};

namespace detail {

inline bool is_supported_odd_prime(int q) {
  if (q < 3 || q > 23 || q % 2 == 0) return false;
  for (int d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

inline GroupSpec::Atom parse_atom(const std::string& word, std::size_t pos) {
  std::string lower;
  lower.reserve(word.size());
  for (char c : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  if (lower.rfind("file:", 0) == 0) {
    std::string path = word.substr(5);
    if (path.empty()) throw parse_error("empty path in file: atom", pos);
    return {GroupSpec::Kind::file, 0, path};
  }

  auto parse_n = [&](std::size_t from) -> int {
    if (from >= lower.size()) throw parse_error("missing subscript in atom '" + word + "'", pos);
    long n = 0;
    for (std::size_t i = from; i < lower.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(lower[i]))) {
        throw parse_error("bad subscript in atom '" + word + "'", pos);
      }
      n = n * 10 + (lower[i] - '0');
      if (n > 1'000'000) throw parse_error("subscript too large in '" + word + "'", pos);
    }
    if (n < 1) throw parse_error("subscript must be at least 1 in '" + word + "'", pos);
    return static_cast<int>(n);
  };

  auto parse_q = [&](std::size_t prefix_len, GroupSpec::Kind kind) -> GroupSpec::Atom {
    // Expect "(2,q)" after the prefix.
    std::string rest = lower.substr(prefix_len);
    if (rest.size() < 5 || rest.front() != '(' || rest.back() != ')') {
      throw parse_error("expected (2,q) in '" + word + "'", pos);
    }
    rest = rest.substr(1, rest.size() - 2);
    std::size_t comma = rest.find(',');
    if (comma == std::string::npos) throw parse_error("expected (2,q) in '" + word + "'", pos);
    std::string dim = rest.substr(0, comma);
    std::string qs = rest.substr(comma + 1);
    auto strip = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    dim = strip(dim);
    qs = strip(qs);
    if (dim != "2") throw parse_error("only dimension 2 is supported in '" + word + "'", pos);
    long q = 0;
    if (qs.empty()) throw parse_error("missing q in '" + word + "'", pos);
    for (char c : qs) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw parse_error("bad q in '" + word + "'", pos);
      }
      q = q * 10 + (c - '0');
      if (q > 1000) break;
    }
    if (!is_supported_odd_prime(static_cast<int>(q))) {
      throw parse_error("unsupported q=" + qs + " (odd primes up to 23 only)", pos);
    }
    return {kind, static_cast<int>(q), {}};
  };

  if (lower.rfind("psl", 0) == 0) return parse_q(3, GroupSpec::Kind::psl2);
  if (lower.rfind("sl", 0) == 0) return parse_q(2, GroupSpec::Kind::sl2);
  switch (lower[0]) {
    case 'a': return {GroupSpec::Kind::alternating, parse_n(1), {}};
    case 's': return {GroupSpec::Kind::symmetric, parse_n(1), {}};
    case 'c': return {GroupSpec::Kind::cyclic, parse_n(1), {}};
    case 'd': {
      int n = parse_n(1);
      if (n < 4 || n % 2 != 0) {
        throw parse_error("dihedral order must be even and at least 4 in '" + word + "'", pos);
      }
      return {GroupSpec::Kind::dihedral, n, {}};
    }
    default:
      throw parse_error("unrecognized atom '" + word + "'", pos);
  }
}

}  // namespace detail

inline GroupSpec GroupSpec::parse(const std::string& text) {
  // Tokenize on whitespace, but keep parenthesized arguments together so
  // "PSL(2, 7)" is one token.
  struct Token {
    std::string word;
    std::size_t pos;
  };
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    int paren_depth = 0;
    std::string word;
    while (i < text.size() &&
           (paren_depth > 0 || !std::isspace(static_cast<unsigned char>(text[i])))) {
      if (text[i] == '(') ++paren_depth;
      if (text[i] == ')') {
        if (paren_depth == 0) throw parse_error("unbalanced ')'", i);
        --paren_depth;
      }
      word += text[i];
      ++i;
    }
    if (paren_depth != 0) throw parse_error("unbalanced '('", start);
    tokens.push_back({std::move(word), start});
  }
  if (tokens.empty()) throw parse_error("empty group spec", 0);

  GroupSpec spec;
  bool expect_atom = true;
  for (const Token& t : tokens) {
    if (expect_atom) {
      spec.factors.push_back(detail::parse_atom(t.word, t.pos));
      expect_atom = false;
    } else {
      if (t.word != "x" && t.word != "X") {
        throw parse_error("expected product operator 'x', got '" + t.word + "'", t.pos);
      }
      expect_atom = true;
    }
  }
  if (expect_atom) {
    throw parse_error("dangling product operator at end of spec", text.size());
  }
  return spec;
}

namespace detail {

inline PermutationGroup build_alternating(int n) {
  if (n <= 2) return PermutationGroup::trivial(n);
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles("(1 2 3)", n));
  if (n > 3) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    if (n % 2 == 1) {
      for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = (i + 1) % n;
    } else {
      im[0] = 0;
      for (int i = 1; i < n; ++i) {
        im[static_cast<std::size_t>(i)] = i == n - 1 ? 1 : i + 1;
      }
    }
    gens.push_back(Permutation(std::move(im)));
  }
  return PermutationGroup(n, std::move(gens));
}

inline PermutationGroup build_symmetric(int n) {
  if (n <= 1) return PermutationGroup::trivial(n);
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles("(1 2)", n));
  if (n > 2) {
    std::vector<int> im(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = (i + 1) % n;
    gens.push_back(Permutation(std::move(im)));
  }
  return PermutationGroup(n, std::move(gens));
}

inline PermutationGroup build_cyclic(int n) {
  if (n == 1) return PermutationGroup::trivial(1);
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = (i + 1) % n;
  return PermutationGroup(n, {Permutation(std::move(im))});
}

// Dihedral group of ORDER n (n even, ≥ 4), acting on the n/2-gon; the
// order-4 case degenerates to the Klein four-group on 4 points.
inline PermutationGroup build_dihedral(int n) {
  int m = n / 2;
  if (m == 2) {
    return PermutationGroup(
        4, {Permutation::from_cycles("(1 2)", 4), Permutation::from_cycles("(3 4)", 4)});
  }
  std::vector<int> rot(static_cast<std::size_t>(m));
  std::vector<int> refl(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    rot[static_cast<std::size_t>(i)] = (i + 1) % m;
    refl[static_cast<std::size_t>(i)] = (m - i) % m;
  }
  return PermutationGroup(m, {Permutation(std::move(rot)), Permutation(std::move(refl))});
}

// PSL(2,q) as Möbius transformations of the projective line: points
// 0..q-1 are [x:1], point q is [1:0]. Generated by the images of
// [[1,1],[0,1]] and [[0,-1],[1,0]].
inline PermutationGroup build_psl2(int q) {
  const int inf = q;
  auto moebius = [&](int a, int b, int c, int d) {
    std::vector<int> im(static_cast<std::size_t>(q + 1));
    auto mod = [&](long long v) { return static_cast<int>(((v % q) + q) % q); };
    // modular inverse by Fermat (q prime)
    auto inv = [&](int v) {
      int r = 1, base = v, e = q - 2;
      while (e > 0) {
        if (e & 1) r = static_cast<int>((1LL * r * base) % q);
        base = static_cast<int>((1LL * base * base) % q);
        e >>= 1;
      }
      return r;
    };
    for (int x = 0; x <= q; ++x) {
      long long nx, dx;
      if (x == inf) {
        nx = a;
        dx = c;
      } else {
        nx = 1LL * a * x + b;
        dx = 1LL * c * x + d;
      }
      int den = mod(dx);
      im[static_cast<std::size_t>(x)] = den == 0 ? inf : mod(nx * inv(den));
    }
    return Permutation(std::move(im));
  };
  PermutationGroup G(q + 1, {moebius(1, 1, 0, 1), moebius(0, -1, 1, 0)});
  std::uint64_t expected = static_cast<std::uint64_t>(q) * (q - 1) * (q + 1) / 2;
  if (G.order() != expected) {
    throw internal_error("PSL(2," + std::to_string(q) + ") construction has wrong order");
  }
  return G;
}

// SL(2,q) acting on the q^2-1 nonzero column vectors over F_q; vector
// (x,y) has index x*q + y - 1. Generated by [[1,1],[0,1]] and [[0,-1],[1,0]].
inline PermutationGroup build_sl2(int q) {
  auto vec_index = [&](int x, int y) { return x * q + y - 1; };
  auto linear = [&](int a, int b, int c, int d) {
    std::vector<int> im(static_cast<std::size_t>(q * q - 1));
    auto mod = [&](long long v) { return static_cast<int>(((v % q) + q) % q); };
    for (int x = 0; x < q; ++x) {
      for (int y = 0; y < q; ++y) {
        if (x == 0 && y == 0) continue;
        int nx = mod(1LL * a * x + 1LL * b * y);
        int ny = mod(1LL * c * x + 1LL * d * y);
        im[static_cast<std::size_t>(vec_index(x, y))] =
            vec_index(nx, ny);
      }
    }
    return Permutation(std::move(im));
  };
  PermutationGroup G(q * q - 1, {linear(1, 1, 0, 1), linear(0, -1, 1, 0)});
  std::uint64_t expected = static_cast<std::uint64_t>(q) * (q - 1) * (q + 1);
  if (G.order() != expected) {
    throw internal_error("SL(2," + std::to_string(q) + ") construction has wrong order");
  }
  return G;
}

inline PermutationGroup build_atom(const GroupSpec::Atom& atom) {
  switch (atom.kind) {
    case GroupSpec::Kind::alternating: return build_alternating(atom.n);
    case GroupSpec::Kind::symmetric: return build_symmetric(atom.n);
    case GroupSpec::Kind::cyclic: return build_cyclic(atom.n);
    case GroupSpec::Kind::dihedral: return build_dihedral(atom.n);
    case GroupSpec::Kind::psl2: return build_psl2(atom.n);
    case GroupSpec::Kind::sl2: return build_sl2(atom.n);
    case GroupSpec::Kind::file: {
      std::ifstream in(atom.path);
      if (!in) throw parse_error("cannot open generator file '" + atom.path + "'");
      return read_generator_source(in);
    }
  }
  throw internal_error("unhandled atom kind");
}

}  // namespace detail

inline PermutationGroup build_group(const GroupSpec& spec) {
  PermutationGroup G = detail::build_atom(spec.factors.front());
  for (std::size_t i = 1; i < spec.factors.size(); ++i) {
    G = direct_product(G, detail::build_atom(spec.factors[i]));
  }
  return G;
}

inline PermutationGroup build_group(const std::string& spec_text) {
  return build_group(GroupSpec::parse(spec_text));
}

struct CatalogOptions {
  std::uint64_t full_graph_threshold = 600;  // max vertex count for full tier
  SolubilityOptions solubility;
};

struct CatalogEntry {
  GroupSpec spec;
  std::string name;  // canonical spec text
  PermutationGroup group;
  std::uint64_t radical_order = 1;
  Tier tier = Tier::invariant_only;
  bool expected_insoluble = true;
};

inline CatalogEntry make_catalog_entry(const std::string& spec_text,
                                       bool expected_insoluble,
                                       const CatalogOptions& opts = {}) {
  GroupSpec spec = GroupSpec::parse(spec_text);
  PermutationGroup group = build_group(spec);
  std::uint64_t radical_order =
      soluble_radical(group, opts.solubility.enum_budget).order();
  std::uint64_t vertices = group.order() - radical_order;
  CatalogEntry entry{std::move(spec), {}, std::move(group), radical_order,
                     vertices <= opts.full_graph_threshold ? Tier::full_graph
                                                           : Tier::invariant_only,
                     expected_insoluble};
  entry.name = entry.spec.print();
  return entry;
}

/// The verification corpus: insoluble groups in both tiers plus soluble
/// controls.
inline std::vector<CatalogEntry> standard_catalog(const CatalogOptions& opts = {}) {
  std::vector<CatalogEntry> out;
  const std::pair<const char*, bool> plan[] = {
      {"A5", true},     {"S5", true},         {"A5 x C2", true},
      {"SL(2,5)", true}, {"PSL(2,7)", true},  {"A6", true},
      {"C3 x A5", true}, {"PSL(2,11)", true}, {"PSL(2,13)", true},
      {"A7", true},      {"S3", false},       {"S4", false},
      {"C6", false},
  };
  out.reserve(std::size(plan));
  for (const auto& [text, insoluble] : plan) {
    out.push_back(make_catalog_entry(text, insoluble, opts));
  }
  return out;
}

}  // namespace solgraph

#endif  // SOLGRAPH_GROUP_SPEC_HPP
