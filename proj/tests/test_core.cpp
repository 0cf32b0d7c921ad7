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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "solgraph/perm_group.hpp"
#include "solgraph/permutation.hpp"
#include "solgraph/solubility.hpp"
#include "solgraph/stabilizer_chain.hpp"

using namespace solgraph;

namespace {

Permutation random_permutation(int degree, std::mt19937& rng) {
  std::vector<int> im(static_cast<std::size_t>(degree));
  std::iota(im.begin(), im.end(), 0);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(std::move(im));
}

PermutationGroup a5() {
  return PermutationGroup(5, {Permutation::from_cycles("(1 2 3 4 5)", 5),
                              Permutation::from_cycles("(1 2 3)", 5)});
}

PermutationGroup s5() {
  return PermutationGroup(5, {Permutation::from_cycles("(1 2)", 5),
                              Permutation::from_cycles("(1 2 3 4 5)", 5)});
}

}  // namespace

TEST_CASE("composition applies left argument first") {
  Permutation p = Permutation::from_cycles("(1 2)", 3);
  Permutation q = Permutation::from_cycles("(2 3)", 3);
  // Applying (1 2) then (2 3) by hand: 0→1→2, 1→0→0, 2→2→1.
  CHECK(compose(p, q).images() == std::vector<int>{2, 0, 1});
  CHECK(compose(p, inverse(p)) == Permutation::identity(3));
  CHECK(compose(Permutation::identity(3), q) == q);
  CHECK_THROWS_AS(compose(p, Permutation::identity(4)), degree_mismatch);
}

TEST_CASE("conjugation matches g^-1 x g and composes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Permutation x = random_permutation(6, rng);
    Permutation g = random_permutation(6, rng);
    Permutation h = random_permutation(6, rng);
    CHECK(conjugate(x, g) == compose(compose(inverse(g), x), g));
    CHECK(conjugate(conjugate(x, g), h) == conjugate(x, compose(g, h)));
  }
}

TEST_CASE("element orders") {
  CHECK(element_order(Permutation::identity(4)) == 1);
  CHECK(element_order(Permutation::from_cycles("(1 2 3 4 5)", 5)) == 5);
  CHECK(element_order(Permutation::from_cycles("(1 2)(3 4)", 5)) == 2);
  CHECK(element_order(Permutation::from_cycles("(1 2)(3 4 5)", 5)) == 6);
}

TEST_CASE("cycle notation round trips") {
  CHECK(Permutation::from_cycles("(1 2 3)(4 5)").to_cycles() == "(1 2 3)(4 5)");
  CHECK(Permutation::identity(5).to_cycles() == "()");
  CHECK(Permutation::from_cycles("()", 3) == Permutation::identity(3));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Permutation p = random_permutation(9, rng);
    CHECK(Permutation::from_cycles(p.to_cycles(), 9) == p);
  }
}

TEST_CASE("cycle notation rejects malformed input") {
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2"), parse_error);
  CHECK_THROWS_AS(Permutation::from_cycles("(0 1)"), parse_error);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2)(2 3)"), parse_error);
  CHECK_THROWS_AS(Permutation::from_cycles("1 2 3"), parse_error);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2 3)", 2), parse_error);
}

TEST_CASE("chain orders agree with brute-force closure") {
  struct Case {
    std::vector<const char*> gens;
    int degree;
  };
  const Case cases[] = {
      {{"(1 2 3 4 5)", "(1 2 3)"}, 5},
      {{"(1 2)", "(1 2 3 4 5)"}, 5},
      {{"(1 2 3 4 5)", "(1 2)(3 4)"}, 5},
      {{"(1 2 3 4)", "(1 3)"}, 4},
      {{"(1 2 3 4 5 6)"}, 6},
  };
  for (const Case& c : cases) {
    std::vector<Permutation> gens;
    for (const char* g : c.gens) gens.push_back(Permutation::from_cycles(g, c.degree));
    StabilizerChain chain(c.degree, gens);
    CHECK(chain.order() == oracles::brute_closure(c.degree, gens).size());
  }
}

TEST_CASE("specific chain orders") {
  CHECK(a5().order() == 60);
  CHECK(s5().order() == 120);
  CHECK(PermutationGroup::trivial(3).order() == 1);
  // The pentagon-inverting involution gives the dihedral subgroup of A5;
  // other double transpositions generate the whole group.
  PermutationGroup d10(5, {Permutation::from_cycles("(1 2 3 4 5)", 5),
                           Permutation::from_cycles("(2 5)(3 4)", 5)});
  CHECK(d10.order() == 10);
  PermutationGroup whole(5, {Permutation::from_cycles("(1 2 3 4 5)", 5),
                             Permutation::from_cycles("(1 2)(3 4)", 5)});
  CHECK(whole.order() == 60);
}

TEST_CASE("membership via sifting") {
  PermutationGroup G = a5();
  CHECK(G.contains(Permutation::from_cycles("(1 2 3)", 5)));
  CHECK_FALSE(G.contains(Permutation::from_cycles("(1 2)", 5)));
  PermutationGroup c5(5, {Permutation::from_cycles("(1 2 3 4 5)", 5)});
  // (0 2 4 1 3) is the square of the generator.
  Permutation sq = power(Permutation::from_cycles("(1 2 3 4 5)", 5), 2);
  CHECK(c5.contains(sq));
  CHECK_THROWS_AS(G.contains(Permutation::identity(6)), degree_mismatch);
}

TEST_CASE("closure under multiplication on sampled pairs") {
  PermutationGroup G = a5();
  auto elems = G.elements();
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    CHECK(G.contains(compose(elems[pick(rng)], elems[pick(rng)])));
  }
}

TEST_CASE("element enumeration is deterministic and indexable") {
  PermutationGroup G = a5();
  auto elems = G.elements();
  REQUIRE(elems.size() == 60);
  CHECK(std::set<Permutation>(elems.begin(), elems.end()).size() == 60);
  // Rebuilding the chain from the same generators reproduces the order.
  auto elems2 = a5().elements();
  CHECK(elems == elems2);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto idx = G.element_index(elems[i]);
    REQUIRE(idx.has_value());
    CHECK(*idx == i);
  }
  CHECK_FALSE(G.element_index(Permutation::from_cycles("(1 2)", 5)).has_value());
}

TEST_CASE("trivial and cyclic enumeration") {
  CHECK(PermutationGroup::trivial(4).elements() ==
        std::vector<Permutation>{Permutation::identity(4)});
  PermutationGroup c6(6, {Permutation::from_cycles("(1 2 3 4 5 6)", 6)});
  auto elems = c6.elements();
  REQUIRE(elems.size() == 6);
  Permutation g = Permutation::from_cycles("(1 2 3 4 5 6)", 6);
  for (const Permutation& e : elems) {
    bool is_power = false;
    for (int k = 0; k < 6; ++k) {
      if (e == power(g, k)) is_power = true;
    }
    CHECK(is_power);
  }
}

TEST_CASE("enumeration budget is enforced") {
  CHECK_THROWS_AS(a5().elements(10), budget_exceeded);
}

TEST_CASE("incremental chain extension") {
  StabilizerChain chain(5, {});
  CHECK(chain.order() == 1);
  CHECK(chain.extend(Permutation::from_cycles("(1 2 3 4 5)", 5)));
  CHECK(chain.order() == 5);
  CHECK_FALSE(chain.extend(power(Permutation::from_cycles("(1 2 3 4 5)", 5), 3)));
  CHECK(chain.extend(Permutation::from_cycles("(1 2 3)", 5)));
  CHECK(chain.order() == 60);
}

TEST_CASE("generated subgroups") {
  CHECK(generated_subgroup(5, {Permutation::identity(5)}).order() == 1);
  CHECK(generated_subgroup(5, {Permutation::from_cycles("(1 2 3 4 5)", 5),
                               Permutation::from_cycles("(1 2 3)", 5)})
            .order() == 60);
}

TEST_CASE("derived subgroup matches brute force") {
  PermutationGroup s4(4, {Permutation::from_cycles("(1 2)", 4),
                          Permutation::from_cycles("(1 2 3 4)", 4)});
  PermutationGroup d = derived_subgroup(s4);
  auto brute = oracles::brute_derived(4, s4.generators());
  CHECK(d.order() == brute.size());
  for (const Permutation& p : brute) CHECK(d.contains(p));

  CHECK(derived_subgroup(s5()).order() == 60);
  CHECK(derived_subgroup(a5()).order() == 60);  // perfect
  PermutationGroup c6(6, {Permutation::from_cycles("(1 2 3 4 5 6)", 6)});
  CHECK(derived_subgroup(c6).order() == 1);
}

TEST_CASE("derived series of S4 descends through A4 and V4") {
  PermutationGroup s4(4, {Permutation::from_cycles("(1 2)", 4),
                          Permutation::from_cycles("(1 2 3 4)", 4)});
  PermutationGroup d1 = derived_subgroup(s4);
  PermutationGroup d2 = derived_subgroup(d1);
  PermutationGroup d3 = derived_subgroup(d2);
  CHECK(d1.order() == 12);
  CHECK(d2.order() == 4);
  CHECK(d3.order() == 1);
}

TEST_CASE("solubility by derived series") {
  PermutationGroup s4(4, {Permutation::from_cycles("(1 2)", 4),
                          Permutation::from_cycles("(1 2 3 4)", 4)});
  CHECK(is_soluble(s4));
  CHECK_FALSE(is_soluble(a5()));
  CHECK(is_soluble(PermutationGroup::trivial(2)));
  CHECK_FALSE(is_soluble(s5()));
}

TEST_CASE("solubility agrees with the chief-series oracle on fixed cases") {
  const char* soluble_cases[][2] = {
      {"(1 2)", "(1 2 3 4)"},      // S4
      {"(1 2 3 4 5)", "(2 3 5 4)"},  // F20, soluble
      {"(1 2 3 4 5 6)", nullptr},  // C6
  };
  for (const auto& c : soluble_cases) {
    std::vector<Permutation> gens{Permutation::from_cycles(c[0], 6)};
    if (c[1]) gens.push_back(Permutation::from_cycles(c[1], 6));
    PermutationGroup G(6, gens);
    CHECK(is_soluble(G) == oracles::soluble_by_chief_series(G));
    CHECK(is_soluble(G));
  }
  PermutationGroup a6(6, {Permutation::from_cycles("(1 2 3)", 6),
                          Permutation::from_cycles("(2 3 4 5 6)", 6)});
  CHECK_FALSE(oracles::soluble_by_chief_series(a6));
  CHECK_FALSE(is_soluble(a6));
}

TEST_CASE("derived subgroup is normal with abelian quotient") {
  for (const PermutationGroup& G : {s5(), a5()}) {
    PermutationGroup d = derived_subgroup(G);
    for (const Permutation& k : d.generators()) {
      for (const Permutation& g : G.generators()) {
        CHECK(d.contains(conjugate(k, g)));
      }
    }
    if (d.order() < G.order()) {
      CHECK(is_abelian(quotient(G, d).image()));
    }
  }
}

TEST_CASE("normal closure") {
  PermutationGroup S5 = s5();
  CHECK(normal_closure(S5, {Permutation::identity(5)}).order() == 1);
  CHECK(normal_closure(S5, {Permutation::from_cycles("(1 2)", 5)}).order() == 120);
  CHECK(normal_closure(S5, {Permutation::from_cycles("(1 2 3)", 5)}).order() == 60);
  CHECK_THROWS_AS(normal_closure(a5(), {Permutation::from_cycles("(1 2)", 5)}),
                  membership_error);
}

TEST_CASE("conjugacy classes of A5") {
  PermutationGroup G = a5();
  auto elems = G.elements();
  ConjugacyClasses cc = conjugacy_classes(G, elems);
  CHECK(cc.count() == 5);
  std::uint64_t total = 0;
  for (std::uint64_t s : cc.class_sizes) {
    total += s;
    CHECK(60 % s == 0);
  }
  CHECK(total == 60);
  // Witnesses conjugate the representative onto each element.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Permutation& rep = cc.representatives[static_cast<std::size_t>(cc.class_of[i])];
    CHECK(conjugate(rep, cc.witnesses[i]) == elems[i]);
  }
  // Representatives are minimal in enumeration order within their class.
  for (std::size_t c = 0; c < cc.count(); ++c) {
    std::uint64_t first = 0;
    while (cc.class_of[first] != static_cast<int>(c)) ++first;
    CHECK(elems[first] == cc.representatives[c]);
  }
}

TEST_CASE("conjugacy class counts") {
  PermutationGroup s3(3, {Permutation::from_cycles("(1 2)", 3),
                          Permutation::from_cycles("(1 2 3)", 3)});
  CHECK(conjugacy_classes(s3).count() == 3);
  CHECK(conjugacy_classes(PermutationGroup::trivial(2)).count() == 1);
}

TEST_CASE("quotient by A5 in S5") {
  QuotientMap q = quotient(s5(), a5());
  CHECK(q.image().order() == 2);
  CHECK(q.image().order() * q.kernel().order() == q.domain().order());
}

TEST_CASE("quotient map is a homomorphism on random pairs") {
  PermutationGroup s4(4, {Permutation::from_cycles("(1 2)", 4),
                          Permutation::from_cycles("(1 2 3 4)", 4)});
  PermutationGroup v4(4, {Permutation::from_cycles("(1 2)(3 4)", 4),
                          Permutation::from_cycles("(1 3)(2 4)", 4)});
  QuotientMap q = quotient(s4, v4);
  CHECK(q.image().order() == 6);
  auto elems = s4.elements();
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Permutation& x = elems[pick(rng)];
    const Permutation& y = elems[pick(rng)];
    CHECK(q.map(compose(x, y)) == compose(q.map(x), q.map(y)));
  }
}

TEST_CASE("quotient with trivial kernel preserves order") {
  PermutationGroup G = a5();
  QuotientMap q = quotient(G, PermutationGroup::trivial(5));
  CHECK(q.image().order() == 60);
}

TEST_CASE("quotient rejects non-normal and non-subgroups") {
  PermutationGroup s4(4, {Permutation::from_cycles("(1 2)", 4),
                          Permutation::from_cycles("(1 2 3 4)", 4)});
  PermutationGroup c2(4, {Permutation::from_cycles("(1 2)", 4)});
  CHECK_THROWS_AS(quotient(s4, c2), membership_error);
  PermutationGroup odd(5, {Permutation::from_cycles("(1 2)", 5)});
  CHECK_THROWS_AS(quotient(a5(), odd), membership_error);
}

TEST_CASE("direct products") {
  PermutationGroup c2(2, {Permutation::from_cycles("(1 2)", 2)});
  PermutationGroup c3(3, {Permutation::from_cycles("(1 2 3)", 3)});
  PermutationGroup prod = direct_product(a5(), c2);
  CHECK(prod.order() == 120);
  CHECK(prod.degree() == 7);
  CHECK(direct_product(a5(), PermutationGroup::trivial(0)).order() == 60);
  PermutationGroup c6 = direct_product(c2, c3);
  CHECK(c6.order() == 6);
  CHECK(is_abelian(c6));
}

TEST_CASE("generator files parse with headers and comments") {
  std::istringstream in(
      "# sample generators\n"
      "degree 6\n"
      "\n"
      "(1 2 3)(4 5)\n"
      "(1 2)  # inline comment\n");
  PermutationGroup G = read_generator_source(in);
  CHECK(G.degree() == 6);
  CHECK(G.order() == oracles::brute_closure(6, G.generators()).size());

  std::istringstream inferred("(1 2 3 4 5)\n(1 2 3)\n");
  CHECK(read_generator_source(inferred).order() == 60);

  std::istringstream bad("degree 2\n(1 2 3)\n");
  CHECK_THROWS_AS(read_generator_source(bad), parse_error);
}

TEST_CASE("euler phi matches direct counting") {
  for (std::uint64_t n : {1ull, 2ull, 5ull, 6ull, 12ull, 30ull, 97ull}) {
    CHECK(euler_phi(n) == oracles::phi_by_counting(n));
  }
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(5) == 4);
}
