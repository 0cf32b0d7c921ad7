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

// The verification matrix: one checker per claim about solubility graphs,
// run across the group catalog. Failures are data (they carry a concrete
// witness), not errors. Two checks are informational: they may disagree
// with their source without failing a run.

#ifndef SOLGRAPH_VERIFIER_HPP
#define SOLGRAPH_VERIFIER_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "solgraph/canonical.hpp"
#include "solgraph/graph.hpp"
#include "solgraph/group_spec.hpp"
#include "solgraph/solubility.hpp"
#include "solgraph/version.hpp"

namespace solgraph {

using Json = nlohmann::ordered_json;

enum class ClaimStatus { holds, fails, skipped, informational };

inline const char* status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::holds: return "holds";
    case ClaimStatus::fails: return "fails";
    case ClaimStatus::skipped: return "skipped";
    case ClaimStatus::informational: return "informational";
  }
  return "unknown";
}

inline ClaimStatus status_from_name(const std::string& name) {
  if (name == "holds") return ClaimStatus::holds;
  if (name == "fails") return ClaimStatus::fails;
  if (name == "skipped") return ClaimStatus::skipped;
  if (name == "informational") return ClaimStatus::informational;
  throw parse_error("unknown status '" + name + "'");
}

struct PropositionResult {
  std::string claim;
  std::string group;
  ClaimStatus status = ClaimStatus::skipped;
  Json witness;  // skip reason, counterexample, or computed values
  std::int64_t ms = 0;
};

struct VerificationSummary {
  std::uint64_t holds = 0;
  std::uint64_t fails = 0;
  std::uint64_t skipped = 0;
  std::uint64_t informational = 0;
};

struct VerificationReport {
  std::string version = kVersion;
  std::vector<std::string> catalog;
  std::vector<PropositionResult> results;

  VerificationSummary summary() const {
    VerificationSummary s;
    for (const PropositionResult& r : results) {
      switch (r.status) {
        case ClaimStatus::holds: ++s.holds; break;
        case ClaimStatus::fails: ++s.fails; break;
        case ClaimStatus::skipped: ++s.skipped; break;
        case ClaimStatus::informational: ++s.informational; break;
      }
    }
    return s;
  }

  Json to_json(bool normalize_times = false) const {
    Json out;
    out["version"] = version;
    out["catalog"] = catalog;
    Json rows = Json::array();
    for (const PropositionResult& r : results) {
      Json row;
      row["claim"] = r.claim;
      row["group"] = r.group;
      row["status"] = status_name(r.status);
      row["witness"] = r.witness;
      row["ms"] = normalize_times ? 0 : r.ms;
      rows.push_back(std::move(row));
    }
    out["results"] = std::move(rows);
    VerificationSummary s = summary();
    out["summary"] = Json{{"holds", s.holds},
                          {"fails", s.fails},
                          {"skipped", s.skipped},
                          {"informational", s.informational}};
    return out;
  }

  static VerificationReport from_json(const Json& in) {
    VerificationReport rep;
    rep.version = in.at("version").get<std::string>();
    rep.catalog = in.at("catalog").get<std::vector<std::string>>();
    for (const Json& row : in.at("results")) {
      PropositionResult r;
      r.claim = row.at("claim").get<std::string>();
      r.group = row.at("group").get<std::string>();
      r.status = status_from_name(row.at("status").get<std::string>());
      r.witness = row.at("witness");
      r.ms = row.at("ms").get<std::int64_t>();
      rep.results.push_back(std::move(r));
    }
    return rep;
  }

  std::string to_markdown(bool normalize_times = false) const;
  std::string to_csv(bool normalize_times = false) const;
};

// ---------------------------------------------------------------------
// Engine: shared, lazily built per-group state for the checkers.

class VerifierEngine {
 public:
  struct Options {
    SolubilityOptions solubility;
    std::uint64_t iso_node_budget = kDefaultIsoNodeBudget;
    std::uint64_t full_graph_threshold = 600;
  };

  VerifierEngine() = default;
  explicit VerifierEngine(Options opts) : opts_(std::move(opts)) {}

  const Options& options() const { return opts_; }

  const SolubilityContext& context(const CatalogEntry& entry) {
    return context_by_spec(entry.name, entry.tier);
  }

  const SolubilityContext& context_by_spec(const std::string& spec_text, Tier tier) {
    std::string key = spec_text + "|" + tier_name(tier);
    auto it = contexts_.find(key);
    if (it == contexts_.end()) {
      auto ctx = std::make_unique<SolubilityContext>(build_group(spec_text), tier,
                                                     opts_.solubility);
      it = contexts_.emplace(key, std::move(ctx)).first;
    }
    return *it->second;
  }

  const SolubilityGraph& graph(const CatalogEntry& entry) {
    auto it = graphs_.find(entry.name);
    if (it == graphs_.end()) {
      auto g = std::make_unique<SolubilityGraph>(
          build_graph(context(entry), opts_.solubility.jobs));
      it = graphs_.emplace(entry.name, std::move(g)).first;
    }
    return *it->second;
  }

  const GraphMetrics& metrics(const CatalogEntry& entry) {
    auto it = metrics_.find(entry.name);
    if (it == metrics_.end()) {
      auto m = std::make_unique<GraphMetrics>(
          compute_metrics(graph(entry), opts_.solubility.jobs));
      it = metrics_.emplace(entry.name, std::move(m)).first;
    }
    return *it->second;
  }

  const GraphCertificate& certificate(const CatalogEntry& entry) {
    auto it = certificates_.find(entry.name);
    if (it == certificates_.end()) {
      auto c = std::make_unique<GraphCertificate>(
          canonical_certificate(graph(entry).adj, opts_.iso_node_budget));
      it = certificates_.emplace(entry.name, std::move(c)).first;
    }
    return *it->second;
  }

  /// Quotient of the entry's group by its soluble radical, with an
  /// invariant-tier context for the image (class-level degrees suffice).
  struct RadicalQuotient {
    std::unique_ptr<QuotientMap> map;
    std::unique_ptr<SolubilityContext> image_context;
  };

  const RadicalQuotient& radical_quotient(const CatalogEntry& entry) {
    auto it = radical_quotients_.find(entry.name);
    if (it == radical_quotients_.end()) {
      const SolubilityContext& ctx = context(entry);
      RadicalQuotient rq;
      rq.map = std::make_unique<QuotientMap>(ctx.group(), ctx.radical());
      rq.image_context = std::make_unique<SolubilityContext>(
          rq.map->image(), Tier::invariant_only, opts_.solubility);
      it = radical_quotients_.emplace(entry.name, std::move(rq)).first;
    }
    return it->second;
  }

 private:
  Options opts_;
  std::map<std::string, std::unique_ptr<SolubilityContext>> contexts_;
  std::map<std::string, std::unique_ptr<SolubilityGraph>> graphs_;
  std::map<std::string, std::unique_ptr<GraphMetrics>> metrics_;
  std::map<std::string, std::unique_ptr<GraphCertificate>> certificates_;
  std::map<std::string, RadicalQuotient> radical_quotients_;
};

// ---------------------------------------------------------------------
// Claim registry.

struct ClaimDef {
  std::string id;
  std::string statement;
  bool informational = false;
  // Returns a skip reason when the claim does not apply to the entry.
  std::function<std::optional<std::string>(VerifierEngine&, const CatalogEntry&)>
      applicable;
  // Fills status (holds/fails/informational) and witness.
  std::function<void(VerifierEngine&, const CatalogEntry&, PropositionResult&)> run;
};

namespace detail {

inline std::optional<std::string> need_insoluble(VerifierEngine&,
                                                 const CatalogEntry& e) {
  if (!e.expected_insoluble) return "group is soluble";
  return std::nullopt;
}

inline auto need_insoluble_full_tier() {
  return [](VerifierEngine&, const CatalogEntry& e) -> std::optional<std::string> {
    if (!e.expected_insoluble) return "group is soluble";
    if (e.tier != Tier::full_graph) return "full graph unavailable in invariant-only tier";
    return std::nullopt;
  };
}

inline auto only_group(std::vector<std::string> names) {
  return [names = std::move(names)](VerifierEngine&, const CatalogEntry& e)
             -> std::optional<std::string> {
    for (const std::string& n : names) {
      if (e.name == n) return std::nullopt;
    }
    return "claim is specific to " + [&] {
      std::string joined;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) joined += ", ";
        joined += names[i];
      }
      return joined;
    }();
  };
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Per-class vertex data shared by several checkers.
struct ClassRow {
  std::size_t class_index;
  std::uint64_t element_order;
  std::uint64_t class_size;
  std::uint64_t solubilizer;
  std::uint64_t degree;
  std::string rep_cycles;
};

inline std::vector<ClassRow> vertex_class_rows(const SolubilityContext& ctx) {
  std::vector<ClassRow> rows;
  const ConjugacyClasses& cc = ctx.classes();
  for (std::size_t c = 0; c < cc.count(); ++c) {
    const Permutation& rep = cc.representatives[c];
    if (ctx.in_radical(rep)) continue;
    std::uint64_t sol = ctx.solubilizer_order_of_class(c);
    rows.push_back({c, element_order(rep), cc.class_sizes[c], sol,
                    sol - ctx.radical_order() - 1, rep.to_cycles()});
  }
  return rows;
}

inline Rational edge_count_rational(const SolubilityContext& ctx) {
  return Rational(BigInt(edge_count_from_formula(
                      ctx.order(), ctx.solubility_degree(), ctx.radical_order())),
                  BigInt(1));
}

inline Json degree_set_json(const DegreeData& d) {
  Json arr = Json::array();
  for (std::uint64_t v : d.degree_set) arr.push_back(v);
  return arr;
}

inline const std::vector<ClaimDef>& registry() {
  static const std::vector<ClaimDef> claims = [] {
    std::vector<ClaimDef> defs;

    defs.push_back(
        {"L2.1a",
         "|G| - |Sol_G(x)| >= |x| + phi(|x|) for every vertex x",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           std::uint64_t n = ctx.order();
           std::uint64_t checked = 0;
           std::uint64_t min_slack = n;
           for (const ClassRow& row : vertex_class_rows(ctx)) {
             std::uint64_t slack = n - row.solubilizer;
             std::uint64_t bound = row.element_order + euler_phi(row.element_order);
             min_slack = std::min(min_slack, slack - bound);
             ++checked;
             if (slack < bound) {
               out.status = ClaimStatus::fails;
               out.witness = Json{{"vertex", row.rep_cycles},
                                  {"element_order", row.element_order},
                                  {"solubilizer", row.solubilizer},
                                  {"complement", slack},
                                  {"bound", bound}};
               return;
             }
           }
           out.status = ClaimStatus::holds;
           out.witness = Json{{"classes_checked", checked}, {"min_slack", min_slack}};
         }});

    defs.push_back(
        {"L2.1b",
         "|G| - |Sol_G(x)| >= 6 for every vertex x",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           std::uint64_t n = ctx.order();
           std::uint64_t min_complement = n;
           for (const ClassRow& row : vertex_class_rows(ctx)) {
             std::uint64_t complement = n - row.solubilizer;
             min_complement = std::min(min_complement, complement);
             if (complement < 6) {
               out.status = ClaimStatus::fails;
               out.witness = Json{{"vertex", row.rep_cycles},
                                  {"complement", complement}};
               return;
             }
           }
           out.status = ClaimStatus::holds;
           out.witness = Json{{"min_complement", min_complement}};
         }});

    defs.push_back(
        {"P2.2",
         "delta_s >= 8 when R(G) = 1, and delta_s >= 17 otherwise",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           DegreeData d = ctx.degree_data();
           std::uint64_t bound = ctx.radical_order() == 1 ? 8 : 17;
           out.status = d.min_degree >= bound ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"radical", ctx.radical_order()},
                              {"delta_s", d.min_degree},
                              {"bound", bound}};
         }});

    defs.push_back(
        {"R2.3",
         "order-5 elements have degree 8 in A5 and 17 in A5 x C2; both bounds are attained",
         false, only_group({"A5", "A5 x C2"}),
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           const bool plain = e.name == "A5";
           const std::uint64_t want_degree = plain ? 8 : 17;
           const std::uint64_t want_sol = plain ? 10 : 20;
           std::optional<std::uint64_t> got_degree, got_sol;
           for (const ClassRow& row : vertex_class_rows(ctx)) {
             if (row.element_order == 5) {
               got_degree = row.degree;
               got_sol = row.solubilizer;
               if (row.degree != want_degree || row.solubilizer != want_sol) break;
             }
           }
           DegreeData d = ctx.degree_data();
           bool ok = got_degree && *got_degree == want_degree && *got_sol == want_sol &&
                     d.min_degree == want_degree;
           out.status = ok ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"degree", got_degree ? Json(*got_degree) : Json()},
                              {"solubilizer", got_sol ? Json(*got_sol) : Json()},
                              {"expected_degree", want_degree},
                              {"expected_solubilizer", want_sol},
                              {"delta_s", d.min_degree}};
         }});

    defs.push_back(
        {"P2.4",
         "Delta_s <= n - 7 where n is the number of vertices",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           DegreeData d = eng.context(e).degree_data();
           out.status =
               d.max_degree + 7 <= d.n ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"Delta_s", d.max_degree}, {"n", d.n}};
         }});

    defs.push_back(
        {"P2.5",
         "a vertex of degree p - 1 (p prime) forces R(G) = 1",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           Json primes = Json::array();
           for (const ClassRow& row : vertex_class_rows(ctx)) {
             if (is_prime(row.degree + 1)) primes.push_back(row.degree);
           }
           bool vacuous = primes.empty();
           bool ok = vacuous || ctx.radical_order() == 1;
           out.status = ok ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"radical", ctx.radical_order()},
                              {"vacuous", vacuous},
                              {"degrees_p_minus_1", primes}};
         }});

    defs.push_back(
        {"P2.6",
         "|Sol_G(x)| >= (|G| + |R|)/2 + 1 for all vertices implies a Hamiltonian graph "
         "(hypothesis predicate only; no cycle search)",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           bool hypothesis = true;
           for (const ClassRow& row : vertex_class_rows(ctx)) {
             if (2 * row.solubilizer < ctx.order() + ctx.radical_order() + 2) {
               hypothesis = false;
               break;
             }
           }
           out.status = ClaimStatus::holds;
           out.witness = Json{{"hypothesis_holds", hypothesis},
                              {"conclusion_asserted", hypothesis}};
         }});

    defs.push_back(
        {"P2.7",
         "(1 + deg(v)) = |R| * (1 + deg(vR)) for every vertex v",
         false,
         [](VerifierEngine& eng, const CatalogEntry& e) -> std::optional<std::string> {
           if (!e.expected_insoluble) return "group is soluble";
           if (eng.context(e).radical_order() == 1) {
             return "radical is trivial; the identity degenerates to deg(v) = deg(v)";
           }
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           const auto& rq = eng.radical_quotient(e);
           std::uint64_t r = ctx.radical_order();
           std::uint64_t checked = 0;
           for (const ClassRow& row : vertex_class_rows(ctx)) {
             const Permutation& rep = ctx.classes().representatives[row.class_index];
             std::uint64_t quotient_degree =
                 rq.image_context->vertex_degree(rq.map->map(rep));
             ++checked;
             if (row.degree + 1 != r * (quotient_degree + 1)) {
               out.status = ClaimStatus::fails;
               out.witness = Json{{"vertex", row.rep_cycles},
                                  {"degree", row.degree},
                                  {"quotient_degree", quotient_degree},
                                  {"radical", r}};
               return;
             }
           }
           out.status = ClaimStatus::holds;
           out.witness = Json{{"classes_checked", checked}, {"radical", r}};
         }});

    defs.push_back(
        {"P3.2",
         "P_s(G) >= Pr(G), with equality exactly for abelian groups",
         false,
         [](VerifierEngine&, const CatalogEntry&) -> std::optional<std::string> {
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           Rational ps = ctx.solubility_degree();
           Rational pr = ctx.commutativity_degree();
           bool abelian = is_abelian(ctx.group());
           bool ok = pr <= ps && ((pr == ps) == abelian);
           out.status = ok ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"Ps", ps.str()}, {"Pr", pr.str()}, {"abelian", abelian}};
         }});

    defs.push_back(
        {"P3.3",
         "P_s(G) <= P_s(G/N) for normal N, with equality when N is soluble",
         false, need_insoluble_full_tier(),
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           Rational ps = ctx.solubility_degree();
           Json tested = Json::array();
           bool ok = true;
           auto check_kernel = [&](const PermutationGroup& N, const std::string& label) {
             if (!ok) return;
             QuotientMap q(ctx.group(), N);
             SolubilityContext image(q.image(), Tier::invariant_only,
                                     eng.options().solubility);
             Rational qps = image.solubility_degree();
             bool n_soluble = is_soluble(N);
             bool holds = ps <= qps && (!n_soluble || ps == qps);
             ok = ok && holds;
             tested.push_back(Json{{"kernel", label},
                                   {"kernel_order", N.order()},
                                   {"kernel_soluble", n_soluble},
                                   {"Ps_G", ps.str()},
                                   {"Ps_quotient", qps.str()}});
           };
           if (ctx.radical_order() > 1) check_kernel(ctx.radical(), "R(G)");
           PermutationGroup derived = derived_subgroup(ctx.group());
           if (derived.order() > 1 && derived.order() < ctx.order()) {
             check_kernel(derived, "derived subgroup");
           }
           if (tested.empty()) {
             out.status = ClaimStatus::holds;
             out.witness = Json{
                 {"note", "no nontrivial proper normal subgroup available; "
                          "N = 1 gives equality trivially"}};
             return;
           }
           out.status = ok ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"kernels", tested}};
         }});

    defs.push_back(
        {"P3.5",
         "P_s(G x H) >= P_s(G) P_s(H), with equality when a factor is soluble",
         false,
         [](VerifierEngine&, const CatalogEntry& e) -> std::optional<std::string> {
           if (e.spec.factors.size() < 2) return "group is not a direct product";
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           // Split the product as first factor x rest.
           GroupSpec left{{e.spec.factors.front()}};
           GroupSpec right{{e.spec.factors.begin() + 1, e.spec.factors.end()}};
           const SolubilityContext& whole = eng.context(e);
           const SolubilityContext& lhs =
               eng.context_by_spec(left.print(), Tier::invariant_only);
           const SolubilityContext& rhs =
               eng.context_by_spec(right.print(), Tier::invariant_only);
           Rational whole_ps = whole.solubility_degree();
           Rational product = lhs.solubility_degree() * rhs.solubility_degree();
           bool factor_soluble = lhs.group_is_soluble() || rhs.group_is_soluble();
           bool ok = whole_ps >= product && (!factor_soluble || whole_ps == product);
           out.status = ok ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"left", left.print()},
                              {"right", right.print()},
                              {"Ps_product_group", whole_ps.str()},
                              {"Ps_factor_product", product.str()},
                              {"factor_soluble", factor_soluble}};
         }});

    defs.push_back(
        {"P3.6i",
         "2|E| = |G|^2 P_s + |R|^2 + |R| - |G|(2|R| + 1), cross-checked by direct count",
         false, need_insoluble_full_tier(),
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           std::uint64_t formula = edge_count_from_formula(
               ctx.order(), ctx.solubility_degree(), ctx.radical_order());
           std::uint64_t direct = direct_edge_count(eng.graph(e));
           out.status = formula == direct ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"formula", formula}, {"direct", direct}};
         }});

    defs.push_back(
        {"P3.7",
         "|E| >= |G|(k(G) - 3)/2 + 1 when R(G) = 1 (strict for insoluble groups)",
         false,
         [](VerifierEngine& eng, const CatalogEntry& e) -> std::optional<std::string> {
           if (!e.expected_insoluble) return "group is soluble";
           if (eng.context(e).radical_order() != 1) return "soluble radical is nontrivial";
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           Rational edges = edge_count_rational(ctx);
           std::uint64_t k = ctx.classes().count();
           Rational bound = Rational(BigInt(ctx.order()) * BigInt(k - 3), BigInt(2)) +
                            Rational(1);
           out.status = edges >= bound ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"edges", edges.str()},
                              {"bound", bound.str()},
                              {"k", k},
                              {"strict", edges > bound}};
         }});

    defs.push_back(
        {"P3.8",
         "|E| > |G| + 1 when R(G) = 1",
         false,
         [](VerifierEngine& eng, const CatalogEntry& e) -> std::optional<std::string> {
           if (!e.expected_insoluble) return "group is soluble";
           if (eng.context(e).radical_order() != 1) return "soluble radical is nontrivial";
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           Rational edges = edge_count_rational(ctx);
           Rational bound = Rational(BigInt(ctx.order()) + 1, BigInt(1));
           out.status = edges > bound ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"edges", edges.str()}, {"bound", bound.str()}};
         }});

    defs.push_back(
        {"P3.9",
         "|E| > 4|G| + 1 for insoluble simple groups",
         false,
         [](VerifierEngine& eng, const CatalogEntry& e) -> std::optional<std::string> {
           if (!e.expected_insoluble) return "group is soluble";
           const SolubilityContext& ctx = eng.context(e);
           if (!is_simple(ctx.group(), ctx.classes())) return "group is not simple";
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           Rational edges = edge_count_rational(ctx);
           Rational bound = Rational(4 * BigInt(ctx.order()) + 1, BigInt(1));
           out.status = edges > bound ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"edges", edges.str()}, {"bound", bound.str()}};
         }});

    defs.push_back(
        {"C3.10",
         "|E| <= 11/60 |G|^2 - 3/2 |G| + 1 when R(G) = 1, with equality exactly "
         "when P_s = 11/30",
         false,
         [](VerifierEngine& eng, const CatalogEntry& e) -> std::optional<std::string> {
           if (!e.expected_insoluble) return "group is soluble";
           if (eng.context(e).radical_order() != 1) return "soluble radical is nontrivial";
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           Rational edges = edge_count_rational(ctx);
           BigInt n(ctx.order());
           Rational bound = Rational(11 * n * n, 60) - Rational(3 * n, 2) + Rational(1);
           bool sharp = edges == bound;
           bool at_max = ctx.solubility_degree() == Rational::of(11, 30);
           bool ok = edges <= bound && sharp == at_max;
           out.status = ok ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"edges", edges.str()},
                              {"bound", bound.str()},
                              {"equality", sharp}};
         }});

    defs.push_back(
        {"B11/30",
         "P_s(G) <= 11/30 for insoluble G",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           Rational ps = eng.context(e).solubility_degree();
           Rational bound = Rational::of(11, 30);
           out.status = ps <= bound ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"Ps", ps.str()}, {"equality", ps == bound}};
         }});

    defs.push_back(
        {"S4-iso-example",
         "the solubility graphs of SL(2,5) and C2 x A5 are isomorphic",
         false,
         [](VerifierEngine&, const CatalogEntry& e) -> std::optional<std::string> {
           if (e.name != "SL(2,5)") return "claim is specific to SL(2,5)";
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityGraph& g1 = eng.graph(e);
           const SolubilityContext& partner =
               eng.context_by_spec("C2 x A5", Tier::full_graph);
           SolubilityGraph g2 = build_graph(partner, eng.options().solubility.jobs);
           IsoResult iso =
               are_isomorphic(g1.adj, g2.adj, eng.options().iso_node_budget);
           out.status = iso.isomorphic ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"vertices", g1.n},
                              {"isomorphic", iso.isomorphic},
                              {"bijection_verified", iso.isomorphic},
                              {"search_nodes", iso.nodes_explored}};
         }});

    defs.push_back(
        {"P4-vertexcount",
         "graph-isomorphic groups have equal vertex counts |G| - |R(G)|",
         false,
         [](VerifierEngine&, const CatalogEntry& e) -> std::optional<std::string> {
           if (e.name != "SL(2,5)") {
             return "checked on the graph-isomorphic pair anchored at SL(2,5)";
           }
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           const SolubilityContext& partner =
               eng.context_by_spec("C2 x A5", Tier::full_graph);
           std::uint64_t n1 = ctx.order() - ctx.radical_order();
           std::uint64_t n2 = partner.order() - partner.radical_order();
           out.status = n1 == n2 ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"n_SL(2,5)", n1}, {"n_C2xA5", n2}};
         }});

    defs.push_back(
        {"A7-count",
         "A7 has |G| - |R(G)| = 2519 vertices and k(A7) = 9 classes",
         false, only_group({"A7"}),
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           std::uint64_t n = ctx.order() - ctx.radical_order();
           std::uint64_t k = ctx.classes().count();
           out.status = (n == 2519 && k == 9) ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"vertices", n}, {"k", k}};
         }});

    defs.push_back(
        {"P5.1",
         "the degree pattern of an insoluble group is never constant",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           DegreeData d = eng.context(e).degree_data();
           out.status =
               d.degree_set.size() >= 2 ? ClaimStatus::holds : ClaimStatus::fails;
           out.witness = Json{{"distinct_degrees", d.degree_set.size()},
                              {"degree_set", degree_set_json(d)}};
         }});

    defs.push_back(
        {"C5.2",
         "the solubility graph of an insoluble group is not regular",
         false, need_insoluble,
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           if (e.tier == Tier::full_graph) {
             const GraphMetrics& m = eng.metrics(e);
             out.status = !m.is_regular ? ClaimStatus::holds : ClaimStatus::fails;
             out.witness = Json{{"is_regular", m.is_regular}, {"via", "graph"}};
           } else {
             DegreeData d = eng.context(e).degree_data();
             out.status =
                 d.degree_set.size() >= 2 ? ClaimStatus::holds : ClaimStatus::fails;
             out.witness = Json{{"distinct_degrees", d.degree_set.size()},
                                {"via", "degree pattern"}};
           }
         }});

    defs.push_back(
        {"I2.7-degset",
         "informational: compare the vertex degree sets of G and G/R(G)",
         true,
         [](VerifierEngine& eng, const CatalogEntry& e) -> std::optional<std::string> {
           if (!e.expected_insoluble) return "group is soluble";
           if (eng.context(e).radical_order() == 1) return "radical is trivial";
           if (e.tier != Tier::full_graph) return "full graph unavailable in invariant-only tier";
           return std::nullopt;
         },
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           const SolubilityContext& ctx = eng.context(e);
           const auto& rq = eng.radical_quotient(e);
           DegreeData dg = ctx.degree_data();
           DegreeData dq = rq.image_context->degree_data();
           bool equal = dg.degree_set == dq.degree_set;
           out.status = ClaimStatus::informational;
           out.witness = Json{{"degree_set_G", degree_set_json(dg)},
                              {"degree_set_quotient", degree_set_json(dq)},
                              {"sets_equal", equal}};
         }});

    defs.push_back(
        {"I3.1-PrS3",
         "informational: the commutativity degree of S3, compared against the "
         "figure 1/3",
         true, only_group({"S3"}),
         [](VerifierEngine& eng, const CatalogEntry& e, PropositionResult& out) {
           Rational pr = eng.context(e).commutativity_degree();
           out.status = ClaimStatus::informational;
           out.witness = Json{{"computed", pr.str()},
                              {"stated", "1/3"},
                              {"agrees", pr == Rational::of(1, 3)}};
         }});

    return defs;
  }();
  return claims;
}

}  // namespace detail

inline const std::vector<ClaimDef>& claim_registry() { return detail::registry(); }

inline const ClaimDef* find_claim(const std::string& id) {
  for (const ClaimDef& def : claim_registry()) {
    if (def.id == id) return &def;
  }
  return nullptr;
}

inline std::vector<std::string> default_plan() {
  std::vector<std::string> plan;
  for (const ClaimDef& def : claim_registry()) plan.push_back(def.id);
  return plan;
}

inline PropositionResult run_claim(VerifierEngine& engine, const std::string& claim_id,
                                   const CatalogEntry& entry) {
  const ClaimDef* def = find_claim(claim_id);
  if (!def) throw parse_error("unknown claim id '" + claim_id + "'");
  PropositionResult result;
  result.claim = def->id;
  result.group = entry.name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (auto reason = def->applicable(engine, entry)) {
      result.status = ClaimStatus::skipped;
      result.witness = Json{{"reason", *reason}};
    } else {
      def->run(engine, entry, result);
    }
  } catch (const budget_exceeded& e) {
    result.status = ClaimStatus::skipped;
    result.witness = Json{
        {"reason", std::string("budget exceeded; group downgraded for this claim: ") +
                       e.what()}};
  }
  result.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  return result;
}

/// Unsupported constructions the simple-group edge bound would also cover;
/// reported as skipped rows so the matrix stays complete.
inline const std::vector<std::pair<const char*, const char*>>&
p39_unsupported_groups() {
  static const std::vector<std::pair<const char*, const char*>> rows = {
      {"PSL(3,4)", "construction unsupported (extension field)"},
      {"M11", "construction unsupported (sporadic)"},
      {"Sz(8)", "construction unsupported (extension field)"},
      {"PSL(2,17)", "not in the standard catalog (runtime); "
                    "verify with --claim P3.9 --group \"PSL(2,17)\""},
  };
  return rows;
}

inline VerificationReport run_suite(VerifierEngine& engine,
                                    const std::vector<std::string>& plan,
                                    const std::vector<CatalogEntry>& catalog) {
  for (const std::string& id : plan) {
    if (!find_claim(id)) throw parse_error("unknown claim id '" + id + "' in plan");
  }
  VerificationReport report;
  for (const CatalogEntry& e : catalog) report.catalog.push_back(e.name);
  for (const ClaimDef& def : claim_registry()) {
    bool wanted = false;
    for (const std::string& id : plan) wanted = wanted || id == def.id;
    if (!wanted) continue;
    for (const CatalogEntry& entry : catalog) {
      report.results.push_back(run_claim(engine, def.id, entry));
    }
    if (def.id == "P3.9") {
      for (const auto& [name, reason] : p39_unsupported_groups()) {
        PropositionResult r;
        r.claim = def.id;
        r.group = name;
        r.status = ClaimStatus::skipped;
        r.witness = Json{{"reason", reason}};
        report.results.push_back(std::move(r));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------
// Renderings.

inline std::string VerificationReport::to_markdown(bool normalize_times) const {
  std::ostringstream out;
  out << "# Verification report\n\nversion: " << version << "\n\ncatalog:";
  for (const std::string& g : catalog) out << " `" << g << "`";
  out << "\n";
  for (const ClaimDef& def : claim_registry()) {
    bool any = false;
    for (const PropositionResult& r : results) any = any || r.claim == def.id;
    if (!any) continue;
    out << "\n## " << def.id << "\n\n" << def.statement << "\n\n";
    out << "| group | status | witness | ms |\n|---|---|---|---|\n";
    for (const PropositionResult& r : results) {
      if (r.claim != def.id) continue;
      out << "| " << r.group << " | " << status_name(r.status) << " | "
          << r.witness.dump() << " | " << (normalize_times ? 0 : r.ms) << " |\n";
    }
  }
  VerificationSummary s = summary();
  out << "\nsummary: " << s.holds << " holds, " << s.fails << " fails, " << s.skipped
      << " skipped, " << s.informational << " informational\n";
  return out.str();
}

inline std::string VerificationReport::to_csv(bool normalize_times) const {
  std::ostringstream out;
  out << "claim,group,status,ms,witness\n";
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const PropositionResult& r : results) {
    out << quote(r.claim) << ',' << quote(r.group) << ',' << status_name(r.status)
        << ',' << (normalize_times ? 0 : r.ms) << ',' << quote(r.witness.dump())
        << '\n';
  }
  return out.str();
}

}  // namespace solgraph

#endif  // SOLGRAPH_VERIFIER_HPP
