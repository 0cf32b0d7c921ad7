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

// solgraph: solubility graphs of finite permutation groups.
//
//   solgraph analyze "A5"                    invariants of one group
//   solgraph verify --all                    run the claim matrix
//   solgraph iso "SL(2,5)" "C2 x A5"         graph isomorphism verdict
//
// Results that are expensive to compute are cached on disk keyed by
// (version, spec, computation kind, parameters); cached payloads are byte
// identical to recomputation, which --verify-cache checks explicitly.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "solgraph/canonical.hpp"
#include "solgraph/graph.hpp"
#include "solgraph/group_spec.hpp"
#include "solgraph/solubility.hpp"
#include "solgraph/verifier.hpp"
#include "solgraph/version.hpp"

namespace fs = std::filesystem;
using solgraph::Json;

namespace {

struct CommonOptions {
  std::string format = "md";
  int jobs = solgraph::default_jobs();
  std::string cache_dir;
  bool no_cache = false;
  bool verify_cache = false;
  bool normalize_times = false;
  std::uint64_t budget_pairs = 50'000'000;
  std::uint64_t budget_enum = solgraph::kDefaultEnumBudget;
  std::uint64_t budget_iso_nodes = solgraph::kDefaultIsoNodeBudget;
  std::uint64_t tier_threshold = 600;
  std::uint64_t seed = 0;

  solgraph::SolubilityOptions solubility() const {
    solgraph::SolubilityOptions s;
    s.enum_budget = budget_enum;
    s.pair_budget = budget_pairs;
    s.jobs = jobs;
    return s;
  }

  Json cache_params() const {
    return Json{{"budget_pairs", budget_pairs},
                {"budget_enum", budget_enum},
                {"budget_iso_nodes", budget_iso_nodes},
                {"tier_threshold", tier_threshold}};
  }
};

void add_common_options(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--format", opts->format, "output format: json, md or csv")
      ->check(CLI::IsMember({"json", "md", "csv"}));
  cmd->add_option("--jobs", opts->jobs, "worker threads (default: machine parallelism)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--cache-dir", opts->cache_dir,
                  "result cache directory (default: $SOLGRAPH_CACHE_DIR or the "
                  "platform cache dir)");
  cmd->add_flag("--no-cache", opts->no_cache, "disable the result cache");
  cmd->add_flag("--verify-cache", opts->verify_cache,
                "recompute on every cache hit and require byte-identical results");
  cmd->add_flag("--normalize-times", opts->normalize_times,
                "zero all elapsed-time fields (for byte-exact comparisons)");
  cmd->add_option("--budget-pairs", opts->budget_pairs,
                  "max pair-solubility tests per group");
  cmd->add_option("--budget-enum", opts->budget_enum,
                  "max elements enumerated per group");
  cmd->add_option("--budget-iso-nodes", opts->budget_iso_nodes,
                  "max canonical-search nodes per graph");
  cmd->add_option("--tier-threshold", opts->tier_threshold,
                  "max vertex count for the full-graph tier");
  cmd->add_option("--seed", opts->seed, "seed for randomized stress checks");
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string utc_now_iso8601() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path resolve_cache_dir(const CommonOptions& opts) {
  if (!opts.cache_dir.empty()) return opts.cache_dir;
  if (const char* env = std::getenv("SOLGRAPH_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME")) {
    return fs::path(xdg) / "solgraph";
  }
  if (const char* home = std::getenv("HOME")) {
    return fs::path(home) / ".cache" / "solgraph";
  }
  return fs::path("solgraph-cache");
}

/// Disk cache of computation payloads. Entries are written atomically
/// (temp file + rename) and keyed by version, kind, subject and parameters.
class ResultCache {
 public:
  ResultCache(const CommonOptions& opts)
      : enabled_(!opts.no_cache), verify_(opts.verify_cache) {
    if (enabled_) {
      dir_ = resolve_cache_dir(opts);
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) {
        std::cerr << "warning: cannot create cache dir " << dir_ << ", caching off\n";
        enabled_ = false;
      }
    }
  }

  template <typename Fn>
  Json get_or_compute(const std::string& kind, const std::string& subject,
                      const Json& params, Fn&& compute) {
    if (!enabled_) return compute();
    std::string key_material = std::string(solgraph::kVersion) + '\0' + kind + '\0' +
                               subject + '\0' + params.dump();
    fs::path file = dir_ / (hex64(fnv1a64(key_material)) + ".json");
    if (fs::exists(file)) {
      std::ifstream in(file);
      Json entry = Json::parse(in, nullptr, false);
      if (!entry.is_discarded() && entry.value("version", "") == solgraph::kVersion &&
          entry.value("kind", "") == kind && entry.value("subject", "") == subject &&
          entry["params"] == params) {
        ++hits_;
        Json payload = entry["payload"];
        if (verify_) {
          Json fresh = compute();
          if (fresh.dump() != payload.dump()) {
            throw solgraph::internal_error("cache verification failed for " + kind +
                                           " '" + subject + "'");
          }
        }
        return payload;
      }
    }
    Json payload = compute();
    ++misses_;
    Json entry{{"version", solgraph::kVersion},
               {"kind", kind},
               {"subject", subject},
               {"params", params},
               {"created_at", utc_now_iso8601()},
               {"payload", payload}};
    fs::path tmp = dir_ / ("tmp-" + std::to_string(::getpid()) + "-" +
                           file.filename().string());
    {
      std::ofstream out(tmp);
      out << entry.dump(2) << '\n';
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
    if (ec) fs::remove(tmp, ec);
    return payload;
  }

  void report(std::ostream& os) const {
    if (enabled_) os << "cache: " << hits_ << " hits, " << misses_ << " misses\n";
  }

 private:
  bool enabled_;
  bool verify_;
  fs::path dir_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

// ---------------------------------------------------------------------

Json analyze_group(const std::string& spec_text, const CommonOptions& opts) {
  using namespace solgraph;
  GroupSpec spec = GroupSpec::parse(spec_text);
  PermutationGroup G = build_group(spec);
  std::uint64_t radical_order = soluble_radical(G, opts.budget_enum).order();
  std::uint64_t vertices = G.order() - radical_order;
  Tier tier =
      vertices <= opts.tier_threshold ? Tier::full_graph : Tier::invariant_only;
  SolubilityContext ctx(G, tier, opts.solubility());
  DegreeData dd = ctx.degree_data();

  Json out;
  out["spec"] = spec.print();
  out["version"] = kVersion;
  out["order"] = ctx.order();
  out["permutation_degree"] = G.degree();
  out["soluble"] = ctx.group_is_soluble();
  out["radical_order"] = ctx.radical_order();
  out["conjugacy_classes"] = ctx.classes().count();
  out["Ps"] = ctx.solubility_degree().str();
  out["Pr"] = ctx.commutativity_degree().str();
  out["tier"] = tier_name(tier);
  Json degrees;
  degrees["n"] = dd.n;
  degrees["delta_s"] = dd.min_degree;
  degrees["Delta_s"] = dd.max_degree;
  degrees["distinct"] = dd.degree_set.size();
  Json set = Json::array();
  for (std::uint64_t v : dd.degree_set) set.push_back(v);
  degrees["set"] = std::move(set);
  out["degrees"] = std::move(degrees);

  if (!ctx.group_is_soluble() && tier == Tier::full_graph) {
    SolubilityGraph g = build_graph(ctx, opts.jobs);
    GraphMetrics m = compute_metrics(g, opts.jobs);
    Json graph;
    graph["vertices"] = g.n;
    graph["edges"] = m.edge_count;
    graph["edges_formula"] = edge_count_from_formula(
        ctx.order(), ctx.solubility_degree(), ctx.radical_order());
    graph["girth"] = m.girth;
    graph["connected"] = m.is_connected;
    graph["diameter"] = m.diameter;
    graph["regular"] = m.is_regular;
    graph["has_k4"] = m.has_k4;
    if (m.has_k4) {
      Json clique = Json::array();
      for (std::uint64_t v : m.k4_witness) {
        clique.push_back(g.vertex_elements[v].to_cycles());
      }
      graph["k4_witness"] = std::move(clique);
    }
    graph["dirac_predicate"] = m.dirac_holds;
    graph["ore_bondy_edge_bound"] = m.ore_bondy_edge_bound_holds;
    try {
      GraphCertificate cert = canonical_certificate(g.adj, opts.budget_iso_nodes);
      graph["certificate_sha"] = hex64(fnv1a64(
          std::string(cert.bytes.begin(), cert.bytes.end())));
      graph["certificate_nodes"] = cert.nodes_explored;
    } catch (const iso_budget_exceeded& e) {
      // Degrade to the stable refinement invariants instead of failing.
      graph["certificate_error"] = e.what();
      Json hist = Json::array();
      for (auto [weight, size] : e.refinement_histogram) {
        hist.push_back(Json::array({weight, size}));
      }
      graph["refinement_histogram"] = std::move(hist);
    }
    out["graph"] = std::move(graph);
  }
  return out;
}

void export_graph_files(const std::string& spec_text, const CommonOptions& opts,
                        const std::string& path) {
  using namespace solgraph;
  PermutationGroup G = build_group(spec_text);
  std::uint64_t radical_order = soluble_radical(G, opts.budget_enum).order();
  if (G.order() - radical_order > opts.tier_threshold) {
    throw tier_violation("graph export requires the full-graph tier");
  }
  SolubilityContext ctx(G, Tier::full_graph, opts.solubility());
  SolubilityGraph g = build_graph(ctx, opts.jobs);
  {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << to_edge_list(g);
  }
  GraphCertificate cert = canonical_certificate(g.adj, opts.budget_iso_nodes);
  {
    std::ofstream out(path + ".cert");
    if (!out) throw error("cannot write " + path + ".cert");
    out << certificate_hex(cert) << '\n';
  }
}

void print_analysis(const Json& a, const std::string& format, std::ostream& os) {
  if (format == "json") {
    os << a.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    os << "key,value\n";
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (it->is_structured()) {
        for (auto jt = it->begin(); jt != it->end(); ++jt) {
          os << it.key() << '.' << jt.key() << ',' << jt->dump() << '\n';
        }
      } else {
        os << it.key() << ',' << it->dump() << '\n';
      }
    }
    return;
  }
  os << "# " << a.at("spec").get<std::string>() << "\n\n";
  os << "| property | value |\n|---|---|\n";
  for (auto it = a.begin(); it != a.end(); ++it) {
    if (it.key() == "spec") continue;
    os << "| " << it.key() << " | " << it->dump() << " |\n";
  }
}

int cmd_analyze(const std::string& spec_text, const CommonOptions& opts,
                const std::string& export_path, const std::string& out_path) {
  ResultCache cache(opts);
  Json payload;
  if (!export_path.empty()) {
    // Exports always recompute; the analysis payload may still come from cache.
    export_graph_files(spec_text, opts, export_path);
  }
  payload = cache.get_or_compute("analyze", solgraph::GroupSpec::parse(spec_text).print(),
                                 opts.cache_params(),
                                 [&] { return analyze_group(spec_text, opts); });
  std::ostringstream rendered;
  print_analysis(payload, opts.format, rendered);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw solgraph::error("cannot write " + out_path);
    out << rendered.str();
  } else {
    std::cout << rendered.str();
  }
  cache.report(std::cerr);
  return 0;
}

// ---------------------------------------------------------------------

int cmd_verify(bool all, std::vector<std::string> claims,
               std::vector<std::string> groups, const CommonOptions& opts,
               const std::string& out_path) {
  using namespace solgraph;
  std::vector<std::string> plan = all || claims.empty() ? default_plan() : claims;
  for (const std::string& id : plan) {
    if (!find_claim(id)) throw parse_error("unknown claim id '" + id + "'");
  }
  CatalogOptions copts;
  copts.full_graph_threshold = opts.tier_threshold;
  copts.solubility = opts.solubility();
  std::vector<CatalogEntry> catalog;
  if (groups.empty()) {
    catalog = standard_catalog(copts);
  } else {
    for (const std::string& g : groups) {
      GroupSpec spec = GroupSpec::parse(g);
      PermutationGroup built = build_group(spec);
      catalog.push_back(make_catalog_entry(g, !is_soluble(built), copts));
    }
  }

  VerifierEngine::Options eopts;
  eopts.solubility = opts.solubility();
  eopts.iso_node_budget = opts.budget_iso_nodes;
  eopts.full_graph_threshold = opts.tier_threshold;
  VerifierEngine engine(eopts);
  ResultCache cache(opts);

  VerificationReport report;
  for (const CatalogEntry& e : catalog) report.catalog.push_back(e.name);
  for (const ClaimDef& def : claim_registry()) {
    bool wanted = false;
    for (const std::string& id : plan) wanted = wanted || id == def.id;
    if (!wanted) continue;
    for (const CatalogEntry& entry : catalog) {
      auto t0 = std::chrono::steady_clock::now();
      Json payload = cache.get_or_compute(
          "claim", def.id + "@" + entry.name, opts.cache_params(), [&] {
            PropositionResult r = run_claim(engine, def.id, entry);
            return Json{{"status", status_name(r.status)}, {"witness", r.witness}};
          });
      PropositionResult r;
      r.claim = def.id;
      r.group = entry.name;
      r.status = status_from_name(payload.at("status").get<std::string>());
      r.witness = payload.at("witness");
      r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
      report.results.push_back(std::move(r));
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

  std::string rendered;
  if (opts.format == "json") {
    rendered = report.to_json(opts.normalize_times).dump(2) + "\n";
  } else if (opts.format == "csv") {
    rendered = report.to_csv(opts.normalize_times);
  } else {
    rendered = report.to_markdown(opts.normalize_times);
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw error("cannot write " + out_path);
    out << rendered;
  } else {
    std::cout << rendered;
  }
  cache.report(std::cerr);
  VerificationSummary s = report.summary();
  std::cerr << "verify: " << s.holds << " holds, " << s.fails << " fails, "
            << s.skipped << " skipped, " << s.informational << " informational\n";
  return s.fails > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------

int cmd_iso(const std::string& spec1, const std::string& spec2,
            const CommonOptions& opts, const std::string& bijection_path,
            std::uint64_t stress) {
  using namespace solgraph;
  auto context_of = [&](const std::string& text) {
    PermutationGroup G = build_group(text);
    std::uint64_t radical_order = soluble_radical(G, opts.budget_enum).order();
    if (is_soluble(G)) {
      throw soluble_group_error("'" + text + "' is soluble; it has no solubility graph");
    }
    if (G.order() - radical_order > opts.tier_threshold) {
      throw tier_violation("'" + text + "' exceeds the full-graph tier threshold");
    }
    return SolubilityContext(G, Tier::full_graph, opts.solubility());
  };
  SolubilityContext c1 = context_of(spec1);
  SolubilityContext c2 = context_of(spec2);
  SolubilityGraph g1 = build_graph(c1, opts.jobs);
  SolubilityGraph g2 = build_graph(c2, opts.jobs);
  IsoResult iso = are_isomorphic(g1.adj, g2.adj, opts.budget_iso_nodes);
  std::cout << (iso.isomorphic ? "isomorphic" : "not isomorphic") << " ("
            << g1.n << " and " << g2.n << " vertices, " << iso.nodes_explored
            << " search nodes)\n";
  if (iso.isomorphic && !bijection_path.empty()) {
    std::ofstream out(bijection_path);
    if (!out) throw error("cannot write " + bijection_path);
    out << "# verified vertex bijection: " << GroupSpec::parse(spec1).print()
        << " -> " << GroupSpec::parse(spec2).print() << "\n"
        << g1.n << "\n";
    for (std::uint64_t v = 0; v < g1.n; ++v) {
      out << v << ' ' << iso.bijection[v] << '\n';
    }
    std::cerr << "bijection written to " << bijection_path << '\n';
  }
  if (stress > 0) {
    std::mt19937 rng(static_cast<std::uint32_t>(opts.seed));
    GraphCertificate base = canonical_certificate(g1.adj, opts.budget_iso_nodes);
    for (std::uint64_t trial = 0; trial < stress; ++trial) {
      std::vector<std::uint64_t> perm(g1.n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      BitMatrix shuffled(g1.n);
      for (std::uint64_t i = 0; i < g1.n; ++i) {
        for (std::uint64_t j = i + 1; j < g1.n; ++j) {
          if (g1.adj.get(i, j)) {
            shuffled.set(perm[i], perm[j]);
            shuffled.set(perm[j], perm[i]);
          }
        }
      }
      GraphCertificate cert = canonical_certificate(shuffled, opts.budget_iso_nodes);
      if (cert.bytes != base.bytes) {
        throw internal_error("certificate changed under relabeling (seed " +
                             std::to_string(opts.seed) + ", trial " +
                             std::to_string(trial) + ")");
      }
    }
    std::cerr << "stress: " << stress << " relabelings, certificates stable\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solubility graphs of finite permutation groups"};
  app.set_version_flag("--version", std::string(solgraph::kVersion));
  app.require_subcommand(1);

  CommonOptions aopts, vopts, iopts;
  std::string analyze_spec, export_path, analyze_out;
  CLI::App* analyze = app.add_subcommand("analyze", "invariants of one group");
  analyze->add_option("spec", analyze_spec, "group spec, e.g. \"A5 x C2\"")->required();
  analyze->add_option("--export-graph", export_path,
                      "write the edge list to PATH and the certificate to PATH.cert");
  analyze->add_option("--out", analyze_out, "write the report to a file");
  add_common_options(analyze, &aopts);

  bool verify_all = false;
  std::vector<std::string> verify_claims, verify_groups;
  std::string verify_out;
  CLI::App* verify = app.add_subcommand("verify", "run the claim verification matrix");
  verify->add_flag("--all", verify_all, "run every claim (default when no --claim)");
  verify->add_option("--claim", verify_claims, "claim id (repeatable)");
  verify->add_option("--group", verify_groups,
                     "group spec (repeatable; default: the standard catalog)");
  verify->add_option("--out", verify_out, "write the report to a file");
  add_common_options(verify, &vopts);

  std::string iso_a, iso_b, bijection_path;
  std::uint64_t stress = 0;
  CLI::App* iso = app.add_subcommand("iso", "solubility-graph isomorphism verdict");
  iso->add_option("spec1", iso_a, "first group spec")->required();
  iso->add_option("spec2", iso_b, "second group spec")->required();
  iso->add_option("--bijection-out", bijection_path,
                  "write the verified vertex bijection to a file");
  iso->add_option("--stress", stress,
                  "extra seeded relabelings checked for certificate stability");
  add_common_options(iso, &iopts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_spec, aopts, export_path, analyze_out);
    if (verify->parsed()) {
      return cmd_verify(verify_all, verify_claims, verify_groups, vopts, verify_out);
    }
    if (iso->parsed()) return cmd_iso(iso_a, iso_b, iopts, bijection_path, stress);
  } catch (const solgraph::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const solgraph::budget_exceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const solgraph::tier_violation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const solgraph::soluble_group_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const solgraph::internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
