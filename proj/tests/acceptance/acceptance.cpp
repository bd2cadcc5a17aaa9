// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fixtures.hpp"
#include "hyperis/closed_forms.hpp"
#include "hyperis/cluster.hpp"
#include "hyperis/errors.hpp"
#include "hyperis/exact_counting.hpp"
#include "hyperis/instance_lab.hpp"
#include "hyperis/polymer.hpp"
#include "oracles.hpp"

using namespace hyperis;

namespace {

// Exact criteria compare integers and rationals directly, with no tolerance.
// Criterion 7 and criterion 1 runtime budgets, seconds.
constexpr double kCounterBudgetSeconds = 120.0;
constexpr double kIdentityBudgetSeconds = 60.0;

struct Outcome {
  bool pass = true;
  std::string note;
  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

// Polymers seen while checking criteria 1-3, replayed by criterion 8.
struct SeenModel {
  Hypergraph graph;
  std::uint32_t cls;
  std::uint32_t b;
};
std::vector<SeenModel> seen;

std::string str(const ExactRational& q) { return to_string(q); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Linear r-regular instances in the k in {3,4}, n <= 6, r <= 2 range. Infeasible
// parameter sets are skipped.
std::vector<Hypergraph> linear_instances(std::optional<std::uint32_t> min_girth) {
  std::vector<Hypergraph> out;
  for (std::uint32_t k = 3; k <= 4; ++k) {
    for (std::uint32_t n = 1; n <= 6; ++n) {
      for (std::uint32_t r = 1; r <= std::min<std::uint32_t>(2, n); ++r) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
          try {
            out.push_back(gen_linear_regular(k, n, r, seed, min_girth, 300));
          } catch (const GenerationFailure&) {
            break;
          }
        }
      }
    }
  }
  return out;
}

Outcome criterion_1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::vector<Hypergraph> graphs = {fixture::single_edge(), fixture::fan(),  fixture::nonlinear_pair(),
                                    fixture::loose_triangle(), fixture::complete_222(), fixture::edgeless(3, 3)};
  std::uint64_t seed = 1;
  for (std::uint32_t a = 1; a <= 4; ++a) {
    for (std::uint32_t b = 1; b <= 4; ++b) {
      for (std::uint32_t c = 1; c <= 4; ++c) {
        const std::size_t full = std::size_t{a} * b * c;
        for (std::size_t edges : {full / 4, full / 2, 3 * full / 4, full}) {
          graphs.push_back(gen_random_kpartite(3, {a, b, c}, std::max<std::size_t>(1, edges), seed++));
        }
      }
    }
  }
  std::size_t checks = 0;
  for (const auto& g : graphs) {
    for (std::uint32_t cls = 0; cls < g.k(); ++cls) {
      for (std::uint32_t b = 0; b <= g.class_size(cls); ++b) {
        const BigCount lhs = count_with_defect_class(g, cls, b).count;
        const ExactRational rhs = ExactRational(pow2(g.num_vertices() - g.class_size(cls))) * partition_function(g, cls, b);
        ++checks;
        if (ExactRational(lhs) != rhs) o.fail("mismatch " + to_string(lhs) + " vs " + str(rhs));
        if (g.num_vertices() <= 9 && lhs != oracle::defect_count(g, cls, b)) o.fail("oracle disagrees");
        if (b >= 1) seen.push_back({g, cls, b});
      }
    }
  }
  const double secs = seconds_since(start);
  if (graphs.size() < 200) o.fail("only " + std::to_string(graphs.size()) + " instances");
  if (secs > kIdentityBudgetSeconds) o.fail("took " + std::to_string(secs) + "s");
  if (o.pass) o.note = std::to_string(graphs.size()) + " instances, " + std::to_string(checks) + " (Z,b) pairs";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const auto graphs = linear_instances(std::nullopt);
  std::size_t checks = 0;
  for (const auto& g : graphs) {
    const std::uint32_t r = *regular_degree(g);
    const ExactRational expect =
        ExactRational(BigCount(static_cast<unsigned long>(g.class_size(0)))) * qpow(gamma_k(g.k()), -static_cast<std::int64_t>(r));
    for (std::uint32_t cls = 0; cls < g.k(); ++cls) {
      ++checks;
      const ExactRational got = truncated_log_xi(g, cls, 1);
      if (got != expect) o.fail(str(got) + " != " + str(expect));
      seen.push_back({g, cls, 1});
    }
  }
  if (graphs.empty()) o.fail("no instances generated");
  if (o.pass) o.note = std::to_string(graphs.size()) + " instances, " + std::to_string(checks) + " classes";
  return o;
}

// Each exponent term built from enumerated polymers rather than from the formula.
ExactRational enumerated_t2_exponent(const Hypergraph& g, std::uint32_t cls, std::uint32_t r) {
  ExactRational sum = 0;
  for (const auto& p : enumerate_polymers(g, cls, 2)) sum += oracle::weight(g, p.vertices);
  const BigCount pairs = oracle::ordered_singleton_pairs(g, cls);
  sum -= ExactRational(1, 2) * ExactRational(pairs) * qpow(gamma_k(g.k()), -2 * static_cast<std::int64_t>(r));
  sum.canonicalize();
  return sum;
}

Outcome criterion_3() {
  Outcome o;
  const auto graphs = linear_instances(5);
  std::size_t checks = 0;
  std::size_t with_r2 = 0;
  for (const auto& g : graphs) {
    const std::uint32_t k = g.k();
    const std::uint32_t n = g.class_size(0);
    const std::uint32_t r = *regular_degree(g);
    with_r2 += r == 2;
    const auto cf = closed_form_t2(k, n, r);
    ExactRational delta = ExactRational(1, 2) * ExactRational((k - 1) * r - 1) * ExactRational(n) *
                          qpow(gamma_k(k), -2 * static_cast<std::int64_t>(r));
    delta.canonicalize();
    if (cf.corrected.exponent - cf.printed.exponent != delta) o.fail("delta " + str(cf.delta) + " != " + str(delta));
    for (std::uint32_t cls = 0; cls < k; ++cls) {
      ++checks;
      const ExactRational got = truncated_log_xi(g, cls, 2);
      if (got != cf.corrected.exponent) o.fail(str(got) + " != corrected " + str(cf.corrected.exponent));
      if (got != enumerated_t2_exponent(g, cls, r)) o.fail("enumerated exponent differs");
      seen.push_back({g, cls, 2});
    }
  }
  if (graphs.empty()) o.fail("no instances generated");
  if (o.pass) {
    o.note = std::to_string(graphs.size()) + " instances (" + std::to_string(with_r2) + " with r=2), " +
             std::to_string(checks) + " classes";
  }
  return o;
}

Outcome criterion_4() {
  Outcome o;
  std::vector<Hypergraph> graphs = linear_instances(5);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) graphs.push_back(gen_linear_regular(3, 8, 2, seed, 5));
  std::string figures;
  for (const auto& g : graphs) {
    const std::uint64_t k = g.k();
    const std::uint64_t n = g.class_size(0);
    const std::uint64_t r = *regular_degree(g);
    for (std::uint32_t cls = 0; cls < k; ++cls) {
      BigCount pair_polymers = 0;
      BigCount singleton_pairs = 0;
      for (const auto& c : enumerate_clusters(g, cls, 2)) {
        if (c.length() == 1 && c.size() == 2) pair_polymers += 1;
        if (c.length() == 2 && c.size() == 2) singleton_pairs += c.ordering_count();
      }
      const BigCount expect_pairs = BigCount(static_cast<unsigned long>(n * (k - 1) * r * (r - 1) / 2));
      const BigCount expect_ordered = BigCount(static_cast<unsigned long>(n * ((k - 1) * r * (r - 1) + 1)));
      const BigCount printed_figure = BigCount(static_cast<unsigned long>(n * (k - 1) * r * r));
      if (pair_polymers != expect_pairs) o.fail("pair clusters " + to_string(pair_polymers));
      if (singleton_pairs != expect_ordered) o.fail("ordered pairs " + to_string(singleton_pairs));
      if (singleton_pairs != oracle::ordered_singleton_pairs(g, cls)) o.fail("oracle pair count differs");
      if (figures.empty() && r == 2) {
        figures = "k=" + std::to_string(k) + " n=" + std::to_string(n) + " r=2: pairs " + to_string(pair_polymers) +
                  ", ordered " + to_string(singleton_pairs) + ", n(k-1)r^2 figure " + to_string(printed_figure);
      }
    }
  }
  if (o.pass) o.note = std::to_string(graphs.size()) + " instances; " + figures;
  return o;
}

std::vector<SmallGraph> all_trees(std::uint32_t m) {
  // Decode every Pruefer sequence.
  std::vector<SmallGraph> out;
  if (m == 1) return {SmallGraph(1)};
  if (m == 2) return {SmallGraph::path(2)};
  std::uint32_t total = 1;
  for (std::uint32_t i = 0; i < m - 2; ++i) total *= m;
  for (std::uint32_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> seq(m - 2);
    std::uint32_t x = code;
    for (auto& s : seq) {
      s = x % m;
      x /= m;
    }
    std::vector<std::uint32_t> degree(m, 1);
    for (auto s : seq) ++degree[s];
    SmallGraph t(m);
    for (auto s : seq) {
      for (std::uint32_t leaf = 0; leaf < m; ++leaf) {
        if (degree[leaf] == 1) {
          t.add_edge(leaf, s);
          --degree[leaf];
          --degree[s];
          break;
        }
      }
    }
    std::uint32_t a = m, b = m;
    for (std::uint32_t v = 0; v < m; ++v) {
      if (degree[v] == 1) (a == m ? a : b) = v;
    }
    t.add_edge(a, b);
    out.push_back(t);
  }
  return out;
}

Outcome criterion_5() {
  Outcome o;
  std::size_t graphs = 0;
  for (std::uint32_t m = 1; m <= 5; ++m) {
    const ExactRational sign = m % 2 ? 1 : -1;
    if (ursell(SmallGraph::complete(m)) != sign / ExactRational(m)) o.fail("K_" + std::to_string(m));
    ExactRational tree_value = sign / ExactRational(oracle::factorial(m));
    tree_value.canonicalize();
    for (const auto& t : all_trees(m)) {
      if (!t.connected() || t.edge_count() != m - 1) o.fail("bad tree");
      if (ursell(t) != tree_value) o.fail("tree on " + std::to_string(m));
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;
    for (std::uint32_t a = 0; a < m; ++a) {
      for (std::uint32_t b = a + 1; b < m; ++b) slots.emplace_back(a, b);
    }
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      SmallGraph h(m);
      for (std::uint32_t i = 0; i < slots.size(); ++i) {
        if ((mask >> i) & 1) h.add_edge(slots[i].first, slots[i].second);
      }
      if (!h.connected()) continue;
      ++graphs;
      if (ursell(h) != oracle::ursell(h)) o.fail("brute force differs on a graph with " + std::to_string(m) + " vertices");
    }
  }
  if (o.pass) o.note = std::to_string(graphs) + " connected labelled graphs";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  for (const ExactRational w : {ExactRational(1, 2), ExactRational(3, 4)}) {
    PolymerSystem model;
    model.add(w, 1);
    ExactRational series = 0;
    for (std::uint32_t t = 1; t <= 6; ++t) {
      ExactRational term = qpow(w, t) / ExactRational(t);
      series += t % 2 ? term : -term;
      series.canonicalize();
      if (truncated_log_xi(model, t) != series) o.fail("w=" + str(w) + " t=" + std::to_string(t));
    }
  }
  if (o.pass) o.note = "w in {1/2, 3/4}, t = 1..6";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const std::uint32_t nv = 4 + static_cast<std::uint32_t>(seed % 17);
    const std::uint32_t u = 2 + static_cast<std::uint32_t>(seed % 3);
    const auto h = gen_random_set_system(nv, u, 1 + seed % (2 * nv), seed);
    if (count_independent_sets(h) != count_independent_sets_brute(h, 20)) o.fail("seed " + std::to_string(seed));
  }
  const double secs = seconds_since(start);
  if (secs > kCounterBudgetSeconds) o.fail("took " + std::to_string(secs) + "s");
  if (o.pass) o.note = "500 set systems, 4..20 vertices";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  std::size_t polymers = 0;
  for (const auto& [g, cls, b] : seen) {
    const std::uint32_t r = std::max<std::uint32_t>(1, max_degree(g));
    std::map<std::pair<Vertex, std::size_t>, BigCount> per_root;
    for (const auto& p : enumerate_polymers(g, cls, b)) {
      ++polymers;
      const auto m = max_matching_size(link_graph(g, p.vertices));
      if (polymer_weight(g, p) > matching_weight_bound(g.k(), m)) o.fail("weight above gamma^-m");
      for (Vertex v : p.vertices) per_root[{v, p.order()}] += 1;
    }
    for (const auto& [key, count] : per_root) {
      if (!two_linked_count_within_bound(g.k(), r, static_cast<std::uint32_t>(key.second), count)) {
        o.fail("count bound fails");
      }
    }
  }
  if (o.pass) o.note = std::to_string(polymers) + " polymers over " + std::to_string(seen.size()) + " models";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  std::size_t girth5 = 0;
  for (std::uint32_t n = 6; n <= 8; ++n) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto g = gen_linear_regular(3, n, 2, seed, 5);
      ++girth5;
      if (check_common_neighbor(g).verdict != Verdict::kHolds) o.fail("common neighbour fails, n=" + std::to_string(n));
      if (girth_at_most(g, 4).found()) o.fail("short cycle in a girth-5 instance");
    }
  }
  std::size_t cycles = 0;
  for (std::uint32_t k = 3; k <= 4; ++k) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto g = gen_loose_four_cycle(k, static_cast<std::uint32_t>(seed % 3), seed % 4, seed);
      ++cycles;
      if (check_common_neighbor(g).verdict != Verdict::kViolated) o.fail("loose 4-cycle not flagged");
      if (!girth_at_most(g, 4).found()) o.fail("loose 4-cycle not found");
    }
  }
  if (o.pass) o.note = std::to_string(girth5) + " girth-5 instances, " + std::to_string(cycles) + " loose 4-cycles";
  return o;
}

Outcome criterion_10() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  std::size_t reports = 0;
  for (std::uint32_t n = 3; n <= 6; ++n) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto gen = cli::run({"generate", "--k", "3", "--n", std::to_string(n), "--r", "2", "--seed",
                                 std::to_string(seed)});
      if (gen.exit_code != 0) {
        o.fail("generate failed: " + gen.err);
        continue;
      }
      const auto path = (dir / ("hyperis_accept_" + std::to_string(n) + "_" + std::to_string(seed) + ".txt")).string();
      std::ofstream(path) << gen.out;
      const auto first = cli::run({"-i", path, "compare", "--t", "2"});
      const auto second = cli::run({"-i", path, "--threads", "2", "compare", "--t", "2"});
      ++reports;
      if (first.exit_code != 0) o.fail("compare failed: " + first.err);
      if (first.out != second.out) o.fail("compare output not deterministic");
      if (first.out.find("estimate.relative_error=") == std::string::npos) o.fail("no relative error reported");
      std::filesystem::remove(path);
    }
  }
  if (o.pass) o.note = std::to_string(reports) + " reports";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"defect-class count equals 2^{|V|-|Z|} Xi", criterion_1},
      {"t=1 truncation equals n gamma^-r", criterion_2},
      {"t=2 truncation equals the corrected exponent", criterion_3},
      {"pair cluster counts", criterion_4},
      {"Ursell function values", criterion_5},
      {"single polymer gives the log(1+w) series", criterion_6},
      {"backtracking counter matches subset filtering", criterion_7},
      {"weight and 2-linked count bounds", criterion_8},
      {"common-neighbour property and loose 4-cycles", criterion_9},
      {"compare report is produced and deterministic", criterion_10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s [%zu] %s (%s; %.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.note.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
