#include "hyperis/instance_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "hyperis/errors.hpp"
#include "hyperis/rational.hpp"
#include "loose_cycles.hpp"

namespace hyperis {

namespace {

constexpr std::uint32_t kEdgeAttempts = 200;

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

std::vector<std::vector<VertexId>> to_ids(const std::vector<Edge>& edges, std::uint32_t n) {
  std::vector<std::vector<VertexId>> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    std::vector<VertexId> ids;
    for (Vertex v : e) ids.push_back({v / n, v % n});
    out.push_back(std::move(ids));
  }
  return out;
}

// One build attempt. Returns false when stuck.
class RegularBuilder {
 public:
  RegularBuilder(std::uint32_t k, std::uint32_t n, std::uint32_t r, std::optional<std::uint32_t> min_girth,
                 std::mt19937_64& rng)
      : k_(k), n_(n), r_(r), min_girth_(min_girth), rng_(rng), spare_(k * n, r), incidence_(k * n) {}

  bool build() {
    const std::size_t target = static_cast<std::size_t>(n_) * r_;
    while (edges_.size() < target) {
      if (!add_edge()) return false;
    }
    return true;
  }

  std::vector<Edge>& edges() { return edges_; }

 private:
  std::vector<Vertex> open_in(std::uint32_t cls) const {
    std::vector<Vertex> out;
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (spare_[cls * n_ + i] > 0) out.push_back(cls * n_ + i);
    }
    return out;
  }

  bool add_edge() {
    std::vector<std::vector<Vertex>> open(k_);
    for (std::uint32_t c = 0; c < k_; ++c) {
      open[c] = open_in(c);
      if (open[c].empty()) return false;
    }
    for (std::uint32_t attempt = 0; attempt < kEdgeAttempts; ++attempt) {
      Edge e;
      bool ok = true;
      for (std::uint32_t c = 0; c < k_ && ok; ++c) {
        const Vertex v = open[c][std::uniform_int_distribution<std::size_t>(0, open[c].size() - 1)(rng_)];
        for (Vertex u : e) {
          if (pairs_.count({u, v})) {
            ok = false;
            break;
          }
        }
        e.push_back(v);
      }
      if (!ok) continue;
      commit(e);
      if (min_girth_ && *min_girth_ >= 4 && creates_short_cycle()) {
        rollback();
        continue;
      }
      return true;
    }
    return false;
  }

  void commit(const Edge& e) {
    const auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back(e);
    for (Vertex v : e) {
      --spare_[v];
      incidence_[v].push_back(id);
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) pairs_.insert({e[i], e[j]});
    }
  }

  void rollback() {
    const Edge e = edges_.back();
    edges_.pop_back();
    for (Vertex v : e) {
      ++spare_[v];
      incidence_[v].pop_back();
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) pairs_.erase({e[i], e[j]});
    }
  }

  bool creates_short_cycle() const {
    const auto last = static_cast<std::uint32_t>(edges_.size() - 1);
    const auto search = detail::find_loose_cycle(edges_, incidence_, k_ * n_, *min_girth_ - 1, last,
                                                 kDefaultCycleNodeCap);
    return search.status != CycleSearchStatus::kNotFound;
  }

  std::uint32_t k_, n_, r_;
  std::optional<std::uint32_t> min_girth_;
  std::mt19937_64& rng_;
  std::vector<std::uint32_t> spare_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  std::vector<Edge> edges_;
  std::set<std::pair<Vertex, Vertex>> pairs_;
};

}  // namespace

Hypergraph gen_linear_regular(std::uint32_t k, std::uint32_t n, std::uint32_t r, std::uint64_t seed,
                              std::optional<std::uint32_t> min_girth, std::uint32_t restarts) {
  if (k < 2) throw InputError("generator needs k >= 2");
  if (n < 1 || r < 1) throw InputError("generator needs n >= 1 and r >= 1");
  if (r > n) throw InputError("infeasible: r=" + std::to_string(r) + " exceeds n=" + std::to_string(n));
  // A linear graph gives each vertex r edges with disjoint residues, so every
  // other class needs at least r vertices: r <= n covers it. Linearity across
  // a class pair also caps edges at n^2 per pair: r n <= n^2, same bound.
  std::mt19937_64 rng(seed);
  for (std::uint32_t attempt = 0; attempt < restarts; ++attempt) {
    RegularBuilder builder(k, n, r, min_girth, rng);
    if (builder.build()) {
      std::vector<std::uint32_t> sizes(k, n);
      return Hypergraph(k, sizes, to_ids(builder.edges(), n));
    }
  }
  std::string what = "no linear " + std::to_string(r) + "-regular k=" + std::to_string(k) +
                     " graph with n=" + std::to_string(n);
  if (min_girth) what += " and girth >= " + std::to_string(*min_girth);
  throw GenerationFailure(what + " after " + std::to_string(restarts) + " restarts (seed " +
                          std::to_string(seed) + ")");
}

Hypergraph gen_random_kpartite(std::uint32_t k, const std::vector<std::uint32_t>& class_sizes, std::size_t edges,
                               std::uint64_t seed) {
  if (class_sizes.size() != k) throw InputError("need one size per class");
  std::uint64_t total = 1;
  for (auto s : class_sizes) {
    if (s == 0) throw InputError("class sizes must be positive");
    total *= s;
    if (total > (1u << 20)) break;
  }
  std::mt19937_64 rng(seed);
  std::set<std::vector<VertexId>> chosen;
  const std::size_t want = std::min<std::uint64_t>(edges, total);
  if (total <= (1u << 20) && want * 2 > total) {
    // Dense request: shuffle the full list.
    std::vector<std::vector<VertexId>> all(1);
    for (std::uint32_t c = 0; c < k; ++c) {
      std::vector<std::vector<VertexId>> next;
      for (const auto& prefix : all) {
        for (std::uint32_t i = 0; i < class_sizes[c]; ++i) {
          auto e = prefix;
          e.push_back({c, i});
          next.push_back(std::move(e));
        }
      }
      all = std::move(next);
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(want);
    return Hypergraph(k, class_sizes, all);
  }
  while (chosen.size() < want) {
    std::vector<VertexId> e;
    for (std::uint32_t c = 0; c < k; ++c) {
      e.push_back({c, std::uniform_int_distribution<std::uint32_t>(0, class_sizes[c] - 1)(rng)});
    }
    chosen.insert(std::move(e));
  }
  return Hypergraph(k, class_sizes, {chosen.begin(), chosen.end()});
}

SetSystem gen_random_set_system(std::uint32_t num_vertices, std::uint32_t uniformity, std::size_t edges,
                                std::uint64_t seed) {
  if (uniformity < 1 || uniformity > num_vertices) throw InputError("uniformity out of range");
  std::mt19937_64 rng(seed);
  // C(V, u) bounds how many distinct edges exist.
  BigCount available = 1;
  for (std::uint32_t i = 0; i < uniformity; ++i) {
    available *= num_vertices - i;
    available /= i + 1;
  }
  const std::size_t want = available.fits_ulong_p() ? std::min<std::size_t>(edges, available.get_ui()) : edges;
  std::set<Edge> chosen;
  std::vector<Vertex> pool(num_vertices);
  std::iota(pool.begin(), pool.end(), 0);
  while (chosen.size() < want) {
    std::shuffle(pool.begin(), pool.end(), rng);
    Edge e(pool.begin(), pool.begin() + uniformity);
    std::sort(e.begin(), e.end());
    chosen.insert(std::move(e));
  }
  return SetSystem{num_vertices, {chosen.begin(), chosen.end()}};
}

Hypergraph gen_loose_four_cycle(std::uint32_t k, std::uint32_t padding, std::size_t extra, std::uint64_t seed) {
  if (k < 3) throw InputError("loose four-cycle needs k >= 3");
  // Joints alternate between classes 0 and 1; edge i holds joints i and i+1
  // plus one fresh vertex from each remaining class.
  std::vector<std::uint32_t> sizes(k, 4 + padding);
  sizes[0] = sizes[1] = 2 + padding;
  std::set<std::vector<VertexId>> edges;
  const VertexId joints[4] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (std::uint32_t i = 0; i < 4; ++i) {
    std::vector<VertexId> e = {joints[i], joints[(i + 1) % 4]};
    for (std::uint32_t c = 2; c < k; ++c) e.push_back({c, i});
    std::sort(e.begin(), e.end());
    edges.insert(std::move(e));
  }
  std::uint64_t total = 1;
  for (auto s : sizes) total *= s;
  const std::size_t want = std::min<std::uint64_t>(edges.size() + extra, total);
  std::mt19937_64 rng(seed);
  while (edges.size() < want) {
    std::vector<VertexId> e;
    for (std::uint32_t c = 0; c < k; ++c) {
      e.push_back({c, std::uniform_int_distribution<std::uint32_t>(0, sizes[c] - 1)(rng)});
    }
    edges.insert(std::move(e));
  }
  return Hypergraph(k, sizes, {edges.begin(), edges.end()});
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

struct RegularInfo {
  std::uint32_t r;
  std::uint32_t n;
};

RegularInfo require_regular(const Hypergraph& g, const std::string& what) {
  const auto r = regular_degree(g);
  if (!r || *r == 0) throw InputError(what + " needs a regular hypergraph with r >= 1");
  if (!g.equal_class_sizes()) throw InputError(what + " needs equal class sizes");
  return {*r, g.class_size(0)};
}

// Shared driver for the two expansion checks: every S inside a class with
// 1 <= |S| <= max_size must satisfy |N(S)| >= factor r |S|.
PropertyReport check_expansion(const Hypergraph& g, const std::string& name, double factor,
                               std::uint32_t max_size, std::uint32_t size_cap, std::uint32_t samples,
                               std::uint64_t seed) {
  const auto [r, n] = require_regular(g, name);
  PropertyReport report;
  report.property = name;
  report.parameters["max_size"] = std::to_string(max_size);
  report.parameters["size_cap"] = std::to_string(size_cap);
  report.parameters["samples"] = std::to_string(samples);
  report.parameters["factor"] = fmt(factor);
  max_size = std::min(max_size, n);
  double worst = std::numeric_limits<double>::infinity();
  bool violated = false;

  auto test = [&](const VertexSet& s) {
    const double nb = static_cast<double>(neighborhood(g, s).size());
    const double denom = static_cast<double>(r) * static_cast<double>(s.size());
    const double ratio = nb / denom;
    worst = std::min(worst, ratio);
    if (nb < factor * denom && !violated) {
      violated = true;
      report.witness = s;
      report.detail = "|N(S)|=" + std::to_string(static_cast<std::uint64_t>(nb)) + " < " + fmt(factor * denom);
    }
  };

  const std::uint32_t exhaustive = std::min(max_size, size_cap);
  for (std::uint32_t cls = 0; cls < g.k(); ++cls) {
    const Vertex base = g.class_offset(cls);
    for (std::uint32_t size = 1; size <= exhaustive; ++size) {
      std::vector<std::uint32_t> idx(size);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        VertexSet s;
        for (auto i : idx) s.push_back(base + i);
        test(s);
        int pos = static_cast<int>(size) - 1;
        while (pos >= 0 && idx[pos] == n - size + static_cast<std::uint32_t>(pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::uint32_t j = static_cast<std::uint32_t>(pos) + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<Vertex> pool(n);
  for (std::uint32_t size = exhaustive + 1; size <= max_size; ++size) {
    for (std::uint32_t i = 0; i < samples; ++i) {
      const auto cls = std::uniform_int_distribution<std::uint32_t>(0, g.k() - 1)(rng);
      std::iota(pool.begin(), pool.end(), g.class_offset(cls));
      for (std::uint32_t j = 0; j < size; ++j) {
        std::swap(pool[j], pool[std::uniform_int_distribution<std::uint32_t>(j, n - 1)(rng)]);
      }
      VertexSet s(pool.begin(), pool.begin() + size);
      std::sort(s.begin(), s.end());
      test(s);
    }
  }
  if (std::isfinite(worst)) report.worst_ratio = worst;
  if (violated) {
    report.verdict = Verdict::kViolated;
  } else if (exhaustive == max_size) {
    report.verdict = Verdict::kHolds;
  } else {
    report.verdict = Verdict::kUnknown;
    report.detail = "sizes " + std::to_string(exhaustive + 1) + ".." + std::to_string(max_size) + " only sampled";
  }
  return report;
}

}  // namespace

PropertyReport check_reg(const Hypergraph& g, std::uint32_t t) {
  if (t < 1) throw InputError("Reg(t) needs t >= 1");
  const auto [r, n] = require_regular(g, "reg");
  PropertyReport report;
  report.property = "reg";
  report.parameters["t"] = std::to_string(t);
  const std::uint64_t e = static_cast<std::uint64_t>(r) * t;
  const BigCount lhs = pow2((g.k() - 1) * e);
  const BigCount rhs = BigCount(static_cast<unsigned long>(n)) * ipow(pow2(g.k() - 1) - 1, e);
  report.verdict = lhs >= rhs ? Verdict::kHolds : Verdict::kViolated;
  report.detail = "gamma_k^(r t) " + std::string(lhs >= rhs ? ">=" : "<") + " n";
  return report;
}

PropertyReport check_exp1(const Hypergraph& g, double alpha, std::uint32_t size_cap, std::uint32_t samples,
                          std::uint64_t seed) {
  const auto [r, n] = require_regular(g, "exp1");
  (void)n;
  auto report = check_expansion(g, "exp1", static_cast<double>(g.k()) - 1.0 - alpha, r, size_cap, samples, seed);
  report.parameters["alpha"] = fmt(alpha);
  return report;
}

PropertyReport check_exp2(const Hypergraph& g, double beta, std::uint32_t size_cap, std::uint32_t samples,
                          std::uint64_t seed) {
  const auto [r, n] = require_regular(g, "exp2");
  const auto max_size = static_cast<std::uint32_t>(std::floor(beta * n / r));
  auto report = check_expansion(g, "exp2", static_cast<double>(g.k()) - 2.0 + beta, max_size, size_cap, samples,
                                seed);
  report.parameters["beta"] = fmt(beta);
  return report;
}

namespace {

class DefSearch {
 public:
  DefSearch(const Hypergraph& g, std::uint32_t b) : g_(g), b_(b), in_(g.num_vertices(), false), hits_(g.k(), 0) {}

  // Exhaustive DFS over independent sets; stops at the first violation.
  bool exhaustive(Vertex v = 0) {
    if (v == g_.num_vertices()) return violates();
    if (exhaustive(v + 1)) return true;
    if (!closes_edge(v)) {
      set(v, true);
      if (exhaustive(v + 1)) return true;  // keep the set for witness()
      set(v, false);
    }
    return false;
  }

  // Random maximal independent sets.
  bool randomized(std::uint32_t rounds, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vertex> order(g_.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    for (std::uint32_t i = 0; i < rounds; ++i) {
      std::shuffle(order.begin(), order.end(), rng);
      for (Vertex v : order) {
        if (!closes_edge(v)) set(v, true);
      }
      if (violates()) return true;
      for (Vertex v : order) set(v, false);
    }
    return false;
  }

  VertexSet witness() const {
    VertexSet out;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (in_[v]) out.push_back(v);
    }
    return out;
  }

 private:
  void set(Vertex v, bool on) {
    if (in_[v] == on) return;
    in_[v] = on;
    hits_[g_.class_of(v)] += on ? 1 : -1;
  }

  bool closes_edge(Vertex v) const {
    for (auto e : g_.incident(v)) {
      bool full = true;
      for (Vertex x : g_.edge(e)) {
        if (x != v && !in_[x]) {
          full = false;
          break;
        }
      }
      if (full) return true;
    }
    return false;
  }

  bool violates() const {
    return std::all_of(hits_.begin(), hits_.end(), [&](int h) { return h > static_cast<int>(b_); });
  }

  const Hypergraph& g_;
  std::uint32_t b_;
  std::vector<bool> in_;
  std::vector<int> hits_;
};

}  // namespace

PropertyReport check_def(const Hypergraph& g, std::uint32_t b, std::uint32_t budget, std::uint64_t seed) {
  PropertyReport report;
  report.property = "def";
  report.parameters["b"] = std::to_string(b);
  report.parameters["budget"] = std::to_string(budget);
  DefSearch search(g, b);
  if (g.num_vertices() <= budget) {
    if (search.exhaustive()) {
      report.verdict = Verdict::kViolated;
      report.witness = search.witness();
      report.detail = "independent set meets every class in more than b vertices";
    } else {
      report.verdict = Verdict::kHolds;
    }
    return report;
  }
  if (search.randomized(1000, seed)) {
    report.verdict = Verdict::kViolated;
    report.witness = search.witness();
    report.detail = "found by randomized search";
  } else {
    report.verdict = Verdict::kUnknown;
    report.detail = std::to_string(g.num_vertices()) + " vertices exceed budget; no violation found";
  }
  return report;
}

PropertyReport check_linear(const Hypergraph& g) {
  PropertyReport report;
  report.property = "linear";
  std::map<std::pair<Vertex, Vertex>, std::size_t> seen;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        auto [it, fresh] = seen.emplace(std::pair{e[a], e[b]}, i);
        if (!fresh) {
          report.verdict = Verdict::kViolated;
          report.witness = {e[a], e[b]};
          report.detail = "edges " + std::to_string(it->second) + " and " + std::to_string(i) + " share two vertices";
          return report;
        }
      }
    }
  }
  report.verdict = Verdict::kHolds;
  return report;
}

PropertyReport check_girth(const Hypergraph& g, std::uint32_t min_girth, std::uint64_t node_cap) {
  PropertyReport report;
  report.property = "girth";
  report.parameters["min_girth"] = std::to_string(min_girth);
  if (min_girth <= 3) {
    report.verdict = Verdict::kHolds;
    return report;
  }
  const auto search = girth_at_most(g, min_girth - 1, node_cap);
  switch (search.status) {
    case CycleSearchStatus::kFound:
      report.verdict = Verdict::kViolated;
      report.witness = search.witness;
      report.detail = "loose " + std::to_string(search.length) + "-cycle";
      break;
    case CycleSearchStatus::kNotFound:
      report.verdict = Verdict::kHolds;
      break;
    case CycleSearchStatus::kIndeterminate:
      report.verdict = Verdict::kUnknown;
      report.detail = "node cap reached after " + std::to_string(search.nodes_visited) + " nodes";
      break;
  }
  return report;
}

PropertyReport check_common_neighbor(const Hypergraph& g) {
  PropertyReport report;
  report.property = "common-neighbor";
  std::vector<VertexSet> nbhd(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) nbhd[v] = neighborhood(g, std::vector<Vertex>{v});
  std::size_t pairs = 0;
  for (std::uint32_t cls = 0; cls < g.k(); ++cls) {
    const Z2Graph z2(g, cls);
    for (std::uint32_t i = 0; i < z2.size(); ++i) {
      const Vertex v = z2.offset() + i;
      for (Vertex u : z2.neighbors(v)) {
        if (u < v) continue;
        ++pairs;
        VertexSet common;
        std::set_intersection(nbhd[v].begin(), nbhd[v].end(), nbhd[u].begin(), nbhd[u].end(),
                              std::back_inserter(common));
        if (common.size() != 1) {
          report.verdict = Verdict::kViolated;
          report.witness = {v, u};
          report.witness.insert(report.witness.end(), common.begin(), common.end());
          report.detail = std::to_string(common.size()) + " common neighbours";
          return report;
        }
      }
    }
  }
  report.verdict = Verdict::kHolds;
  report.detail = std::to_string(pairs) + " Z2 edges scanned";
  return report;
}

PropertyReport check_degree_bound(const Hypergraph& g, const PropertyReport& exp1, double alpha) {
  PropertyReport report;
  report.property = "degree-bound";
  report.parameters["alpha"] = fmt(alpha);
  const auto [r, n] = require_regular(g, "degree-bound");
  if (exp1.property != "exp1" || exp1.verdict != Verdict::kHolds || !(alpha < 1.0) || g.k() < 3 || n < 3) {
    report.verdict = Verdict::kUnknown;
    report.detail = "needs an exhaustive exp1 pass with alpha < 1, k >= 3 and n >= 3";
    return report;
  }
  const std::uint64_t r2 = static_cast<std::uint64_t>(r) * r;
  report.verdict = r2 <= 2ull * n ? Verdict::kHolds : Verdict::kViolated;
  report.detail = "r^2=" + std::to_string(r2) + " vs 2n=" + std::to_string(2ull * n);
  return report;
}

}  // namespace hyperis
