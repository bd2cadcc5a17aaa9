#include "hyperis/exact_counting.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>

#include "hyperis/errors.hpp"

namespace hyperis {

std::uint32_t default_enumeration_cap() {
  if (const char* env = std::getenv("HYPERIS_ENUM_CAP")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0 && v <= 40) return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultEnumerationCap;
}

SetSystem as_set_system(const Hypergraph& g) {
  return SetSystem{g.num_vertices(), g.edges()};
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    std::size_t h = key.size();
    for (auto x : key) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Removes vertex v and renumbers the vertices above it.
Edge drop_vertex(const Edge& e, Vertex v) {
  Edge out;
  out.reserve(e.size());
  for (Vertex x : e) {
    if (x != v) out.push_back(x > v ? x - 1 : x);
  }
  return out;
}

class Counter {
 public:
  BigCount solve(std::uint32_t n, std::vector<Edge> edges) {
    std::vector<bool> forced_out(n, false);
    // Unit propagation: a singleton edge {u} forbids u, which satisfies every
    // other edge through u.
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& e : edges) {
        if (e.empty()) return 0;
        if (e.size() == 1 && !forced_out[e[0]]) {
          forced_out[e[0]] = true;
          changed = true;
        }
      }
      if (changed) {
        std::erase_if(edges, [&](const Edge& e) {
          return std::any_of(e.begin(), e.end(), [&](Vertex x) { return forced_out[x]; });
        });
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Union-find over vertices covered by edges.
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<bool> covered(n, false);
    for (const auto& e : edges) {
      for (Vertex x : e) {
        covered[x] = true;
        parent[find(x)] = find(e[0]);
      }
    }
    std::uint64_t free_vertices = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (!covered[v] && !forced_out[v]) ++free_vertices;
    }
    BigCount result = pow2(free_vertices);
    if (edges.empty()) return result;

    std::unordered_map<Vertex, std::vector<std::size_t>> groups;
    std::vector<Vertex> roots;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Vertex root = find(edges[i][0]);
      auto [it, fresh] = groups.try_emplace(root);
      if (fresh) roots.push_back(root);
      it->second.push_back(i);
    }
    for (Vertex root : roots) {
      // Compact the component onto 0..m-1.
      std::vector<Vertex> members;
      for (auto i : groups[root]) members.insert(members.end(), edges[i].begin(), edges[i].end());
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      std::vector<Edge> local;
      local.reserve(groups[root].size());
      for (auto i : groups[root]) {
        Edge e;
        for (Vertex x : edges[i]) {
          e.push_back(static_cast<Vertex>(std::lower_bound(members.begin(), members.end(), x) - members.begin()));
        }
        local.push_back(std::move(e));
      }
      result *= solve_component(static_cast<std::uint32_t>(members.size()), std::move(local));
      if (result == 0) return result;
    }
    return result;
  }

 private:
  // Connected, every vertex covered, no empty or singleton edges.
  BigCount solve_component(std::uint32_t m, std::vector<Edge> edges) {
    if (edges.size() == 1) return pow2(m) - 1;

    std::vector<std::uint32_t> key = canonical_key(m, edges);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<std::uint32_t> degree(m, 0);
    for (const auto& e : edges) {
      for (Vertex x : e) ++degree[x];
    }
    const Vertex v = static_cast<Vertex>(std::max_element(degree.begin(), degree.end()) - degree.begin());

    std::vector<Edge> excluded;
    std::vector<Edge> included;
    excluded.reserve(edges.size());
    included.reserve(edges.size());
    for (const auto& e : edges) {
      const bool has_v = std::find(e.begin(), e.end(), v) != e.end();
      if (!has_v) excluded.push_back(drop_vertex(e, v));
      included.push_back(drop_vertex(e, v));
    }
    BigCount total = solve(m - 1, std::move(excluded));
    total += solve(m - 1, std::move(included));

    if (memo_.size() >= kMemoCap) memo_.clear();
    memo_.emplace(std::move(key), total);
    return total;
  }

  // Relabels vertices by a degree-refined signature so isomorphic residuals
  // (matchings, paths, stars) usually share a key. Any relabelling is exact,
  // so a miss only costs time.
  static std::vector<std::uint32_t> canonical_key(std::uint32_t m, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::uint32_t>> signature(m);
    for (const auto& e : edges) {
      for (Vertex x : e) signature[x].push_back(static_cast<std::uint32_t>(e.size()));
    }
    for (auto& s : signature) std::sort(s.begin(), s.end());
    std::vector<Vertex> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      if (signature[a].size() != signature[b].size()) return signature[a].size() > signature[b].size();
      return signature[a] < signature[b];
    });
    std::vector<Vertex> label(m);
    for (std::uint32_t i = 0; i < m; ++i) label[order[i]] = i;

    std::vector<Edge> relabelled;
    relabelled.reserve(edges.size());
    for (const auto& e : edges) {
      Edge r;
      for (Vertex x : e) r.push_back(label[x]);
      std::sort(r.begin(), r.end());
      relabelled.push_back(std::move(r));
    }
    std::sort(relabelled.begin(), relabelled.end());
    std::vector<std::uint32_t> key{m};
    for (const auto& e : relabelled) {
      key.push_back(static_cast<std::uint32_t>(e.size()) | 0x80000000u);
      key.insert(key.end(), e.begin(), e.end());
    }
    return key;
  }

  static constexpr std::size_t kMemoCap = 1u << 18;
  std::unordered_map<std::vector<std::uint32_t>, BigCount, KeyHash> memo_;
};

void validate(const SetSystem& h) {
  for (const auto& e : h.edges) {
    for (Vertex x : e) {
      if (x >= h.num_vertices) throw InputError("edge vertex " + std::to_string(x) + " out of range");
    }
  }
}

std::vector<std::uint64_t> edge_masks(const SetSystem& h) {
  std::vector<std::uint64_t> masks;
  masks.reserve(h.edges.size());
  for (const auto& e : h.edges) {
    std::uint64_t m = 0;
    for (Vertex x : e) m |= std::uint64_t{1} << x;
    masks.push_back(m);
  }
  return masks;
}

}  // namespace

BigCount count_independent_sets(const SetSystem& h) {
  validate(h);
  std::vector<Edge> edges;
  edges.reserve(h.edges.size());
  for (auto e : h.edges) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    edges.push_back(std::move(e));
  }
  Counter counter;
  return counter.solve(h.num_vertices, std::move(edges));
}

BigCount count_independent_sets(const Hypergraph& g) {
  return count_independent_sets(as_set_system(g));
}

BigCount count_independent_sets_brute(const SetSystem& h, std::uint32_t cap) {
  validate(h);
  if (h.num_vertices > cap || h.num_vertices > 40) {
    throw BudgetExceeded("brute-force count refused: " + std::to_string(h.num_vertices) +
                         " vertices exceeds cap " + std::to_string(cap));
  }
  const auto masks = edge_masks(h);
  std::uint64_t count = 0;
  const std::uint64_t limit = std::uint64_t{1} << h.num_vertices;
  for (std::uint64_t s = 0; s < limit; ++s) {
    bool ok = true;
    for (auto m : masks) {
      if ((s & m) == m) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  BigCount out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(count), 0, 0, &count);
  return out;
}

namespace {

BigCount from_u64(std::uint64_t x) {
  BigCount out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return out;
}

// Order of the largest connected component of Z2[trace] (trace as a bitmask
// over local indices).
std::uint32_t largest_component(const std::vector<std::uint64_t>& z2_adj, std::uint64_t trace) {
  std::uint32_t best = 0;
  std::uint64_t left = trace;
  while (left) {
    std::uint64_t comp = left & (~left + 1);
    std::uint64_t frontier = comp;
    while (frontier) {
      const int i = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint64_t fresh = z2_adj[i] & trace & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    left &= ~comp;
    best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(std::popcount(comp)));
  }
  return best;
}

}  // namespace

DefectTraceTable::DefectTraceTable(const Hypergraph& g, std::uint32_t cls, std::uint32_t cap) : cls_(cls) {
  if (cls >= g.k()) throw InputError("class " + std::to_string(cls) + " out of range");
  if (g.num_vertices() > cap || g.num_vertices() > 40) {
    throw BudgetExceeded("defect-class enumeration refused: " + std::to_string(g.num_vertices()) +
                         " vertices exceeds cap " + std::to_string(cap));
  }
  const std::uint32_t n = g.num_vertices();
  const std::uint32_t zsize = g.class_size(cls);
  const std::uint32_t offset = g.class_offset(cls);
  const std::uint64_t zmask = (std::uint64_t{1} << zsize) - 1;
  counts_.assign(std::size_t{1} << zsize, 0);

  std::vector<std::vector<std::uint64_t>> edges_at(n);
  for (const auto& e : g.edges()) {
    std::uint64_t m = 0;
    for (Vertex x : e) m |= std::uint64_t{1} << x;
    for (Vertex x : e) edges_at[x].push_back(m);
  }

  // Plain DFS over all vertices; every independent set is visited once.
  auto dfs = [&](auto&& self, Vertex v, std::uint64_t chosen) -> void {
    if (v == n) {
      ++counts_[(chosen >> offset) & zmask];
      return;
    }
    self(self, v + 1, chosen);
    const std::uint64_t with = chosen | (std::uint64_t{1} << v);
    for (auto m : edges_at[v]) {
      if ((with & m) == m) return;
    }
    self(self, v + 1, with);
  };
  dfs(dfs, 0, 0);

  std::vector<std::uint64_t> z2_adj(zsize, 0);
  Z2Graph z2(g, cls);
  for (std::uint32_t i = 0; i < zsize; ++i) {
    for (Vertex u : z2.neighbors(offset + i)) z2_adj[i] |= std::uint64_t{1} << (u - offset);
  }
  largest_component_.assign(counts_.size(), 0);
  for (std::uint64_t t = 0; t < counts_.size(); ++t) {
    if (counts_[t]) largest_component_[t] = largest_component(z2_adj, t);
  }
}

BigCount DefectTraceTable::count(std::uint32_t b) const {
  std::uint64_t total = 0;
  for (std::size_t t = 0; t < counts_.size(); ++t) {
    if (largest_component_[t] <= b) total += counts_[t];
  }
  return from_u64(total);
}

BigCount DefectTraceTable::total() const {
  return from_u64(std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0}));
}

DefectClassCount count_with_defect_class(const Hypergraph& g, std::uint32_t cls, std::uint32_t b,
                                         std::uint32_t cap) {
  DefectTraceTable table(g, cls, cap);
  return DefectClassCount{cls, b, table.count(b)};
}

BigCount count_completions(const Hypergraph& g, std::uint32_t cls, std::span<const Vertex> t) {
  if (cls >= g.k()) throw InputError("class " + std::to_string(cls) + " out of range");
  for (Vertex v : t) {
    if (v >= g.num_vertices() || g.class_of(v) != cls) {
      throw InputError("defect set must lie inside class " + std::to_string(cls));
    }
  }
  const std::uint64_t outside = g.num_vertices() - g.class_size(cls);
  if (t.empty()) return pow2(outside);
  const LinkGraph lg = link_graph(g, t);
  BigCount result = count_independent_sets(lg.to_set_system()) * pow2(outside - lg.vertices.size());
#ifndef NDEBUG
  if (g.num_vertices() <= 20) {
    DefectTraceTable table(g, cls, 20);
    std::uint64_t trace = 0;
    for (Vertex v : t) trace |= std::uint64_t{1} << (v - g.class_offset(cls));
    if (from_u64(table.with_trace(trace)) != result) {
      throw std::logic_error("completion formula disagrees with enumeration");
    }
  }
#endif
  return result;
}

}  // namespace hyperis
