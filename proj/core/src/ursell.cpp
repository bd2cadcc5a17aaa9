#include <bit>
#include <map>
#include <mutex>
#include <string>

#include "hyperis/cluster.hpp"
#include "hyperis/errors.hpp"

namespace hyperis {

SmallGraph::SmallGraph(std::uint32_t vertices) : n(vertices), adj(vertices, 0) {
  if (vertices > 32) throw InputError("SmallGraph holds at most 32 vertices");
}

SmallGraph SmallGraph::complete(std::uint32_t vertices) {
  SmallGraph g(vertices);
  for (std::uint32_t a = 0; a < vertices; ++a) {
    for (std::uint32_t b = a + 1; b < vertices; ++b) g.add_edge(a, b);
  }
  return g;
}

SmallGraph SmallGraph::path(std::uint32_t vertices) {
  SmallGraph g(vertices);
  for (std::uint32_t a = 0; a + 1 < vertices; ++a) g.add_edge(a, a + 1);
  return g;
}

void SmallGraph::add_edge(std::uint32_t a, std::uint32_t b) {
  if (a >= n || b >= n || a == b) throw InputError("invalid SmallGraph edge");
  adj[a] |= 1u << b;
  adj[b] |= 1u << a;
}

std::uint32_t SmallGraph::edge_count() const {
  std::uint32_t twice = 0;
  for (auto row : adj) twice += static_cast<std::uint32_t>(std::popcount(row));
  return twice / 2;
}

bool SmallGraph::connected() const {
  if (n == 0) return false;
  std::uint32_t seen = 1;
  std::uint32_t frontier = 1;
  while (frontier) {
    const int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    const std::uint32_t fresh = adj[v] & ~seen;
    seen |= fresh;
    frontier |= fresh;
  }
  return std::popcount(seen) == static_cast<int>(n);
}

namespace {

// Signed count of spanning connected subgraphs, via
//   [H[S] edgeless] = sum_{min(S) ∈ T ⊆ S} C(T) [H[S \ T] edgeless].
std::int64_t connected_signed_count(const SmallGraph& h) {
  const std::uint32_t full = h.n == 32 ? ~0u : (1u << h.n) - 1;
  std::vector<bool> edgeless(std::size_t{full} + 1, true);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int v = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    edgeless[s] = edgeless[rest] && (h.adj[v] & rest) == 0;
  }
  std::vector<std::int64_t> conn(std::size_t{full} + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1);
    std::int64_t value = edgeless[s] ? 1 : 0;
    // Proper subsets T of S that contain the lowest vertex.
    const std::uint32_t others = s & ~low;
    for (std::uint32_t sub = (others - 1) & others;; sub = (sub - 1) & others) {
      const std::uint32_t t = sub | low;
      if (edgeless[s & ~t]) value -= conn[t];
      if (sub == 0) break;
    }
    if (others == 0) value = 1;
    conn[s] = value;
  }
  return conn[full];
}

class UrsellCache {
 public:
  ExactRational get(const SmallGraph& h) {
    std::vector<std::uint32_t> key = h.adj;
    key.push_back(h.n);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    BigCount factorial = 1;
    for (std::uint32_t i = 2; i <= h.n; ++i) factorial *= i;
    ExactRational phi(BigCount(static_cast<long>(connected_signed_count(h))), factorial);
    phi.canonicalize();
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(key), phi);
    return phi;
  }

 private:
  std::mutex mutex_;
  std::map<std::vector<std::uint32_t>, ExactRational> cache_;
};

UrsellCache& ursell_cache() {
  static UrsellCache cache;
  return cache;
}

}  // namespace

ExactRational ursell(const SmallGraph& h, std::uint32_t cap) {
  if (h.n > cap || h.n > 20) {
    throw BudgetExceeded("Ursell function refused: " + std::to_string(h.n) + " vertices exceeds cap " +
                         std::to_string(std::min<std::uint32_t>(cap, 20)));
  }
  if (!h.connected()) throw InputError("Ursell function needs a connected graph");
  return ursell_cache().get(h);
}

}  // namespace hyperis
