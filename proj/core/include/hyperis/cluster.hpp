#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hyperis/hypergraph.hpp"
#include "hyperis/polymer.hpp"
#include "hyperis/rational.hpp"
#include "hyperis/real.hpp"

namespace hyperis {

// Simple graph on at most 32 vertices, adjacency as bitmasks.
struct SmallGraph {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> adj;

  explicit SmallGraph(std::uint32_t vertices = 0);
  static SmallGraph complete(std::uint32_t vertices);
  static SmallGraph path(std::uint32_t vertices);

  void add_edge(std::uint32_t a, std::uint32_t b);
  bool has_edge(std::uint32_t a, std::uint32_t b) const { return (adj[a] >> b) & 1u; }
  std::uint32_t edge_count() const;
  bool connected() const;

  bool operator==(const SmallGraph&) const = default;
};

inline constexpr std::uint32_t kDefaultUrsellCap = 9;

// phi(H) = (1/|V|!) * sum over spanning connected subgraphs F of (-1)^{|E(F)|}.
// Evaluated with a connected-subset recurrence over vertex subsets and cached
// per labelled graph. Throws InputError for disconnected H, BudgetExceeded
// above `cap` vertices. Thread-safe.
ExactRational ursell(const SmallGraph& h, std::uint32_t cap = kDefaultUrsellCap);

struct ClusterEntry {
  Polymer polymer;
  ExactRational weight;
  std::uint32_t multiplicity = 1;
};

// A cluster as a canonical multiset of polymers. The ordered vectors it
// stands for number ordering_count() and all share one weight.
struct Cluster {
  std::vector<ClusterEntry> entries;  // sorted by polymer

  std::uint32_t length() const;  // |Gamma|
  std::uint32_t size() const;    // ||Gamma||
  BigCount ordering_count() const;
  VertexSet support() const;
};

// H_Gamma over the expanded entries (repeats included, as adjacent copies).
SmallGraph incompatibility_graph(const Cluster& c);

// phi(H_Gamma) * prod w(S) for one ordered representative.
ExactRational cluster_weight(const Cluster& c);

// Every cluster of polymers from the class with ||Gamma|| <= t, once each, in
// deterministic order. Supports are grown around each root vertex in
// parallel when threads > 1; output does not depend on threads.
std::vector<Cluster> enumerate_clusters(const Hypergraph& g, std::uint32_t cls, std::uint32_t t,
                                        unsigned threads = 1);

// Sum over ordered clusters with ||Gamma|| <= t of w(Gamma).
ExactRational truncated_log_xi(const Hypergraph& g, std::uint32_t cls, std::uint32_t t, unsigned threads = 1);

// Cluster over an explicit PolymerSystem: (polymer index, multiplicity) pairs.
struct ModelCluster {
  std::vector<std::pair<std::size_t, std::uint32_t>> entries;

  std::uint32_t length() const;
  std::uint32_t size(const PolymerSystem& model) const;
  BigCount ordering_count() const;
};

SmallGraph incompatibility_graph(const PolymerSystem& model, const ModelCluster& c);
ExactRational cluster_weight(const PolymerSystem& model, const ModelCluster& c);

// All clusters of an explicit model with total order <= t. Intended for small
// synthetic models; cost grows like (#polymers)^t.
std::vector<ModelCluster> enumerate_clusters(const PolymerSystem& model, std::uint32_t t);
ExactRational truncated_log_xi(const PolymerSystem& model, std::uint32_t t);

struct CountEstimate {
  std::uint32_t t = 0;
  // log of 2^{(k-1)n} * sum_Z exp(exponents[Z]).
  LogNumber value;
  std::vector<ExactRational> exponents;
};

// Truncated cluster-expansion estimate of |I(G)|. Needs k >= 3, t >= 1, an
// r-regular G and equal class sizes; throws InputError otherwise.
CountEstimate estimate_count(const Hypergraph& g, std::uint32_t t, unsigned threads = 1);

}  // namespace hyperis
