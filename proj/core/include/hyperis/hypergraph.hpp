#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperis {

// Vertex of a k-partite hypergraph addressed by (class, index within class).
struct VertexId {
  std::uint32_t cls = 0;
  std::uint32_t index = 0;

  auto operator<=>(const VertexId&) const = default;
};

std::string to_string(const VertexId& v);

// Global vertex ids are class-major: all of class 0, then class 1, ...
using Vertex = std::uint32_t;
// Sorted, duplicate-free list of global vertex ids.
using VertexSet = std::vector<Vertex>;
using Edge = std::vector<Vertex>;

// A plain set system on vertices 0..num_vertices-1. Used for link graphs and
// anything handed to the exact counter; edges need not share a size.
struct SetSystem {
  std::uint32_t num_vertices = 0;
  std::vector<Edge> edges;
};

// k-partite k-uniform hypergraph. Immutable after construction.
//
// Edges are stored sorted by global id (which is also class order), and the
// edge list is sorted lexicographically, so iteration order is canonical.
class Hypergraph {
 public:
  // Throws InputError if an edge does not meet every class exactly once, an
  // id is out of range, or two edges coincide.
  Hypergraph(std::uint32_t k, std::vector<std::uint32_t> class_sizes,
             const std::vector<std::vector<VertexId>>& edges);

  std::uint32_t k() const { return k_; }
  std::uint32_t num_classes() const { return k_; }
  const std::vector<std::uint32_t>& class_sizes() const { return class_sizes_; }
  std::uint32_t class_size(std::uint32_t cls) const { return class_sizes_.at(cls); }
  std::uint32_t class_offset(std::uint32_t cls) const { return offsets_.at(cls); }
  std::uint32_t num_vertices() const { return offsets_.back(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const std::vector<std::uint32_t>& incident(Vertex v) const { return incidence_[v]; }
  std::uint32_t degree(Vertex v) const { return static_cast<std::uint32_t>(incidence_[v].size()); }

  Vertex global(const VertexId& v) const;
  VertexId vertex_id(Vertex v) const;
  std::uint32_t class_of(Vertex v) const { return class_of_[v]; }
  bool contains(const VertexId& v) const;

  // All vertices of one class, ascending.
  VertexSet class_vertices(std::uint32_t cls) const;

  // Every pair of classes the same size.
  bool equal_class_sizes() const;

 private:
  std::uint32_t k_;
  std::vector<std::uint32_t> class_sizes_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> class_of_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> incidence_;
};

// (k-1)-graph on N(S) with edges e \ S for every e meeting S. Duplicate
// residues collapse into one edge.
struct LinkGraph {
  std::uint32_t uniformity = 0;
  VertexSet vertices;
  std::vector<Edge> edges;

  // Relabels vertices to 0..|vertices|-1 in ascending global order.
  SetSystem to_set_system() const;
};

// (union of edges meeting S) \ S. Throws InputError on out-of-range ids.
VertexSet neighborhood(const Hypergraph& g, std::span<const Vertex> s);

// Throws InputError when S is empty or not inside a single class.
LinkGraph link_graph(const Hypergraph& g, std::span<const Vertex> s);

// Vertices u != v of v's class whose neighbourhood meets N({v}).
VertexSet z2_neighbors(const Hypergraph& g, Vertex v);

// Adjacency of the auxiliary graph on one class, indexed by local index.
// Entries are global ids, ascending.
class Z2Graph {
 public:
  Z2Graph(const Hypergraph& g, std::uint32_t cls);

  std::uint32_t cls() const { return cls_; }
  std::uint32_t offset() const { return offset_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(adj_.size()); }
  const VertexSet& neighbors(Vertex v) const { return adj_[v - offset_]; }
  bool adjacent(Vertex a, Vertex b) const;
  std::uint32_t max_degree() const;

 private:
  std::uint32_t cls_;
  std::uint32_t offset_;
  std::vector<VertexSet> adj_;
};

// Vertex sets of the connected components of Z2[T], each sorted, ordered by
// least element. T must lie in one class.
std::vector<VertexSet> two_linked_components(const Hypergraph& g, std::span<const Vertex> t);

// True iff S is nonempty, inside one class, and Z2[S] is connected.
bool is_two_linked(const Hypergraph& g, std::span<const Vertex> s);

bool is_linear(const Hypergraph& g);

std::optional<std::uint32_t> regular_degree(const Hypergraph& g);

std::uint32_t max_degree(const Hypergraph& g);

enum class CycleSearchStatus { kFound, kNotFound, kIndeterminate };

struct LooseCycleSearch {
  CycleSearchStatus status = CycleSearchStatus::kNotFound;
  // Cyclic vertex sequence v_1..v_{(k-1)l} when found.
  std::vector<Vertex> witness;
  std::uint32_t length = 0;
  std::uint64_t nodes_visited = 0;

  bool found() const { return status == CycleSearchStatus::kFound; }
};

inline constexpr std::uint64_t kDefaultCycleNodeCap = 50'000'000;

// Looks for a loose l'-cycle with 3 <= l' <= max_length. Exhaustive DFS over
// edge sequences; reports kIndeterminate once node_cap DFS nodes are spent.
LooseCycleSearch girth_at_most(const Hypergraph& g, std::uint32_t max_length,
                               std::uint64_t node_cap = kDefaultCycleNodeCap);

// Checks that seq is a loose cycle of g: (k-1)l distinct vertices whose
// consecutive windows of k are edges.
bool is_loose_cycle(const Hypergraph& g, std::span<const Vertex> seq);

}  // namespace hyperis
