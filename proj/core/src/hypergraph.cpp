#include "hyperis/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hyperis/errors.hpp"
#include "loose_cycles.hpp"

namespace hyperis {

std::string to_string(const VertexId& v) {
  return std::to_string(v.cls) + ":" + std::to_string(v.index);
}

Hypergraph::Hypergraph(std::uint32_t k, std::vector<std::uint32_t> class_sizes,
                       const std::vector<std::vector<VertexId>>& edges)
    : k_(k), class_sizes_(std::move(class_sizes)) {
  if (k_ < 2) throw InputError("uniformity k must be at least 2");
  if (class_sizes_.size() != k_) {
    throw InputError("expected " + std::to_string(k_) + " class sizes, got " +
                     std::to_string(class_sizes_.size()));
  }
  offsets_.assign(k_ + 1, 0);
  for (std::uint32_t c = 0; c < k_; ++c) {
    if (class_sizes_[c] == 0) throw InputError("class sizes must be positive");
    offsets_[c + 1] = offsets_[c] + class_sizes_[c];
  }
  class_of_.resize(num_vertices());
  for (std::uint32_t c = 0; c < k_; ++c) {
    std::fill(class_of_.begin() + offsets_[c], class_of_.begin() + offsets_[c + 1], c);
  }

  edges_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& raw = edges[i];
    if (raw.size() != k_) {
      throw InputError("edge " + std::to_string(i) + " has " + std::to_string(raw.size()) +
                       " vertices, expected " + std::to_string(k_));
    }
    std::vector<bool> seen(k_, false);
    Edge e;
    e.reserve(k_);
    for (const auto& v : raw) {
      if (!contains(v)) throw InputError("edge " + std::to_string(i) + ": vertex " + to_string(v) + " out of range");
      if (seen[v.cls]) {
        throw InputError("edge " + std::to_string(i) + " meets class " + std::to_string(v.cls) + " twice");
      }
      seen[v.cls] = true;
      e.push_back(global(v));
    }
    std::sort(e.begin(), e.end());
    edges_.push_back(std::move(e));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    std::string msg = "duplicate edge {";
    for (std::size_t j = 0; j < dup->size(); ++j) {
      if (j) msg += ",";
      msg += to_string(vertex_id((*dup)[j]));
    }
    throw InputError(msg + "}");
  }

  incidence_.assign(num_vertices(), {});
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    for (Vertex v : edges_[i]) incidence_[v].push_back(i);
  }
}

Vertex Hypergraph::global(const VertexId& v) const {
  if (!contains(v)) throw InputError("vertex " + to_string(v) + " out of range");
  return offsets_[v.cls] + v.index;
}

VertexId Hypergraph::vertex_id(Vertex v) const {
  if (v >= num_vertices()) throw InputError("vertex id " + std::to_string(v) + " out of range");
  const std::uint32_t c = class_of_[v];
  return VertexId{c, v - offsets_[c]};
}

bool Hypergraph::contains(const VertexId& v) const {
  return v.cls < k_ && v.index < class_sizes_[v.cls];
}

VertexSet Hypergraph::class_vertices(std::uint32_t cls) const {
  if (cls >= k_) throw InputError("class " + std::to_string(cls) + " out of range");
  VertexSet out(class_sizes_[cls]);
  std::iota(out.begin(), out.end(), offsets_[cls]);
  return out;
}

bool Hypergraph::equal_class_sizes() const {
  return std::adjacent_find(class_sizes_.begin(), class_sizes_.end(), std::not_equal_to<>()) ==
         class_sizes_.end();
}

SetSystem LinkGraph::to_set_system() const {
  SetSystem out;
  out.num_vertices = static_cast<std::uint32_t>(vertices.size());
  out.edges.reserve(edges.size());
  for (const auto& e : edges) {
    Edge local;
    local.reserve(e.size());
    for (Vertex v : e) {
      auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
      local.push_back(static_cast<Vertex>(it - vertices.begin()));
    }
    out.edges.push_back(std::move(local));
  }
  return out;
}

namespace {

void check_range(const Hypergraph& g, std::span<const Vertex> s) {
  for (Vertex v : s) {
    if (v >= g.num_vertices()) throw InputError("vertex id " + std::to_string(v) + " out of range");
  }
}

VertexSet sorted_unique(std::span<const Vertex> s) {
  VertexSet out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t single_class(const Hypergraph& g, std::span<const Vertex> s) {
  const std::uint32_t cls = g.class_of(s.front());
  for (Vertex v : s) {
    if (g.class_of(v) != cls) throw InputError("vertex set spans more than one class");
  }
  return cls;
}

}  // namespace

VertexSet neighborhood(const Hypergraph& g, std::span<const Vertex> s) {
  check_range(g, s);
  const VertexSet inside = sorted_unique(s);
  VertexSet out;
  for (Vertex v : inside) {
    for (auto ei : g.incident(v)) {
      for (Vertex x : g.edge(ei)) {
        if (!std::binary_search(inside.begin(), inside.end(), x)) out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LinkGraph link_graph(const Hypergraph& g, std::span<const Vertex> s) {
  if (s.empty()) throw InputError("link graph of an empty set is undefined");
  check_range(g, s);
  single_class(g, s);
  const VertexSet inside = sorted_unique(s);

  LinkGraph lg;
  lg.uniformity = g.k() - 1;
  std::set<Edge> residues;
  for (Vertex v : inside) {
    for (auto ei : g.incident(v)) {
      Edge r;
      r.reserve(g.k() - 1);
      for (Vertex x : g.edge(ei)) {
        if (x != v) r.push_back(x);
      }
      residues.insert(std::move(r));
    }
  }
  lg.edges.assign(residues.begin(), residues.end());
  for (const auto& e : lg.edges) lg.vertices.insert(lg.vertices.end(), e.begin(), e.end());
  std::sort(lg.vertices.begin(), lg.vertices.end());
  lg.vertices.erase(std::unique(lg.vertices.begin(), lg.vertices.end()), lg.vertices.end());
  return lg;
}

VertexSet z2_neighbors(const Hypergraph& g, Vertex v) {
  check_range(g, std::span<const Vertex>(&v, 1));
  const std::uint32_t cls = g.class_of(v);
  VertexSet out;
  for (auto ei : g.incident(v)) {
    for (Vertex x : g.edge(ei)) {
      if (x == v) continue;
      for (auto ej : g.incident(x)) {
        for (Vertex u : g.edge(ej)) {
          if (u != v && g.class_of(u) == cls) out.push_back(u);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Z2Graph::Z2Graph(const Hypergraph& g, std::uint32_t cls)
    : cls_(cls), offset_(g.class_offset(cls)), adj_(g.class_size(cls)) {
  for (std::uint32_t i = 0; i < adj_.size(); ++i) adj_[i] = z2_neighbors(g, offset_ + i);
}

bool Z2Graph::adjacent(Vertex a, Vertex b) const {
  const auto& n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

std::uint32_t Z2Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& n : adj_) best = std::max(best, n.size());
  return static_cast<std::uint32_t>(best);
}

std::vector<VertexSet> two_linked_components(const Hypergraph& g, std::span<const Vertex> t) {
  std::vector<VertexSet> comps;
  if (t.empty()) return comps;
  check_range(g, t);
  single_class(g, t);
  const VertexSet members = sorted_unique(t);
  std::vector<bool> done(members.size(), false);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (done[i]) continue;
    VertexSet comp{members[i]};
    done[i] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Vertex u : z2_neighbors(g, comp[head])) {
        auto it = std::lower_bound(members.begin(), members.end(), u);
        if (it == members.end() || *it != u) continue;
        auto j = static_cast<std::size_t>(it - members.begin());
        if (!done[j]) {
          done[j] = true;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
#ifndef NDEBUG
  for (std::size_t a = 0; a < comps.size(); ++a) {
    const VertexSet na = neighborhood(g, comps[a]);
    for (std::size_t b = a + 1; b < comps.size(); ++b) {
      const VertexSet nb = neighborhood(g, comps[b]);
      VertexSet common;
      std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
      if (!common.empty()) throw std::logic_error("2-linked components with overlapping neighbourhoods");
    }
  }
#endif
  return comps;
}

bool is_two_linked(const Hypergraph& g, std::span<const Vertex> s) {
  if (s.empty()) return false;
  check_range(g, s);
  const std::uint32_t cls = g.class_of(s.front());
  for (Vertex v : s) {
    if (g.class_of(v) != cls) return false;
  }
  return two_linked_components(g, s).size() == 1;
}

bool is_linear(const Hypergraph& g) {
  // Linear iff no vertex pair lies in two edges.
  std::set<std::pair<Vertex, Vertex>> pairs;
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        if (!pairs.emplace(e[i], e[j]).second) return false;
      }
    }
  }
  return true;
}

std::optional<std::uint32_t> regular_degree(const Hypergraph& g) {
  const std::uint32_t r = g.degree(0);
  for (Vertex v = 1; v < g.num_vertices(); ++v) {
    if (g.degree(v) != r) return std::nullopt;
  }
  return r;
}

std::uint32_t max_degree(const Hypergraph& g) {
  std::uint32_t best = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) best = std::max(best, g.degree(v));
  return best;
}

LooseCycleSearch girth_at_most(const Hypergraph& g, std::uint32_t max_length, std::uint64_t node_cap) {
  if (max_length < 3) throw InputError("loose cycles have length at least 3");
  std::vector<std::vector<std::uint32_t>> incidence(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) incidence[v] = g.incident(v);
  return detail::find_loose_cycle(g.edges(), incidence, g.num_vertices(), max_length, std::nullopt,
                                  node_cap);
}

bool is_loose_cycle(const Hypergraph& g, std::span<const Vertex> seq) {
  const std::uint32_t step = g.k() - 1;
  if (seq.empty() || seq.size() % step != 0) return false;
  const std::size_t len = seq.size() / step;
  if (len < 3) return false;
  VertexSet distinct(seq.begin(), seq.end());
  std::sort(distinct.begin(), distinct.end());
  if (std::adjacent_find(distinct.begin(), distinct.end()) != distinct.end()) return false;
  if (distinct.back() >= g.num_vertices()) return false;
  for (std::size_t i = 0; i < len; ++i) {
    Edge e;
    for (std::uint32_t j = 0; j <= step; ++j) e.push_back(seq[(i * step + j) % seq.size()]);
    std::sort(e.begin(), e.end());
    if (!std::binary_search(g.edges().begin(), g.edges().end(), e)) return false;
  }
  return true;
}

}  // namespace hyperis
